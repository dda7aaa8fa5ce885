#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hcr/detailed_nets.hpp"
#include "hcr/hierarchy.hpp"

namespace hcr {

struct SamplerParams {
  /// Per-neuron failure probability, in [0, 1). Survival p = 1 - q is derived.
  Rational q{0};
  /// Concentration slack, in [0, 1).
  Rational zeta{0};
  /// Per-edge connection probability for L experiments, in (0, 1].
  Rational alpha{1};
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;

  Rational p() const { return Rational(1) - q; }
  void validate() const;
};

/// 1 - (1 - q)(1 - zeta), exact. Throws ParameterError unless q, zeta in [0, 1).
Rational epsilon_from(const Rational& q, const Rational& zeta);

/// Each neuron fails independently with probability q; draws follow the
/// order of `neurons` after sorting. Throws ParameterError unless q in [0, 1).
FailurePattern sample_failures(std::span<const NeuronId> neurons, const Rational& q, std::uint64_t seed);

/// Each child-rep -> parent-rep edge is present independently with
/// probability alpha; draws in (parent concept, parent rep, child, child rep) order.
EdgeSet sample_connectivity(const MultiRepAssignment& assign, const ConceptHierarchy& h, const Rational& alpha,
                            std::uint64_t seed);

/// iid(q) failures conditioned on the F constraint. The constraint factors
/// over the disjoint reps sets, so each concept's block is redrawn until it
/// keeps m(1-e) survivors; the result has the law of rejection-filtered
/// sample_failures. Throws ParameterError if a block keeps failing.
FailurePattern sample_valid_failures(const MultiRepAssignment& assign, const Rational& q, const Rational& epsilon,
                                     std::uint64_t seed);

/// iid(alpha) edges conditioned on the E constraint for the given F, redrawn
/// per (parent rep, child) block. Requires F to satisfy the F constraint.
EdgeSet sample_valid_connectivity(const MultiRepAssignment& assign, const ConceptHierarchy& h,
                                  const FailurePattern& F, const Rational& alpha, const Rational& a,
                                  const Rational& epsilon, std::uint64_t seed);

enum class ConstraintSet { FOnly, FAndE };

struct ExperimentStats {
  SamplerParams params;
  ConstraintSet which = ConstraintSet::FOnly;
  int m = 1;
  Rational a{1};
  Rational epsilon{0};
  std::uint64_t concept_count = 0;
  std::uint64_t f_pass = 0;
  std::uint64_t e_pass = 0;     // among F-passing trials (FAndE only)
  std::uint64_t all_pass = 0;   // trials satisfying every requested constraint
  std::vector<bool> trial_pass; // filled only when requested

  Rational pass_fraction() const;
  Rational violation_fraction() const { return Rational(1) - pass_fraction(); }
  /// exp(-zeta^2 p m / 2): standard multiplicative Chernoff lower-tail
  /// bound, a reference value for comparison only.
  double per_concept_bound() const;
  double union_bound() const { return per_concept_bound() * static_cast<double>(concept_count); }
  /// sqrt(v (1 - v) / trials) for the empirical violation fraction v.
  double violation_standard_error() const;
};

struct ExperimentOptions {
  bool record_trials = false;
  /// Called with (trial, F, E) for every trial that satisfies the requested
  /// constraints; E is null for FOnly.
  std::function<void(std::uint64_t, const FailurePattern&, const EdgeSet*)> on_passing;
};

/// Trial t draws F from derive_stream(seed, 2t) and E from
/// derive_stream(seed, 2t + 1), so results do not depend on scheduling.
ExperimentStats estimate_constraint_probability(const ConceptHierarchy& h, const MultiRepAssignment& assign,
                                                const SamplerParams& params, ConstraintSet which, const Rational& a,
                                                int m, const ExperimentOptions& options = {});

}  // namespace hcr
