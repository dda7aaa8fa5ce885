#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hcr/abstract_nets.hpp"
#include "hcr/detailed_nets.hpp"

namespace hcr {

struct InputEnumeration {
  enum class Mode { Exhaustive, Sampled, Explicit };

  Mode mode = Mode::Exhaustive;
  /// Random draws in sampled mode; the empty set and C_0 are always added first.
  int sample_count = 256;
  std::uint64_t seed = 0;
  /// Exhaustive mode refuses hierarchies with |C_0| above this.
  int exhaustive_cap = 8;
  /// Counterexamples kept per verdict (all violations are still counted).
  std::size_t max_counterexamples = 16;
  /// The input sets of explicit mode, used as given.
  std::vector<ConceptSet> explicit_sets;

  static InputEnumeration exhaustive(int cap = 8);
  static InputEnumeration sampled(int count, std::uint64_t seed);
  static InputEnumeration listed(std::vector<ConceptSet> sets);
  /// Exhaustive when |C_0| <= cap, otherwise sampled(count, seed).
  static InputEnumeration automatic(const ConceptHierarchy& h, int cap, int count, std::uint64_t seed);
};

/// Input sets B in enumeration order. Exhaustive mode lists every subset of
/// C_0 once, by increasing bitmask (bit i = leaf (0, i)). Sampled mode puts
/// each leaf in B with probability 1/2. Explicit mode validates and returns
/// its list (QueryError for sets that are not subsets of C_0).
std::vector<ConceptSet> enumerate_inputs(const ConceptHierarchy& h, const InputEnumeration& en);

struct DetailedView {
  const Network& network;
  const MultiRepAssignment& reps;
};

struct AbstractView {
  const Network& network;
  const SingleRepAssignment& rep;
};

inline DetailedView view(const DetailedNet& d) { return {d.network, d.reps}; }
inline AbstractView view(const AbstractNet& a) { return {a.network, a.assign}; }

enum class Relation { Impl, Impl1, Impl2, StrongImpl1 };
const char* to_string(Relation r);

struct Counterexample {
  ConceptSet B;
  ConceptId concept_id;
  std::string detail;
  ExecutionTrace detailed_trace;
  ExecutionTrace abstract_trace;
};

struct RefinementVerdict {
  Relation relation = Relation::Impl1;
  std::size_t inputs_checked = 0;
  std::size_t violation_count = 0;
  /// Sorted by B, then concept.
  std::vector<Counterexample> counterexamples;

  bool pass() const { return violation_count == 0; }
};

/// D <=impl1 A: whenever rep(c) fires at level(c) in A, at least m(1-e) of
/// reps(c) fire at level(c) in D. Throws ContractError if D, A and h disagree
/// on shape.
RefinementVerdict check_impl1(DetailedView D, AbstractView A, const ConceptHierarchy& h, int m,
                              const Rational& epsilon, const InputEnumeration& en);

/// D <=impl2 A: whenever rep(c) is silent at level(c) in A, all of reps(c)
/// are silent at level(c) in D.
RefinementVerdict check_impl2(DetailedView D, AbstractView A, const ConceptHierarchy& h,
                              const InputEnumeration& en);

/// Both clauses against the single network A.
RefinementVerdict check_impl(DetailedView D, AbstractView A, const ConceptHierarchy& h, int m,
                             const Rational& epsilon, const InputEnumeration& en);

/// Strengthened firing relation: whenever rep(c) fires in A, every
/// non-failed neuron of reps(c) fires at level(c) in D.
RefinementVerdict check_strong_impl1(DetailedView D, AbstractView A, const ConceptHierarchy& h,
                                     const InputEnumeration& en);

struct PipelineReport {
  std::string network;
  std::size_t inputs_checked = 0;
  RefinementVerdict impl1;         // D vs A1
  RefinementVerdict impl2;         // D vs A2
  RefinementVerdict strong_impl1;  // D vs A1, every survivor fires
  std::size_t a1_firing_failures = 0;      // inputs where A1 misses its r2-firing guarantee
  std::size_t a2_non_firing_failures = 0;  // inputs where A2 misses its r1-non-firing guarantee
  std::size_t part1_failures = 0;          // inputs where D misses Part 1 directly
  std::size_t part2_failures = 0;          // inputs where D misses Part 2 directly
  /// Inputs where the relations and abstract guarantees held but the direct check did not.
  std::size_t inconsistent_inputs = 0;
  std::vector<MultiRecognitionReport> failing_direct;

  /// impl1 and A1 firing imply Part 1; impl2 and A2 non-firing imply Part 2.
  bool consistent() const;
  bool all_pass() const;
};

/// Runs impl1 against A1, impl2 against A2, the strengthened firing relation
/// and the direct multi-rep recognition check over one shared enumeration.
/// A1 and A2 are built from h and D's (r1, r2).
PipelineReport combined_pipeline(const DetailedNet& D, const ConceptHierarchy& h, const InputEnumeration& en);

}  // namespace hcr
