#include "hcr/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "hcr/rng.hpp"

namespace hcr {
namespace {

constexpr int kMaxBlockAttempts = 100000;

void require_unit_open(const Rational& x, const char* name) {
  if (x < 0 || x >= 1) throw ParameterError(std::string(name) + " must lie in [0,1), got " + to_string(x));
}

}  // namespace

void SamplerParams::validate() const {
  require_unit_open(q, "q");
  require_unit_open(zeta, "zeta");
  if (alpha <= 0 || alpha > 1) throw ParameterError("alpha must lie in (0,1], got " + to_string(alpha));
  if (trials < 1) throw ParameterError("trials must be >= 1");
}

Rational epsilon_from(const Rational& q, const Rational& zeta) {
  require_unit_open(q, "q");
  require_unit_open(zeta, "zeta");
  return Rational(1) - (Rational(1) - q) * (Rational(1) - zeta);
}

FailurePattern sample_failures(std::span<const NeuronId> neurons, const Rational& q, std::uint64_t seed) {
  require_unit_open(q, "q");
  std::vector<NeuronId> order(neurons.begin(), neurons.end());
  std::sort(order.begin(), order.end());
  SplitMix64 rng(seed);
  FailurePattern F;
  for (auto v : order) {
    if (rng.bernoulli(q)) F.failed.insert(v);
  }
  return F;
}

EdgeSet sample_connectivity(const MultiRepAssignment& assign, const ConceptHierarchy& h, const Rational& alpha,
                            std::uint64_t seed) {
  if (alpha < 0 || alpha > 1) throw ParameterError("alpha must lie in [0,1], got " + to_string(alpha));
  SplitMix64 rng(seed);
  EdgeSet E;
  for (int l = 1; l <= h.l_max(); ++l) {
    for (auto c : h.concepts(l)) {
      for (auto v : assign.reps(c)) {
        for (auto child : h.children(c)) {
          for (auto u : assign.reps(child)) {
            if (rng.bernoulli(alpha)) E.edges.insert({u, v});
          }
        }
      }
    }
  }
  return E;
}

FailurePattern sample_valid_failures(const MultiRepAssignment& assign, const Rational& q, const Rational& epsilon,
                                     std::uint64_t seed) {
  require_unit_open(q, "q");
  const Rational bound = Rational(assign.m()) * (Rational(1) - epsilon);
  SplitMix64 rng(seed);
  FailurePattern F;
  std::vector<NeuronId> block;
  for (int l = 0; l < assign.levels(); ++l) {
    for (int i = 0; i < assign.level_size(l); ++i) {
      const auto& reps = assign.reps({l, i});
      int attempt = 0;
      for (;; ++attempt) {
        if (attempt == kMaxBlockAttempts) {
          throw ParameterError("could not draw a valid failure block for concept " + to_string(ConceptId{l, i}));
        }
        block.clear();
        for (auto v : reps) {
          if (rng.bernoulli(q)) block.push_back(v);
        }
        if (at_least(static_cast<std::int64_t>(reps.size() - block.size()), bound)) break;
      }
      F.failed.insert(block.begin(), block.end());
    }
  }
  return F;
}

EdgeSet sample_valid_connectivity(const MultiRepAssignment& assign, const ConceptHierarchy& h,
                                  const FailurePattern& F, const Rational& alpha, const Rational& a,
                                  const Rational& epsilon, std::uint64_t seed) {
  if (alpha <= 0 || alpha > 1) throw ParameterError("alpha must lie in (0,1], got " + to_string(alpha));
  const Rational bound = a * assign.m() * (Rational(1) - epsilon);
  SplitMix64 rng(seed);
  EdgeSet E;
  std::vector<NeuronId> block;
  for (int l = 1; l <= h.l_max(); ++l) {
    for (auto c : h.concepts(l)) {
      for (auto v : assign.reps(c)) {
        for (auto child : h.children(c)) {
          const auto& reps = assign.reps(child);
          int attempt = 0;
          for (;; ++attempt) {
            if (attempt == kMaxBlockAttempts) {
              throw ParameterError("could not draw a valid edge block for rep " + to_string(v) + " and child " +
                                   to_string(child));
            }
            block.clear();
            std::int64_t connected = 0;
            for (auto u : reps) {
              if (rng.bernoulli(alpha)) {
                block.push_back(u);
                if (!F.failed.count(u)) ++connected;
              }
            }
            if (at_least(connected, bound)) break;
          }
          for (auto u : block) E.edges.insert({u, v});
        }
      }
    }
  }
  return E;
}

Rational ExperimentStats::pass_fraction() const {
  return Rational(static_cast<std::int64_t>(all_pass), static_cast<std::int64_t>(params.trials));
}

double ExperimentStats::per_concept_bound() const {
  const double zeta = to_double(params.zeta);
  return std::exp(-zeta * zeta * to_double(params.p()) * m / 2.0);
}

double ExperimentStats::violation_standard_error() const {
  const double v = to_double(violation_fraction());
  return std::sqrt(v * (1.0 - v) / static_cast<double>(params.trials));
}

ExperimentStats estimate_constraint_probability(const ConceptHierarchy& h, const MultiRepAssignment& assign,
                                                const SamplerParams& params, ConstraintSet which, const Rational& a,
                                                int m, const ExperimentOptions& options) {
  params.validate();
  if (m != assign.m()) throw ContractError("m does not match the rep assignment");
  ExperimentStats stats;
  stats.params = params;
  stats.which = which;
  stats.m = m;
  stats.a = a;
  stats.epsilon = epsilon_from(params.q, params.zeta);
  stats.concept_count = h.concept_count();
  const auto neurons = assign.all_neurons();
  if (options.record_trials) stats.trial_pass.reserve(params.trials);

  for (std::uint64_t t = 0; t < params.trials; ++t) {
    const auto F = sample_failures(neurons, params.q, derive_stream(params.seed, 2 * t));
    bool ok = check_F_constraint(assign, F, m, stats.epsilon).pass();
    stats.f_pass += ok ? 1 : 0;
    EdgeSet E;
    if (which == ConstraintSet::FAndE && ok) {
      E = sample_connectivity(assign, h, params.alpha, derive_stream(params.seed, 2 * t + 1));
      ok = check_E_constraint(assign, F, E, a, m, stats.epsilon, h).pass();
      stats.e_pass += ok ? 1 : 0;
    }
    stats.all_pass += ok ? 1 : 0;
    if (options.record_trials) stats.trial_pass.push_back(ok);
    if (ok && options.on_passing) options.on_passing(t, F, which == ConstraintSet::FAndE ? &E : nullptr);
  }
  return stats;
}

}  // namespace hcr
