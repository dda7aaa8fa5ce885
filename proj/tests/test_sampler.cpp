#include <cmath>

#include <gtest/gtest.h>

#include "hcr/rng.hpp"
#include "hcr/sampler.hpp"

using namespace hcr;

namespace {

ConceptHierarchy uniform(int k, int l_max) {
  return build_uniform_hierarchy({l_max, k, 0});
}

}  // namespace

TEST(Rng, KnownSplitMixSequence) {
  // Reference outputs of SplitMix64 seeded with 0.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  SplitMix64 rng(42);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = rng.below(7);
    ASSERT_LT(x, 7u);
    ++hits[x];
  }
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(Rng, BernoulliExtremesAndRate) {
  SplitMix64 rng(1);
  int ones = 0;
  for (int i = 0; i < 20000; ++i) {
    EXPECT_FALSE(rng.bernoulli(0));
    EXPECT_TRUE(rng.bernoulli(1));
    ones += rng.bernoulli(Rational(3, 10)) ? 1 : 0;
  }
  // 3 standard deviations of Binomial(20000, 0.3) is about 194.
  EXPECT_NEAR(ones, 6000, 200);
}

TEST(Rng, DerivedStreamsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_stream(5, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_stream(5, 3), derive_stream(5, 3));
  EXPECT_NE(derive_stream(5, 3), derive_stream(6, 3));
}

TEST(Epsilon, Arithmetic) {
  EXPECT_EQ(epsilon_from(0, 0), Rational(0));
  EXPECT_EQ(epsilon_from(Rational(1, 10), Rational(1, 10)), Rational(19, 100));
  EXPECT_EQ(epsilon_from(0, Rational(3, 7)), Rational(3, 7));
  EXPECT_EQ(epsilon_from(Rational(1, 10), Rational(3, 10)), Rational(37, 100));
  EXPECT_THROW(epsilon_from(1, 0), ParameterError);
  EXPECT_THROW(epsilon_from(0, 1), ParameterError);
  EXPECT_THROW(epsilon_from(Rational(-1, 2), 0), ParameterError);
}

TEST(SampleFailures, ZeroProbability) {
  const auto h = uniform(2, 2);
  const auto a = MultiRepAssignment::canonical(h, 6);
  const auto all = a.all_neurons();
  for (std::uint64_t seed = 0; seed < 10; ++seed) EXPECT_TRUE(sample_failures(all, 0, seed).failed.empty());
}

TEST(SampleFailures, NearOneFailsNearlyEverything) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 5);
  const auto all = a.all_neurons();
  const Rational q = Rational(1) - Rational(1, std::int64_t{1} << 30);
  const auto F = sample_failures(all, q, 3);
  EXPECT_GE(F.failed.size(), all.size() - 1);
  EXPECT_FALSE(check_F_constraint(a, F, 5, Rational(1, 5)).pass());
  EXPECT_THROW(sample_failures(all, 1, 3), ParameterError);
}

TEST(SampleFailures, SeededAndOrderIndependent) {
  const auto h = uniform(2, 2);
  const auto a = MultiRepAssignment::canonical(h, 6);
  auto all = a.all_neurons();
  const auto F = sample_failures(all, Rational(1, 4), 77);
  EXPECT_EQ(F, sample_failures(all, Rational(1, 4), 77));
  EXPECT_NE(F, sample_failures(all, Rational(1, 4), 78));
  std::reverse(all.begin(), all.end());
  EXPECT_EQ(F, sample_failures(all, Rational(1, 4), 77));
}

TEST(SampleConnectivity, Extremes) {
  const auto h = uniform(2, 2);
  const auto a = MultiRepAssignment::canonical(h, 3);
  EXPECT_EQ(sample_connectivity(a, h, 1, 4), complete_edges(h, a));
  const auto none = sample_connectivity(a, h, 0, 4);
  EXPECT_TRUE(none.edges.empty());
  EXPECT_FALSE(check_E_constraint(a, {}, none, Rational(1, 100), 3, 0, h).pass());
  const auto E = sample_connectivity(a, h, Rational(1, 2), 4);
  EXPECT_EQ(E, sample_connectivity(a, h, Rational(1, 2), 4));
  EXPECT_NO_THROW(validate_edge_set(h, a, E));
}

TEST(SampleValid, ResultsSatisfyConstraints) {
  const auto h = uniform(2, 2);
  const auto a = MultiRepAssignment::canonical(h, 6);
  const Rational eps(1, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto F = sample_valid_failures(a, Rational(1, 4), eps, seed);
    EXPECT_TRUE(check_F_constraint(a, F, 6, eps).pass());
    const auto E = sample_valid_connectivity(a, h, F, Rational(2, 3), Rational(1, 2), eps, seed);
    EXPECT_TRUE(check_E_constraint(a, F, E, Rational(1, 2), 6, eps, h).pass());
  }
}

TEST(SampleValid, ImpossibleRequestsThrow) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 3);
  FailurePattern F;
  F.failed.insert(a.reps({0, 0})[0]);
  EXPECT_THROW(sample_valid_connectivity(a, h, F, Rational(1, 2), 1, 0, 1), ParameterError);
}

TEST(Experiment, NoFailuresAlwaysSatisfy) {
  const auto h = uniform(2, 2);
  const auto a = MultiRepAssignment::canonical(h, 5);
  SamplerParams p;
  p.q = 0;
  p.zeta = Rational(1, 5);
  p.trials = 200;
  const auto s = estimate_constraint_probability(h, a, p, ConstraintSet::FOnly, 1, 5);
  EXPECT_EQ(s.pass_fraction(), Rational(1));
  EXPECT_EQ(s.f_pass, 200u);
  const auto fe = estimate_constraint_probability(h, a, p, ConstraintSet::FAndE, 1, 5);
  EXPECT_EQ(fe.pass_fraction(), Rational(1));
}

TEST(Experiment, SeededRerunsAreIdentical) {
  const auto h = uniform(2, 2);
  const auto a = MultiRepAssignment::canonical(h, 8);
  SamplerParams p;
  p.q = Rational(1, 5);
  p.zeta = Rational(1, 5);
  p.alpha = Rational(9, 10);
  p.trials = 300;
  p.seed = 12;
  ExperimentOptions opts;
  opts.record_trials = true;
  const auto s1 = estimate_constraint_probability(h, a, p, ConstraintSet::FAndE, Rational(1, 2), 8, opts);
  const auto s2 = estimate_constraint_probability(h, a, p, ConstraintSet::FAndE, Rational(1, 2), 8, opts);
  EXPECT_EQ(s1.trial_pass, s2.trial_pass);
  EXPECT_EQ(s1.all_pass, s2.all_pass);
  EXPECT_EQ(s1.trial_pass.size(), 300u);
  EXPECT_LE(s1.all_pass, s1.f_pass);
  EXPECT_EQ(s1.concept_count, 14u);
}

TEST(Experiment, PassingCallbackSeesValidSamples) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 6);
  SamplerParams p;
  p.q = Rational(1, 4);
  p.zeta = Rational(1, 4);
  p.alpha = Rational(4, 5);
  p.trials = 100;
  std::uint64_t calls = 0;
  ExperimentOptions opts;
  opts.on_passing = [&](std::uint64_t, const FailurePattern& F, const EdgeSet* E) {
    ++calls;
    const auto eps = epsilon_from(p.q, p.zeta);
    EXPECT_TRUE(check_F_constraint(a, F, 6, eps).pass());
    ASSERT_NE(E, nullptr);
    EXPECT_TRUE(check_E_constraint(a, F, *E, Rational(1, 2), 6, eps, h).pass());
  };
  const auto s = estimate_constraint_probability(h, a, p, ConstraintSet::FAndE, Rational(1, 2), 6, opts);
  EXPECT_EQ(calls, s.all_pass);
}

TEST(Experiment, ReferenceBoundArithmetic) {
  ExperimentStats s;
  s.params.q = Rational(1, 10);
  s.params.zeta = Rational(3, 10);
  s.params.trials = 4;
  s.m = 50;
  s.concept_count = 14;
  s.all_pass = 3;
  EXPECT_NEAR(s.per_concept_bound(), std::exp(-0.09 * 0.9 * 50 / 2), 1e-12);
  EXPECT_NEAR(s.union_bound(), 14 * std::exp(-0.09 * 0.9 * 50 / 2), 1e-12);
  EXPECT_EQ(s.violation_fraction(), Rational(1, 4));
  EXPECT_NEAR(s.violation_standard_error(), std::sqrt(0.25 * 0.75 / 4), 1e-12);
}

TEST(Experiment, DoublingMDoesNotRaiseViolations) {
  const auto h = uniform(2, 2);
  SamplerParams p;
  p.q = Rational(1, 10);
  p.zeta = Rational(3, 10);
  p.trials = 3000;
  p.seed = 21;
  double prev = 1.0;
  std::uint64_t prev_trials = p.trials;
  for (int m : {5, 10, 20, 40}) {
    const auto a = MultiRepAssignment::canonical(h, m);
    const auto s = estimate_constraint_probability(h, a, p, ConstraintSet::FOnly, 1, m);
    const double v = to_double(s.violation_fraction());
    const double se = std::sqrt((prev * (1 - prev) + v * (1 - v)) / static_cast<double>(prev_trials));
    EXPECT_LE(v, prev + 3 * se + 1e-12) << "m = " << m;
    prev = v;
  }
}

TEST(Experiment, ParameterValidation) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 2);
  SamplerParams p;
  p.trials = 0;
  EXPECT_THROW(estimate_constraint_probability(h, a, p, ConstraintSet::FOnly, 1, 2), ParameterError);
  p.trials = 1;
  p.alpha = 0;
  EXPECT_THROW(estimate_constraint_probability(h, a, p, ConstraintSet::FAndE, 1, 2), ParameterError);
  p.alpha = 1;
  EXPECT_THROW(estimate_constraint_probability(h, a, p, ConstraintSet::FOnly, 1, 3), ContractError);
}
