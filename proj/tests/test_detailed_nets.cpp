#include <gtest/gtest.h>

#include "hcr/detailed_nets.hpp"
#include "hcr/rng.hpp"
#include "oracles.hpp"

using namespace hcr;

namespace {

ConceptHierarchy uniform(int k, int l_max) {
  return build_uniform_hierarchy({l_max, k, 0});
}

DetailedParams params(int m, Rational eps, Rational r1, Rational r2, Rational a = 1) {
  DetailedParams p;
  p.m = m;
  p.epsilon = eps;
  p.a = a;
  p.r1 = r1;
  p.r2 = r2;
  return p;
}

ExecutionTrace run(const DetailedNet& d, const ConceptHierarchy& h, const ConceptSet& B) {
  return execute(d.network, present_multi(d.reps, h, B, d.F));
}

// Removes the first `drop` reps of every concept.
FailurePattern drop_each(const ConceptHierarchy& h, const MultiRepAssignment& assign, int drop) {
  FailurePattern F;
  for (auto c : h.all_concepts()) {
    const auto& reps = assign.reps(c);
    for (int j = 0; j < drop; ++j) F.failed.insert(reps[static_cast<std::size_t>(j)]);
  }
  return F;
}

// The firing neurons of a trace in the oracle's per-layer form.
std::map<int, std::set<int>> firing_by_layer(const ExecutionTrace& trace) {
  std::map<int, std::set<int>> out;
  for (int t = 0; t < static_cast<int>(trace.time_count()); ++t) {
    for (auto v : trace.firing_at(t)) {
      EXPECT_EQ(v.layer, t);
      out[v.layer].insert(v.index);
    }
  }
  return out;
}

void drop_empty(std::map<int, std::set<int>>& m) {
  std::erase_if(m, [](const auto& kv) { return kv.second.empty(); });
}

}  // namespace

TEST(DetailedParams, Validation) {
  EXPECT_NO_THROW(params(3, Rational(1, 5), Rational(1, 2), 1).validate());
  EXPECT_THROW(params(0, 0, 0, 1).validate(), ParameterError);
  EXPECT_THROW(params(1, Rational(6, 5), 0, 1).validate(), ParameterError);
  EXPECT_THROW(params(1, 0, 0, 1, 0).validate(), ParameterError);
  EXPECT_THROW(params(1, 0, 1, Rational(1, 2)).validate(), ParameterError);
}

TEST(MultiRepAssignment, CanonicalLayout) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 3);
  EXPECT_EQ(a.reps({1, 1}), (std::vector<NeuronId>{{1, 3}, {1, 4}, {1, 5}}));
  EXPECT_EQ(a.required_width(0), 12);
  EXPECT_EQ(a.required_width(1), 6);
  EXPECT_EQ(a.all_neurons().size(), 18u);
}

TEST(MultiRepAssignment, RejectsOverlapAndWrongLayer) {
  using Sets = std::vector<std::vector<std::vector<NeuronId>>>;
  EXPECT_THROW(MultiRepAssignment(2, Sets{{{{0, 0}, {0, 1}}, {{0, 1}, {0, 2}}}, {{{1, 0}, {1, 1}}}}), ParameterError);
  EXPECT_THROW(MultiRepAssignment(2, Sets{{{{0, 0}, {0, 1}}}, {{{0, 2}, {1, 1}}}}), ParameterError);
  EXPECT_THROW(MultiRepAssignment(2, Sets{{{{0, 0}}}}), ParameterError);
}

TEST(FConstraint, EmptyFailuresPass) {
  const auto h = uniform(2, 2);
  const auto a = MultiRepAssignment::canonical(h, 4);
  for (const Rational eps : {Rational(0), Rational(1, 4), Rational(1)}) {
    EXPECT_TRUE(check_F_constraint(a, {}, 4, eps).pass());
  }
}

TEST(FConstraint, TwoLostOfTenFailsAtOneTenth) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 10);
  FailurePattern F;
  F.failed = {a.reps({0, 2})[0], a.reps({0, 2})[7]};
  const auto r = check_F_constraint(a, F, 10, Rational(1, 10));
  EXPECT_EQ(r.bound, Rational(9));
  ASSERT_EQ(r.shortfalls.size(), 1u);
  EXPECT_EQ(r.shortfalls[0].concept_id, (ConceptId{0, 2}));
  EXPECT_EQ(r.shortfalls[0].surviving, 8);
}

TEST(FConstraint, OneLostEverywherePassesAtBoundary) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 10);
  EXPECT_TRUE(check_F_constraint(a, drop_each(h, a, 1), 10, Rational(1, 10)).pass());
}

TEST(FConstraint, MismatchedM) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 3);
  EXPECT_THROW(check_F_constraint(a, {}, 4, 0), ContractError);
}

TEST(EConstraint, CompleteEdgesPass) {
  const auto h = uniform(2, 2);
  const auto a = MultiRepAssignment::canonical(h, 3);
  const auto E = complete_edges(h, a);
  EXPECT_EQ(E.edges.size(), static_cast<std::size_t>((4 + 2) * 3 * 2 * 3));
  for (const Rational aa : {Rational(1, 4), Rational(1)}) {
    EXPECT_TRUE(check_E_constraint(a, {}, E, aa, 3, 0, h).pass());
  }
}

namespace {

// Keeps `keep` of the 10 child reps connected to every parent rep.
EdgeSet keep_edges(const ConceptHierarchy& h, const MultiRepAssignment& a, int keep) {
  EdgeSet E;
  for (auto c : h.all_concepts()) {
    if (c.level == 0) continue;
    for (auto v : a.reps(c)) {
      for (auto child : h.children(c)) {
        const auto& us = a.reps(child);
        for (int j = 0; j < keep; ++j) E.edges.insert({us[static_cast<std::size_t>(j)], v});
      }
    }
  }
  return E;
}

}  // namespace

TEST(EConstraint, FourConnectedFailsAtHalf) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 10);
  auto E = keep_edges(h, a, 5);
  const auto v = a.reps({1, 1})[3];
  const auto u = a.reps({0, 3})[0];
  E.edges.erase({u, v});
  const auto r = check_E_constraint(a, {}, E, Rational(1, 2), 10, Rational(1, 10), h);
  EXPECT_EQ(r.bound, Rational(9, 2));
  ASSERT_EQ(r.shortfalls.size(), 1u);
  EXPECT_EQ(r.shortfalls[0].parent_rep, v);
  EXPECT_EQ(r.shortfalls[0].parent, (ConceptId{1, 1}));
  EXPECT_EQ(r.shortfalls[0].child, (ConceptId{0, 3}));
  EXPECT_EQ(r.shortfalls[0].connected_survivors, 4);
}

TEST(EConstraint, FiveConnectedPassesAtHalf) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 10);
  EXPECT_TRUE(check_E_constraint(a, {}, keep_edges(h, a, 5), Rational(1, 2), 10, Rational(1, 10), h).pass());
}

TEST(EConstraint, FailedChildRepsDoNotCount) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 10);
  FailurePattern F;
  F.failed.insert(a.reps({0, 0})[0]);
  const auto r = check_E_constraint(a, F, keep_edges(h, a, 5), Rational(1, 2), 10, Rational(1, 10), h);
  EXPECT_EQ(r.shortfalls.size(), 10u);  // every rep of (1, 0) loses one connected survivor from (0, 0)
}

TEST(EdgeSet, ValidationRejectsForeignEdges) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 2);
  EdgeSet E;
  E.edges.insert({a.reps({0, 0})[0], a.reps({1, 1})[0]});  // (0,0) is not a child of (1,1)
  EXPECT_THROW(validate_edge_set(h, a, E), ParameterError);
  EXPECT_NO_THROW(validate_edge_set(h, a, complete_edges(h, a)));
}

TEST(BuildH, Threshold) {
  const auto h = uniform(4, 1);
  const auto p = params(10, Rational(1, 10), Rational(1, 2), Rational(3, 4));
  EXPECT_EQ(p.h_tau(4), Rational(27));
  EXPECT_EQ(make_H(h, p, {}).network.tau(), Rational(27));
}

TEST(BuildH, FullRepConnectivity) {
  const auto h = uniform(3, 2);
  const auto d = make_H(h, params(2, 0, Rational(1, 3), 1), {});
  for (auto c : h.all_concepts()) {
    if (c.level == 0) continue;
    for (auto v : d.reps.reps(c)) {
      EXPECT_EQ(d.network.incoming(v).count(), 6u);
      for (auto child : h.children(c)) {
        for (auto u : d.reps.reps(child)) EXPECT_TRUE(d.network.weight(u, v));
      }
    }
  }
}

TEST(BuildH, CollapsesToA1) {
  for (auto [k, l_max] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}}) {
    const auto h = uniform(k, l_max);
    for (const Rational r2 : {Rational(1, 4), Rational(1, 2), Rational(1)}) {
      const auto d = make_H(h, params(1, 0, 0, r2), {});
      const auto a1 = build_A1(h, {0, r2});
      for (const auto& B : oracle::all_leaf_sets(k, l_max)) {
        EXPECT_EQ(run(d, h, B), execute(a1.network, present_single(a1.assign, h, B)));
      }
    }
  }
}

TEST(BuildH, GapIsEnforced) {
  const auto h = uniform(2, 1);
  const auto p = params(2, Rational(1, 2), Rational(3, 4), 1);
  EXPECT_FALSE(p.h_gap_holds());
  EXPECT_THROW(make_H(h, p, {}), ParameterError);
  DetailedBuildOptions opts;
  opts.enforce_gap = false;
  EXPECT_NO_THROW(make_H(h, p, {}, opts));
}

TEST(BuildH, FConstraintViolationNamesConcept) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 5);
  FailurePattern F;
  F.failed = {a.reps({0, 1})[0], a.reps({0, 1})[1]};
  try {
    make_H(h, params(5, Rational(1, 5), 0, 1), F);
    FAIL() << "expected a constraint violation";
  } catch (const ConstraintViolation& e) {
    EXPECT_NE(std::string(e.what()).find("0:1"), std::string::npos) << e.what();
  }
  DetailedBuildOptions opts;
  opts.enforce_constraints = false;
  EXPECT_NO_THROW(make_H(h, params(5, Rational(1, 5), 0, 1), F, opts));
}

TEST(BuildH, ThresholdOverrideRange) {
  const auto h = uniform(3, 1);
  const auto p = params(5, Rational(1, 5), Rational(3, 4), 1);
  EXPECT_EQ(p.h_tau_range(3), std::make_pair(Rational(9), Rational(12)));
  DetailedBuildOptions opts;
  opts.tau = Rational(10);
  EXPECT_EQ(make_H(h, p, {}, opts).network.tau(), Rational(10));
  opts.tau = Rational(17, 2);
  EXPECT_THROW(make_H(h, p, {}, opts), ParameterError);
  opts.tau = Rational(13);
  EXPECT_THROW(make_H(h, p, {}, opts), ParameterError);
}

TEST(BuildH, LowOverrideAdmitsNonFiringViolation) {
  // tau = r1 k m (1-e) = 9 is admissible, yet two fully firing children of
  // three give potential 10 while 2 < r1 k = 9/4.
  const auto h = uniform(3, 1);
  const auto p = params(5, Rational(1, 5), Rational(3, 4), 1);
  DetailedBuildOptions opts;
  opts.tau = Rational(9);
  const auto d = make_H(h, p, {}, opts);
  const ConceptSet B{{0, 0}, {0, 1}};
  const auto report = check_recognition_multi(run(d, h, B), d.reps, h, B, p);
  EXPECT_FALSE(report.part2_pass());
  EXPECT_TRUE(report.part1_pass());

  // A threshold of at least r1 k m keeps Part 2 on every input.
  opts.tau = Rational(45, 4);
  const auto safe = make_H(h, p, {}, opts);
  for (const auto& S : oracle::all_leaf_sets(3, 1)) {
    EXPECT_TRUE(check_recognition_multi(run(safe, h, S), safe.reps, h, S, p).pass());
  }
}

TEST(BuildH, PaddingNeuronsStaySilent) {
  const auto h = uniform(2, 1);
  const auto p = params(2, 0, Rational(1, 2), 1);
  DetailedBuildOptions opts;
  opts.padding = 3;
  const auto padded = make_H(h, p, {}, opts);
  const auto plain = make_H(h, p, {});
  EXPECT_EQ(padded.network.width(0), plain.network.width(0) + 3);
  for (const auto& B : oracle::all_leaf_sets(2, 1)) {
    EXPECT_EQ(run(padded, h, B).firing_at(1), run(plain, h, B).firing_at(1));
  }
}

TEST(BuildL, CompleteEdgesReduceToH) {
  const auto h = uniform(2, 2);
  const auto p = params(3, Rational(1, 5), Rational(1, 2), 1);
  const auto a = MultiRepAssignment::canonical(h, 3);
  const auto H = make_H(h, p, {});
  const auto L = make_L(h, p, {}, complete_edges(h, a));
  EXPECT_EQ(H.network, L.network);
}

TEST(BuildL, RationalThreshold) {
  const auto h = uniform(4, 1);
  const auto p = params(10, Rational(1, 10), Rational(1, 4), Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(p.l_tau(4), Rational(27, 2));
  const auto a = MultiRepAssignment::canonical(h, 10);
  const auto L = make_L(h, p, {}, complete_edges(h, a));
  EXPECT_EQ(L.network.tau(), Rational(27, 2));
  EXPECT_EQ(L.network.min_potential(), 14);
}

TEST(BuildL, ConstraintAndGapChecks) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 4);
  const auto p = params(4, 0, Rational(1, 4), 1, Rational(1, 2));
  EdgeSet sparse;
  for (const auto& e : complete_edges(h, a).edges) {
    if (e.from.index % 4 == 0) sparse.edges.insert(e);
  }
  EXPECT_THROW(make_L(h, p, {}, sparse), ConstraintViolation);
  EXPECT_THROW(make_L(h, params(4, 0, Rational(3, 4), 1, Rational(1, 2)), {}, complete_edges(h, a)),
               ParameterError);
}

TEST(PresentMulti, Cases) {
  const auto h = uniform(2, 1);
  const auto a = MultiRepAssignment::canonical(h, 5);
  EXPECT_EQ(present_multi(a, h, {{0, 0}, {0, 3}}, {}).fire_at_zero.size(), 10u);
  EXPECT_TRUE(present_multi(a, h, {}, {}).fire_at_zero.empty());
  FailurePattern F;
  F.failed.insert(a.reps({0, 3})[2]);
  const auto p = present_multi(a, h, {{0, 3}}, F);
  EXPECT_EQ(p.fire_at_zero.size(), 4u);
  EXPECT_FALSE(p.fire_at_zero.count(a.reps({0, 3})[2]));
  EXPECT_THROW(present_multi(a, h, {{1, 0}}, {}), QueryError);
}

TEST(RecognitionMulti, EmptyInputMeansTotalSilence) {
  const auto h = uniform(2, 2);
  const auto p = params(3, 0, Rational(1, 4), 1);
  const auto d = make_H(h, p, {});
  const auto trace = run(d, h, {});
  for (int t = 0; t < 3; ++t) EXPECT_TRUE(trace.firing_at(t).empty());
  EXPECT_TRUE(check_recognition_multi(trace, d.reps, h, {}, p).pass());
}

TEST(RecognitionMulti, HPassesWithBoundaryFailures) {
  const auto h = uniform(2, 2);
  const auto p = params(5, Rational(1, 5), Rational(1, 2), 1);
  const auto a = MultiRepAssignment::canonical(h, 5);
  const auto d = make_H(h, p, drop_each(h, a, 1));
  for (const auto& B : oracle::all_leaf_sets(2, 2)) {
    const auto r = check_recognition_multi(run(d, h, B), d.reps, h, B, p);
    ASSERT_TRUE(r.pass());
    ASSERT_EQ(r.concepts.size(), h.concept_count());
  }
}

TEST(RecognitionMulti, ReportsMissingFiring) {
  const auto h = uniform(2, 1);
  const auto p = params(2, 0, Rational(1, 2), 1);
  const auto d = make_H(h, p, {});
  const ConceptSet B{{0, 0}, {0, 1}};
  const ExecutionTrace silent(std::vector<Firing>{d.network.silent(), d.network.silent()});
  const auto r = check_recognition_multi(silent, d.reps, h, B, p);
  EXPECT_FALSE(r.part1_pass());
  EXPECT_TRUE(r.part2_pass());
  EXPECT_NE(std::find(r.violations.begin(), r.violations.end(), Violation{{1, 0}, ViolationKind::ShouldFire}),
            r.violations.end());
}

// The library's traces against the concept-level oracle, on random valid and
// invalid instances.
class DetailedOracle : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(DetailedOracle, TracesMatch) {
  SplitMix64 rng(GetParam());
  const int k = 2 + static_cast<int>(rng.below(2));
  const int l_max = 1 + static_cast<int>(k == 2 ? rng.below(2) : 0);
  const int m = 1 + static_cast<int>(rng.below(4));
  const auto h = uniform(k, l_max);
  const auto a = MultiRepAssignment::canonical(h, m);
  const auto p = params(m, Rational(static_cast<std::int64_t>(rng.below(3)), 4),
                        0, Rational(static_cast<std::int64_t>(1 + rng.below(4)), 4),
                        Rational(static_cast<std::int64_t>(1 + rng.below(2)), 2));
  FailurePattern F;
  for (auto v : a.all_neurons()) {
    if (rng.below(5) == 0) F.failed.insert(v);
  }
  EdgeSet E;
  for (const auto& e : complete_edges(h, a).edges) {
    if (rng.below(3) != 0) E.edges.insert(e);
  }
  DetailedBuildOptions opts;
  opts.enforce_constraints = false;
  const auto H = make_H(h, p, F, opts);
  const auto L = make_L(h, p, F, E, opts);
  const auto sets = oracle::all_leaf_sets(k, l_max);
  for (std::size_t s = 0; s < sets.size(); s += 1 + rng.below(5)) {
    const auto& B = sets[s];
    auto expect_h = oracle::detailed_firing(k, l_max, m, F.failed, nullptr, H.network.tau(), B);
    auto expect_l = oracle::detailed_firing(k, l_max, m, F.failed, &E.edges, L.network.tau(), B);
    drop_empty(expect_h);
    drop_empty(expect_l);
    EXPECT_EQ(firing_by_layer(run(H, h, B)), expect_h);
    EXPECT_EQ(firing_by_layer(run(L, h, B)), expect_l);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, DetailedOracle, ::testing::Range<std::uint64_t>(0, 30));

TEST(Monotonicity, MoreFailuresNeverAddFiring) {
  const auto h = uniform(2, 2);
  const auto p = params(4, Rational(1, 2), Rational(1, 4), Rational(3, 4));
  const auto a = MultiRepAssignment::canonical(h, 4);
  DetailedBuildOptions opts;
  opts.enforce_constraints = false;
  SplitMix64 rng(5);
  FailurePattern F;
  auto prev = make_H(h, p, F, opts);
  for (int round = 0; round < 8; ++round) {
    const auto all = a.all_neurons();
    for (int j = 0; j < 3; ++j) F.failed.insert(all[rng.below(all.size())]);
    const auto next = make_H(h, p, F, opts);
    for (const auto& B : oracle::all_leaf_sets(2, 2)) {
      const auto before = run(prev, h, B);
      const auto after = execute(next.network, present_multi(next.reps, h, B, F));
      for (int t = 0; t < 3; ++t) {
        for (auto v : after.firing_at(t)) EXPECT_TRUE(before.fires(t, v));
      }
    }
    prev = next;
  }
}
