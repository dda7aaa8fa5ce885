#include <gtest/gtest.h>

#include "hcr/hierarchy.hpp"
#include "oracles.hpp"

using namespace hcr;

namespace {

ConceptHierarchy uniform(int k, int l_max) {
  return build_uniform_hierarchy({l_max, k, 0});
}

}  // namespace

TEST(Hierarchy, SmallestLegal) {
  const auto h = uniform(1, 1);
  EXPECT_EQ(h.level_size(0), 1);
  EXPECT_EQ(h.level_size(1), 1);
  EXPECT_EQ(h.children({1, 0}), (std::vector<ConceptId>{{0, 0}}));
  EXPECT_TRUE(validate_hierarchy(h).ok());
}

TEST(Hierarchy, LevelSizes) {
  const auto h = uniform(2, 2);
  EXPECT_EQ(h.level_size(2), 2);
  EXPECT_EQ(h.level_size(1), 4);
  EXPECT_EQ(h.level_size(0), 8);
  EXPECT_EQ(h.concept_count(), 14u);
  EXPECT_EQ(h.params().universe_size(), 8);
}

TEST(Hierarchy, ThreeRootsDisjointChildren) {
  const auto h = uniform(3, 1);
  EXPECT_EQ(h.level_size(1), 3);
  EXPECT_EQ(h.level_size(0), 9);
  std::set<ConceptId> seen;
  for (auto root : h.concepts(1)) {
    for (auto c : h.children(root)) EXPECT_TRUE(seen.insert(c).second);
  }
  EXPECT_EQ(seen.size(), 9u);
  const auto v = validate_hierarchy(h);
  EXPECT_TRUE(v.ok());
  EXPECT_TRUE(v.failures.empty());
}

TEST(Hierarchy, RejectsBadParameters) {
  EXPECT_THROW(uniform(0, 1), ParameterError);
  EXPECT_THROW(uniform(2, 0), ParameterError);
  EXPECT_THROW(build_uniform_hierarchy({1, 2, 3}), ParameterError);
  EXPECT_NO_THROW(build_uniform_hierarchy({1, 2, 4}));
  EXPECT_NO_THROW(build_uniform_hierarchy({1, 2, 100}));
  EXPECT_THROW(build_uniform_hierarchy({70, 2, 0}), ParameterError);
}

TEST(Hierarchy, ValidationReportsMissingChild) {
  const auto h = uniform(2, 2);
  auto children = h.children_map();
  children[{1, 0}].pop_back();
  const ConceptHierarchy bad(h.params(), {8, 4, 2}, children);
  const auto v = validate_hierarchy(bad);
  EXPECT_FALSE(v.ok());
  EXPECT_FALSE(v.uniform_degree);
  EXPECT_TRUE(v.disjoint_children);
  EXPECT_FALSE(v.failures.empty());
}

TEST(Hierarchy, ValidationReportsSharedChild) {
  const auto h = uniform(2, 2);
  auto children = h.children_map();
  children[{1, 1}][0] = ConceptId{0, 0};
  const ConceptHierarchy bad(h.params(), {8, 4, 2}, children);
  const auto v = validate_hierarchy(bad);
  EXPECT_FALSE(v.disjoint_children);
  EXPECT_FALSE(v.ok());
}

TEST(Hierarchy, ValidationReportsRootCountAndLevelSkip) {
  const auto h = uniform(2, 1);
  auto children = h.children_map();
  const ConceptHierarchy extra_root(h.params(), {4, 3}, [&] {
    auto c = children;
    c[{1, 2}] = {};
    return c;
  }());
  EXPECT_FALSE(validate_hierarchy(extra_root).top_level_count);

  const auto h2 = uniform(1, 2);
  auto c2 = h2.children_map();
  c2[{2, 0}] = {ConceptId{0, 0}};
  const ConceptHierarchy skip(h2.params(), {1, 1, 1}, c2);
  EXPECT_FALSE(validate_hierarchy(skip).level_consistent);
}

TEST(Hierarchy, ConstructorRejectsUnknownIds) {
  std::map<ConceptId, std::vector<ConceptId>> children{{{1, 0}, {{0, 5}}}};
  EXPECT_THROW(ConceptHierarchy({1, 1, 0}, {1, 1}, children), ParameterError);
}

TEST(Hierarchy, ChildrenLookup) {
  const auto h = uniform(2, 2);
  EXPECT_EQ(h.children({2, 1}), (std::vector<ConceptId>{{1, 2}, {1, 3}}));
  EXPECT_TRUE(h.children({0, 3}).empty());
  EXPECT_THROW(h.children({1, 9}), LookupError);
  EXPECT_THROW(h.children({5, 0}), LookupError);
}

TEST(Descendants, LevelZeroIsItself) {
  const auto h = uniform(2, 2);
  EXPECT_EQ(descendants(h, {0, 5}), (ConceptSet{{0, 5}}));
}

TEST(Descendants, FullSubtree) {
  const auto h = uniform(2, 2);
  EXPECT_EQ(descendants(h, {2, 0}).size(), 7u);
  EXPECT_EQ(leaves(h, {2, 1}), (ConceptSet{{0, 4}, {0, 5}, {0, 6}, {0, 7}}));
}

TEST(Descendants, LeafCountMatchesClosure) {
  for (int k = 1; k <= 3; ++k) {
    for (int l_max = 1; l_max <= 3; ++l_max) {
      const auto h = uniform(k, l_max);
      for (auto c : h.all_concepts()) {
        // Brute-force closure: iterate children until no growth.
        ConceptSet closure{c};
        bool grew = true;
        while (grew) {
          grew = false;
          for (auto d : ConceptSet(closure)) {
            for (auto e : h.children(d)) grew |= closure.insert(e).second;
          }
        }
        EXPECT_EQ(descendants(h, c), closure);
        std::size_t level0 = 0;
        for (auto d : closure) level0 += d.level == 0 ? 1 : 0;
        EXPECT_EQ(leaves(h, c).size(), level0);
        EXPECT_EQ(static_cast<std::int64_t>(level0), oracle::ipow(k, c.level));
      }
    }
  }
}

TEST(Support, AllLeavesSupportsEverything) {
  const auto h = uniform(3, 2);
  ConceptSet all;
  for (auto c : h.concepts(0)) all.insert(c);
  for (const Rational r : {Rational(0), Rational(1, 3), Rational(1)}) {
    EXPECT_EQ(support(h, {all, r}).size(), h.concept_count());
  }
}

TEST(Support, EmptyBaseCase) {
  const auto h = uniform(2, 2);
  EXPECT_TRUE(support(h, {{}, Rational(1, 4)}).empty());
  // r = 0 makes every internal concept supported, even from nothing.
  EXPECT_EQ(support(h, {{}, Rational(0)}).size(), 6u);
}

TEST(Support, HandEvaluatedThreshold) {
  const auto h = uniform(2, 1);
  const ConceptSet B{{0, 0}};
  EXPECT_TRUE(support(h, {B, Rational(1, 2)}).count({1, 0}));
  EXPECT_FALSE(support(h, {B, Rational(3, 4)}).count({1, 0}));
  EXPECT_EQ(support(h, {B, Rational(1, 2)}), oracle::support(2, 1, B, Rational(1, 2)));
}

TEST(Support, RejectsBadQueries) {
  const auto h = uniform(2, 1);
  EXPECT_THROW(support(h, {{{1, 0}}, Rational(1)}), QueryError);
  EXPECT_THROW(support(h, {{{0, 4}}, Rational(1)}), QueryError);
  EXPECT_THROW(support(h, {{}, Rational(5, 4)}), ParameterError);
  EXPECT_THROW(support(h, {{}, Rational(-1, 4)}), ParameterError);
}

TEST(Support, MatchesOracleExhaustively) {
  const std::vector<Rational> ratios{0, Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4), 1};
  for (auto [k, l_max] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 1}, {1, 2}, {2, 2}, {4, 1}}) {
    const auto h = uniform(k, l_max);
    for (const auto& B : oracle::all_leaf_sets(k, l_max)) {
      for (const auto& r : ratios) {
        ASSERT_EQ(support(h, {B, r}), oracle::support(k, l_max, B, r)) << "k=" << k << " l_max=" << l_max;
      }
    }
  }
}

TEST(Support, MonotoneInBAndR) {
  const auto h = uniform(2, 2);
  const auto sets = oracle::all_leaf_sets(2, 2);
  for (const auto& B : sets) {
    const auto loose = support(h, {B, Rational(1, 2)});
    const auto tight = support(h, {B, Rational(1)});
    for (auto c : tight) EXPECT_TRUE(loose.count(c));
    auto bigger = B;
    bigger.insert({0, 0});
    for (auto c : loose) EXPECT_TRUE(support(h, {bigger, Rational(1, 2)}).count(c));
  }
}
