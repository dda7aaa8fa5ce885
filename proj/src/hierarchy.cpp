#include "hcr/hierarchy.hpp"

#include <limits>

namespace hcr {
namespace {

std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::int32_t>::max() / base) {
      throw ParameterError("hierarchy too large: k^(l_max+1) overflows");
    }
    out *= base;
  }
  return out;
}

const std::vector<ConceptId> kNoChildren;

}  // namespace

std::int64_t HierarchyParams::leaf_count() const {
  return checked_pow(k, l_max + 1);
}

void HierarchyParams::validate() const {
  if (l_max < 1) throw ParameterError("l_max must be >= 1, got " + std::to_string(l_max));
  if (k < 1) throw ParameterError("k must be >= 1, got " + std::to_string(k));
  const auto leaves = leaf_count();
  if (n != 0 && n < leaves) {
    throw ParameterError("n = " + std::to_string(n) + " is smaller than |C_0| = " + std::to_string(leaves));
  }
}

ConceptHierarchy::ConceptHierarchy(HierarchyParams params, std::vector<int> level_sizes,
                                   std::map<ConceptId, std::vector<ConceptId>> children)
    : params_(params), level_sizes_(std::move(level_sizes)), children_(std::move(children)) {
  if (params_.l_max < 1 || params_.k < 1) throw ParameterError("hierarchy needs l_max >= 1 and k >= 1");
  if (static_cast<int>(level_sizes_.size()) != params_.l_max + 1) {
    throw ParameterError("expected " + std::to_string(params_.l_max + 1) + " levels, got " +
                         std::to_string(level_sizes_.size()));
  }
  for (int s : level_sizes_) {
    if (s < 0) throw ParameterError("negative level size");
  }
  if (params_.n != 0 && params_.n < level_sizes_[0]) throw ParameterError("n smaller than |C_0|");
  if (params_.n == 0) params_.n = level_sizes_[0];
  for (const auto& [parent, kids] : children_) {
    if (!contains(parent)) throw ParameterError("children entry for unknown concept " + to_string(parent));
    if (parent.level == 0 && !kids.empty()) {
      throw ParameterError("level-0 concept " + to_string(parent) + " cannot have children");
    }
    for (auto c : kids) {
      if (!contains(c)) throw ParameterError("unknown child " + to_string(c) + " of " + to_string(parent));
    }
  }
}

int ConceptHierarchy::level_size(int level) const {
  if (level < 0 || level > params_.l_max) throw LookupError("no level " + std::to_string(level));
  return level_sizes_[static_cast<std::size_t>(level)];
}

std::vector<ConceptId> ConceptHierarchy::concepts(int level) const {
  const int size = level_size(level);
  std::vector<ConceptId> out;
  out.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) out.push_back({level, i});
  return out;
}

std::vector<ConceptId> ConceptHierarchy::all_concepts() const {
  std::vector<ConceptId> out;
  for (int l = 0; l <= params_.l_max; ++l) {
    auto level = concepts(l);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::size_t ConceptHierarchy::concept_count() const {
  std::size_t n = 0;
  for (int s : level_sizes_) n += static_cast<std::size_t>(s);
  return n;
}

bool ConceptHierarchy::contains(ConceptId c) const {
  return c.level >= 0 && c.level <= params_.l_max && c.index >= 0 &&
         c.index < level_sizes_[static_cast<std::size_t>(c.level)];
}

const std::vector<ConceptId>& ConceptHierarchy::children(ConceptId c) const {
  if (!contains(c)) throw LookupError("unknown concept " + to_string(c));
  auto it = children_.find(c);
  return it == children_.end() ? kNoChildren : it->second;
}

ConceptHierarchy build_uniform_hierarchy(const HierarchyParams& params) {
  params.validate();
  std::vector<int> sizes(static_cast<std::size_t>(params.l_max + 1));
  for (int l = 0; l <= params.l_max; ++l) {
    sizes[static_cast<std::size_t>(l)] = static_cast<int>(checked_pow(params.k, params.l_max - l + 1));
  }
  std::map<ConceptId, std::vector<ConceptId>> children;
  for (int l = 1; l <= params.l_max; ++l) {
    for (int i = 0; i < sizes[static_cast<std::size_t>(l)]; ++i) {
      auto& kids = children[{l, i}];
      for (int j = 0; j < params.k; ++j) kids.push_back({l - 1, i * params.k + j});
    }
  }
  return ConceptHierarchy(params, std::move(sizes), std::move(children));
}

HierarchyValidation validate_hierarchy(const ConceptHierarchy& h) {
  HierarchyValidation v;
  const int k = h.k();
  if (h.level_size(h.l_max()) != k) {
    v.top_level_count = false;
    v.failures.push_back("top level has " + std::to_string(h.level_size(h.l_max())) + " concepts, expected " +
                         std::to_string(k));
  }
  for (int l = 1; l <= h.l_max(); ++l) {
    std::map<ConceptId, ConceptId> owner;
    for (auto c : h.concepts(l)) {
      const auto& kids = h.children(c);
      if (static_cast<int>(kids.size()) != k) {
        v.uniform_degree = false;
        v.failures.push_back(to_string(c) + " has " + std::to_string(kids.size()) + " children, expected " +
                             std::to_string(k));
      }
      for (auto child : kids) {
        if (child.level != l - 1) {
          v.level_consistent = false;
          v.failures.push_back("child " + to_string(child) + " of " + to_string(c) + " is not at level " +
                               std::to_string(l - 1));
        }
        auto [it, fresh] = owner.emplace(child, c);
        if (!fresh && it->second != c) {
          v.disjoint_children = false;
          v.failures.push_back(to_string(child) + " is a child of both " + to_string(it->second) + " and " +
                               to_string(c));
        } else if (!fresh) {
          v.uniform_degree = false;
          v.failures.push_back(to_string(child) + " listed twice under " + to_string(c));
        }
      }
    }
  }
  return v;
}

ConceptSet descendants(const ConceptHierarchy& h, ConceptId c) {
  if (!h.contains(c)) throw LookupError("unknown concept " + to_string(c));
  ConceptSet out;
  std::vector<ConceptId> stack{c};
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    if (!out.insert(cur).second) continue;
    for (auto child : h.children(cur)) stack.push_back(child);
  }
  return out;
}

ConceptSet leaves(const ConceptHierarchy& h, ConceptId c) {
  ConceptSet out;
  for (auto d : descendants(h, c)) {
    if (d.level == 0) out.insert(d);
  }
  return out;
}

BitVector leaf_mask(const ConceptHierarchy& h, const ConceptSet& B) {
  BitVector mask(static_cast<std::size_t>(h.level_size(0)));
  for (auto b : B) {
    if (b.level != 0) throw QueryError("concept " + to_string(b) + " in B is not at level 0");
    if (!h.contains(b)) throw QueryError("concept " + to_string(b) + " in B is not in C_0");
    mask.set(static_cast<std::size_t>(b.index));
  }
  return mask;
}

SupportLevels support_levels(const ConceptHierarchy& h, const BitVector& leaf_mask, const Rational& r) {
  if (r < 0 || r > 1) throw ParameterError("support ratio r must lie in [0,1], got " + to_string(r));
  if (leaf_mask.size() != static_cast<std::size_t>(h.level_size(0))) {
    throw ContractError("leaf mask size does not match |C_0|");
  }
  const Rational needed = r * h.k();
  SupportLevels levels;
  levels.push_back(leaf_mask);
  for (int l = 1; l <= h.l_max(); ++l) {
    const auto& below = levels.back();
    BitVector here(static_cast<std::size_t>(h.level_size(l)));
    for (int i = 0; i < h.level_size(l); ++i) {
      std::int64_t supported_children = 0;
      for (auto child : h.children({l, i})) {
        if (child.level == l - 1 && below.test(static_cast<std::size_t>(child.index))) ++supported_children;
      }
      if (at_least(supported_children, needed)) here.set(static_cast<std::size_t>(i));
    }
    levels.push_back(std::move(here));
  }
  return levels;
}

ConceptSet support(const ConceptHierarchy& h, const SupportQuery& q) {
  const auto levels = support_levels(h, leaf_mask(h, q.B), q.r);
  ConceptSet out;
  for (int l = 0; l <= h.l_max(); ++l) {
    for (auto i : levels[static_cast<std::size_t>(l)].set_bits()) out.insert({l, static_cast<int>(i)});
  }
  return out;
}

}  // namespace hcr
