#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hcr/bitvector.hpp"
#include "hcr/common.hpp"

namespace hcr {

struct HierarchyParams {
  int l_max = 1;
  int k = 1;
  /// |D_0|. Zero means "exactly |C_0|", i.e. k^(l_max+1).
  std::int64_t n = 0;

  /// k^(l_max+1): number of level-0 concepts of a uniform hierarchy.
  std::int64_t leaf_count() const;
  std::int64_t universe_size() const { return n == 0 ? leaf_count() : n; }
  /// Throws ParameterError.
  void validate() const;
  bool operator==(const HierarchyParams&) const = default;
};

/// A k-root forest of concepts. Level l holds concepts (l, 0) .. (l, size-1).
/// Immutable once built. The constructor checks only structural sanity
/// (ids exist, indices are contiguous); the uniformity properties are
/// reported by validate_hierarchy so malformed hierarchies stay representable.
class ConceptHierarchy {
 public:
  ConceptHierarchy(HierarchyParams params, std::vector<int> level_sizes,
                   std::map<ConceptId, std::vector<ConceptId>> children);

  const HierarchyParams& params() const { return params_; }
  int l_max() const { return params_.l_max; }
  int k() const { return params_.k; }

  int level_size(int level) const;
  std::vector<ConceptId> concepts(int level) const;
  std::vector<ConceptId> all_concepts() const;
  std::size_t concept_count() const;
  bool contains(ConceptId c) const;

  /// Throws LookupError for unknown concepts. Level-0 concepts have none.
  const std::vector<ConceptId>& children(ConceptId c) const;
  const std::map<ConceptId, std::vector<ConceptId>>& children_map() const { return children_; }

  bool operator==(const ConceptHierarchy&) const = default;

 private:
  HierarchyParams params_;
  std::vector<int> level_sizes_;
  std::map<ConceptId, std::vector<ConceptId>> children_;
};

/// Canonical uniform hierarchy: level l has k^(l_max-l+1) concepts and the
/// children of (l, i) are (l-1, i*k) .. (l-1, i*k+k-1).
ConceptHierarchy build_uniform_hierarchy(const HierarchyParams& params);

struct HierarchyValidation {
  bool top_level_count = true;   // |C_lmax| = k
  bool uniform_degree = true;    // every internal concept has exactly k children
  bool disjoint_children = true; // same-level children sets are disjoint
  bool level_consistent = true;  // children sit exactly one level below
  std::vector<std::string> failures;

  bool ok() const { return top_level_count && uniform_degree && disjoint_children && level_consistent; }
};

HierarchyValidation validate_hierarchy(const ConceptHierarchy& h);

/// Reflexive-transitive closure of children.
ConceptSet descendants(const ConceptHierarchy& h, ConceptId c);
/// descendants(c) restricted to level 0.
ConceptSet leaves(const ConceptHierarchy& h, ConceptId c);

struct SupportQuery {
  ConceptSet B;
  Rational r;
};

/// Per-level membership bitmaps of B(0) .. B(l_max).
using SupportLevels = std::vector<BitVector>;

/// supp_r(B) as the union of B(0) .. B(l_max). Throws QueryError when B
/// holds a non-level-0 or unknown concept, ParameterError when r is outside [0,1].
ConceptSet support(const ConceptHierarchy& h, const SupportQuery& q);

/// Bitmap form of support over a level-0 membership mask.
SupportLevels support_levels(const ConceptHierarchy& h, const BitVector& leaf_mask, const Rational& r);

/// Level-0 membership mask of B; throws QueryError as support() does.
BitVector leaf_mask(const ConceptHierarchy& h, const ConceptSet& B);

}  // namespace hcr
