#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hcr/abstract_nets.hpp"
#include "hcr/engine.hpp"
#include "hcr/hierarchy.hpp"

namespace hcr {

struct DetailedParams {
  int m = 1;
  Rational epsilon{0};
  /// Connectivity coefficient; only L consults it.
  Rational a{1};
  Rational r1{0};
  Rational r2{0};

  /// Range checks only (m >= 1, epsilon in [0,1], a in (0,1], 0 <= r1 <= r2 <= 1).
  void validate() const;

  /// m(1 - epsilon): minimum surviving reps per concept.
  Rational survival_bound() const { return Rational(m) * (Rational(1) - epsilon); }
  /// a m (1 - epsilon): minimum surviving connected reps per (parent rep, child).
  Rational connectivity_bound() const { return a * survival_bound(); }

  bool h_gap_holds() const { return r1 <= r2 * (Rational(1) - epsilon); }
  bool l_gap_holds() const { return r1 <= a * r2 * (Rational(1) - epsilon); }

  Rational h_tau(int k) const { return r2 * k * survival_bound(); }
  Rational l_tau(int k) const { return a * r2 * k * survival_bound(); }
  /// Admissible threshold override ranges, [r1 k m(1-e), r2 k m(1-e)] and its a-scaled L analogue.
  std::pair<Rational, Rational> h_tau_range(int k) const { return {r1 * k * survival_bound(), h_tau(k)}; }
  std::pair<Rational, Rational> l_tau_range(int k) const { return {a * r1 * k * survival_bound(), l_tau(k)}; }
};

/// reps(c) = m neurons on layer level(c); all sets pairwise disjoint.
class MultiRepAssignment {
 public:
  /// reps[l][i] lists the neurons of concept (l, i). Throws ParameterError on
  /// overlap, wrong layer, or a set whose size is not m.
  MultiRepAssignment(int m, std::vector<std::vector<std::vector<NeuronId>>> reps);
  /// reps((l, i)) = neurons (l, i*m) .. (l, i*m + m - 1).
  static MultiRepAssignment canonical(const ConceptHierarchy& h, int m);

  int m() const { return m_; }
  int levels() const { return static_cast<int>(reps_.size()); }
  int level_size(int level) const { return static_cast<int>(reps_[static_cast<std::size_t>(level)].size()); }
  const std::vector<NeuronId>& reps(ConceptId c) const;
  /// All rep neurons in (layer, index) order.
  std::vector<NeuronId> all_neurons() const;
  /// Smallest width that holds every rep of the given layer.
  int required_width(int layer) const;

 private:
  int m_;
  std::vector<std::vector<std::vector<NeuronId>>> reps_;
};

struct FailurePattern {
  NeuronSet failed;
  bool operator==(const FailurePattern&) const = default;
};

/// Weight-1 child-rep -> parent-rep edges of L, stored as (from, to).
struct EdgeSet {
  std::set<Edge> edges;
  bool contains(NeuronId from, NeuronId to) const { return edges.count(Edge{from, to}) != 0; }
  bool operator==(const EdgeSet&) const = default;
};

/// Every possible child-rep -> parent-rep edge.
EdgeSet complete_edges(const ConceptHierarchy& h, const MultiRepAssignment& assign);
/// Throws ParameterError for an edge that is not child-rep -> parent-rep.
void validate_edge_set(const ConceptHierarchy& h, const MultiRepAssignment& assign, const EdgeSet& E);

struct SurvivalShortfall {
  ConceptId concept_id;
  int surviving = 0;
};

struct FConstraintReport {
  Rational bound;
  std::vector<SurvivalShortfall> shortfalls;
  bool pass() const { return shortfalls.empty(); }
};

struct ConnectivityShortfall {
  NeuronId parent_rep;
  ConceptId parent;
  ConceptId child;
  int connected_survivors = 0;
};

struct EConstraintReport {
  Rational bound;
  std::vector<ConnectivityShortfall> shortfalls;
  bool pass() const { return shortfalls.empty(); }
};

/// |reps(c) \ F| >= m(1 - epsilon) for every concept.
FConstraintReport check_F_constraint(const MultiRepAssignment& assign, const FailurePattern& F, int m,
                                     const Rational& epsilon);

/// For every c with level >= 1, v in reps(c), child c' of c:
/// |{u in reps(c') : u not in F, (u, v) in E}| >= a m (1 - epsilon).
EConstraintReport check_E_constraint(const MultiRepAssignment& assign, const FailurePattern& F, const EdgeSet& E,
                                     const Rational& a, int m, const Rational& epsilon, const ConceptHierarchy& h);

struct DetailedBuildOptions {
  /// Threshold override; must lie in the builder's admissible range.
  std::optional<Rational> tau;
  /// Reject parameters that violate r1 <= r2(1-e) (H) or r1 <= a r2 (1-e) (L).
  bool enforce_gap = true;
  /// Reject F / E that violate the survival constraints. Disabled only for fault injection.
  bool enforce_constraints = true;
  /// Extra zero-weight neurons appended to every layer.
  int padding = 0;
};

/// Full rep connectivity, tau = r2 k m (1 - epsilon), failed set F.
/// Throws ConstraintViolation naming the first violating concept.
Network build_H(const ConceptHierarchy& h, const DetailedParams& params, const MultiRepAssignment& assign,
                const FailurePattern& F, const DetailedBuildOptions& opts = {});

/// Weight 1 exactly on E, tau = a r2 k m (1 - epsilon), failed set F.
/// Throws ConstraintViolation naming the violating concept or (v, c') pair.
Network build_L(const ConceptHierarchy& h, const DetailedParams& params, const MultiRepAssignment& assign,
                const FailurePattern& F, const EdgeSet& E, const DetailedBuildOptions& opts = {});

/// A detailed network bundled with everything it was built from.
struct DetailedNet {
  std::string name;
  Network network;
  MultiRepAssignment reps;
  DetailedParams params;
  FailurePattern F;
  std::optional<EdgeSet> E;
};

DetailedNet make_H(const ConceptHierarchy& h, const DetailedParams& params, const FailurePattern& F,
                   const DetailedBuildOptions& opts = {});
DetailedNet make_L(const ConceptHierarchy& h, const DetailedParams& params, const FailurePattern& F,
                   const EdgeSet& E, const DetailedBuildOptions& opts = {});

/// Fires exactly reps(B) \ F. Throws QueryError for non-level-0 concepts.
Presentation present_multi(const MultiRepAssignment& assign, const ConceptHierarchy& h, const ConceptSet& B,
                           const FailurePattern& F);
/// reps(B) minus the failed neurons of net, as a layer-0 mask for execute.
BitVector input_mask_multi(const MultiRepAssignment& assign, const ConceptHierarchy& h, const ConceptSet& B,
                           const Network& net);

struct ConceptFiring {
  ConceptId concept_id;
  int firing = 0;
  bool r2_supported = false;
  bool r1_supported = false;
};

struct MultiRecognitionReport {
  std::string network;
  ConceptSet B;
  /// m(1 - epsilon).
  Rational bound;
  std::vector<ConceptFiring> concepts;
  std::vector<Violation> violations;

  bool part1_pass() const;
  bool part2_pass() const;
  bool pass() const { return violations.empty(); }
};

/// Part 1: every c in supp_r2(B) has >= m(1-e) reps firing at level(c).
/// Part 2: every c outside supp_r1(B) has no rep firing at level(c).
MultiRecognitionReport check_recognition_multi(const ExecutionTrace& trace, const MultiRepAssignment& assign,
                                               const ConceptHierarchy& h, const ConceptSet& B,
                                               const DetailedParams& params);

/// Number of reps(c) firing at time level(c).
int count_firing(const ExecutionTrace& trace, const MultiRepAssignment& assign, ConceptId c);

}  // namespace hcr
