#pragma once

#include <string>
#include <vector>

#include "hcr/engine.hpp"
#include "hcr/hierarchy.hpp"

namespace hcr {

struct AbstractParams {
  Rational r1{0};
  Rational r2{0};

  /// 0 <= r1 <= r2 <= 1; throws ParameterError.
  void validate() const;
};

/// One representing neuron per concept, rep(c) at layer level(c).
class SingleRepAssignment {
 public:
  /// rep[l][i] is the neuron for concept (l, i). Throws ParameterError when
  /// two concepts share a neuron or a neuron sits on the wrong layer.
  explicit SingleRepAssignment(std::vector<std::vector<NeuronId>> rep);
  /// rep((l, i)) = neuron (l, i).
  static SingleRepAssignment canonical(const ConceptHierarchy& h);

  NeuronId rep(ConceptId c) const;
  int levels() const { return static_cast<int>(rep_.size()); }
  int level_size(int level) const { return static_cast<int>(rep_[static_cast<std::size_t>(level)].size()); }

 private:
  std::vector<std::vector<NeuronId>> rep_;
};

struct AbstractNet {
  std::string name;
  Network network;
  SingleRepAssignment assign;
};

/// Shared construction: weight 1 exactly on rep(child) -> rep(parent), no
/// failures, threshold tau.
AbstractNet build_abstract(const ConceptHierarchy& h, const Rational& tau, std::string name);
/// tau = r2 * k.
AbstractNet build_A1(const ConceptHierarchy& h, const AbstractParams& p);
/// tau = r1 * k.
AbstractNet build_A2(const ConceptHierarchy& h, const AbstractParams& p);

/// Fires exactly rep(b) for b in B. Throws QueryError for non-level-0 concepts.
Presentation present_single(const SingleRepAssignment& assign, const ConceptHierarchy& h, const ConceptSet& B);
/// present_single as a layer-0 mask of the given width.
BitVector input_mask_single(const SingleRepAssignment& assign, const ConceptHierarchy& h, const ConceptSet& B,
                            int width);

enum class ViolationKind { ShouldFire, ShouldNotFire };
const char* to_string(ViolationKind kind);

struct Violation {
  ConceptId concept_id;
  ViolationKind kind;
  auto operator<=>(const Violation&) const = default;
};

struct RecognitionReport {
  std::string network;
  ConceptSet B;
  std::vector<Violation> violations;

  bool pass() const { return violations.empty(); }
};

RecognitionReport check_firing_guarantee(const ExecutionTrace& trace, const SingleRepAssignment& assign,
                                         const ConceptHierarchy& h, const ConceptSet& B, const Rational& r2);
RecognitionReport check_non_firing_guarantee(const ExecutionTrace& trace, const SingleRepAssignment& assign,
                                             const ConceptHierarchy& h, const ConceptSet& B, const Rational& r1);
/// Both guarantees; throws ParameterError unless r1 <= r2.
RecognitionReport check_recognition_single(const ExecutionTrace& trace, const SingleRepAssignment& assign,
                                           const ConceptHierarchy& h, const ConceptSet& B, const Rational& r1,
                                           const Rational& r2);

}  // namespace hcr
