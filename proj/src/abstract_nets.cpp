#include "hcr/abstract_nets.hpp"

#include <algorithm>

namespace hcr {

void AbstractParams::validate() const {
  if (r1 < 0 || r1 > 1) throw ParameterError("r1 must lie in [0,1], got " + to_string(r1));
  if (r2 < 0 || r2 > 1) throw ParameterError("r2 must lie in [0,1], got " + to_string(r2));
  if (r1 > r2) throw ParameterError("need r1 <= r2, got r1 = " + to_string(r1) + ", r2 = " + to_string(r2));
}

SingleRepAssignment::SingleRepAssignment(std::vector<std::vector<NeuronId>> rep) : rep_(std::move(rep)) {
  NeuronSet seen;
  for (std::size_t l = 0; l < rep_.size(); ++l) {
    for (std::size_t i = 0; i < rep_[l].size(); ++i) {
      const auto v = rep_[l][i];
      if (v.layer != static_cast<int>(l)) {
        throw ParameterError("rep(" + std::to_string(l) + ":" + std::to_string(i) + ") = " + to_string(v) +
                             " is not on layer " + std::to_string(l));
      }
      if (!seen.insert(v).second) throw ParameterError("neuron " + to_string(v) + " represents two concepts");
    }
  }
}

SingleRepAssignment SingleRepAssignment::canonical(const ConceptHierarchy& h) {
  std::vector<std::vector<NeuronId>> rep(static_cast<std::size_t>(h.l_max() + 1));
  for (int l = 0; l <= h.l_max(); ++l) {
    for (int i = 0; i < h.level_size(l); ++i) rep[static_cast<std::size_t>(l)].push_back({l, i});
  }
  return SingleRepAssignment(std::move(rep));
}

NeuronId SingleRepAssignment::rep(ConceptId c) const {
  if (c.level < 0 || c.level >= levels() || c.index < 0 || c.index >= level_size(c.level)) {
    throw LookupError("no rep for concept " + to_string(c));
  }
  return rep_[static_cast<std::size_t>(c.level)][static_cast<std::size_t>(c.index)];
}

AbstractNet build_abstract(const ConceptHierarchy& h, const Rational& tau, std::string name) {
  auto assign = SingleRepAssignment::canonical(h);
  NetworkConfig cfg;
  cfg.l_prime_max = h.l_max();
  cfg.tau = tau;
  for (int l = 0; l <= h.l_max(); ++l) cfg.widths.push_back(h.level_size(l));
  NetworkBuilder builder(std::move(cfg));
  for (int l = 1; l <= h.l_max(); ++l) {
    for (auto c : h.concepts(l)) {
      for (auto child : h.children(c)) builder.connect(assign.rep(child), assign.rep(c));
    }
  }
  return AbstractNet{std::move(name), std::move(builder).build(), std::move(assign)};
}

AbstractNet build_A1(const ConceptHierarchy& h, const AbstractParams& p) {
  p.validate();
  return build_abstract(h, p.r2 * h.k(), "A1");
}

AbstractNet build_A2(const ConceptHierarchy& h, const AbstractParams& p) {
  p.validate();
  return build_abstract(h, p.r1 * h.k(), "A2");
}

Presentation present_single(const SingleRepAssignment& assign, const ConceptHierarchy& h, const ConceptSet& B) {
  Presentation p;
  for (auto b : B) {
    if (b.level != 0) throw QueryError("concept " + to_string(b) + " in B is not at level 0");
    if (!h.contains(b)) throw QueryError("concept " + to_string(b) + " in B is not in C_0");
    p.fire_at_zero.insert(assign.rep(b));
  }
  return p;
}

BitVector input_mask_single(const SingleRepAssignment& assign, const ConceptHierarchy& h, const ConceptSet& B,
                            int width) {
  BitVector mask(static_cast<std::size_t>(width));
  for (auto b : B) {
    if (b.level != 0) throw QueryError("concept " + to_string(b) + " in B is not at level 0");
    if (!h.contains(b)) throw QueryError("concept " + to_string(b) + " in B is not in C_0");
    const auto u = assign.rep(b);
    if (u.index >= width) throw ContractError("rep " + to_string(u) + " is outside layer 0");
    mask.set(static_cast<std::size_t>(u.index));
  }
  return mask;
}

const char* to_string(ViolationKind kind) {
  return kind == ViolationKind::ShouldFire ? "should_fire" : "should_not_fire";
}

namespace {

void collect_firing(const ExecutionTrace& trace, const SingleRepAssignment& assign, const ConceptHierarchy& h,
                    const SupportLevels& supp, RecognitionReport& report) {
  for (int l = 0; l <= h.l_max(); ++l) {
    for (auto i : supp[static_cast<std::size_t>(l)].set_bits()) {
      const ConceptId c{l, static_cast<int>(i)};
      const auto v = assign.rep(c);
      if (!trace.fires(v.layer, v)) report.violations.push_back({c, ViolationKind::ShouldFire});
    }
  }
}

void collect_non_firing(const ExecutionTrace& trace, const SingleRepAssignment& assign, const ConceptHierarchy& h,
                        const SupportLevels& supp, RecognitionReport& report) {
  for (int l = 0; l <= h.l_max(); ++l) {
    for (int i = 0; i < h.level_size(l); ++i) {
      if (supp[static_cast<std::size_t>(l)].test(static_cast<std::size_t>(i))) continue;
      const ConceptId c{l, i};
      const auto v = assign.rep(c);
      if (trace.fires(v.layer, v)) report.violations.push_back({c, ViolationKind::ShouldNotFire});
    }
  }
}

}  // namespace

RecognitionReport check_firing_guarantee(const ExecutionTrace& trace, const SingleRepAssignment& assign,
                                         const ConceptHierarchy& h, const ConceptSet& B, const Rational& r2) {
  RecognitionReport report{"", B, {}};
  collect_firing(trace, assign, h, support_levels(h, leaf_mask(h, B), r2), report);
  return report;
}

RecognitionReport check_non_firing_guarantee(const ExecutionTrace& trace, const SingleRepAssignment& assign,
                                             const ConceptHierarchy& h, const ConceptSet& B, const Rational& r1) {
  RecognitionReport report{"", B, {}};
  collect_non_firing(trace, assign, h, support_levels(h, leaf_mask(h, B), r1), report);
  return report;
}

RecognitionReport check_recognition_single(const ExecutionTrace& trace, const SingleRepAssignment& assign,
                                           const ConceptHierarchy& h, const ConceptSet& B, const Rational& r1,
                                           const Rational& r2) {
  AbstractParams{r1, r2}.validate();
  RecognitionReport report{"", B, {}};
  const auto mask = leaf_mask(h, B);
  collect_firing(trace, assign, h, support_levels(h, mask, r2), report);
  collect_non_firing(trace, assign, h, support_levels(h, mask, r1), report);
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

}  // namespace hcr
