#include "hcr/detailed_nets.hpp"

#include <algorithm>

namespace hcr {

void DetailedParams::validate() const {
  if (m < 1) throw ParameterError("m must be >= 1, got " + std::to_string(m));
  if (epsilon < 0 || epsilon > 1) throw ParameterError("epsilon must lie in [0,1], got " + to_string(epsilon));
  if (a <= 0 || a > 1) throw ParameterError("a must lie in (0,1], got " + to_string(a));
  AbstractParams{r1, r2}.validate();
}

MultiRepAssignment::MultiRepAssignment(int m, std::vector<std::vector<std::vector<NeuronId>>> reps)
    : m_(m), reps_(std::move(reps)) {
  if (m_ < 1) throw ParameterError("m must be >= 1");
  NeuronSet seen;
  for (std::size_t l = 0; l < reps_.size(); ++l) {
    for (std::size_t i = 0; i < reps_[l].size(); ++i) {
      const auto& set = reps_[l][i];
      const auto name = std::to_string(l) + ":" + std::to_string(i);
      if (static_cast<int>(set.size()) != m_) {
        throw ParameterError("reps(" + name + ") has " + std::to_string(set.size()) + " neurons, expected " +
                             std::to_string(m_));
      }
      for (auto v : set) {
        if (v.layer != static_cast<int>(l)) {
          throw ParameterError("rep " + to_string(v) + " of " + name + " is not on layer " + std::to_string(l));
        }
        if (!seen.insert(v).second) throw ParameterError("neuron " + to_string(v) + " appears in two reps sets");
      }
    }
  }
}

MultiRepAssignment MultiRepAssignment::canonical(const ConceptHierarchy& h, int m) {
  if (m < 1) throw ParameterError("m must be >= 1, got " + std::to_string(m));
  std::vector<std::vector<std::vector<NeuronId>>> reps(static_cast<std::size_t>(h.l_max() + 1));
  for (int l = 0; l <= h.l_max(); ++l) {
    auto& level = reps[static_cast<std::size_t>(l)];
    for (int i = 0; i < h.level_size(l); ++i) {
      std::vector<NeuronId> set;
      for (int j = 0; j < m; ++j) set.push_back({l, i * m + j});
      level.push_back(std::move(set));
    }
  }
  return MultiRepAssignment(m, std::move(reps));
}

const std::vector<NeuronId>& MultiRepAssignment::reps(ConceptId c) const {
  if (c.level < 0 || c.level >= levels() || c.index < 0 || c.index >= level_size(c.level)) {
    throw LookupError("no reps for concept " + to_string(c));
  }
  return reps_[static_cast<std::size_t>(c.level)][static_cast<std::size_t>(c.index)];
}

std::vector<NeuronId> MultiRepAssignment::all_neurons() const {
  std::vector<NeuronId> out;
  for (const auto& level : reps_) {
    for (const auto& set : level) out.insert(out.end(), set.begin(), set.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int MultiRepAssignment::required_width(int layer) const {
  int width = 0;
  for (const auto& set : reps_[static_cast<std::size_t>(layer)]) {
    for (auto v : set) width = std::max(width, v.index + 1);
  }
  return width;
}

EdgeSet complete_edges(const ConceptHierarchy& h, const MultiRepAssignment& assign) {
  EdgeSet E;
  for (int l = 1; l <= h.l_max(); ++l) {
    for (auto c : h.concepts(l)) {
      for (auto child : h.children(c)) {
        for (auto v : assign.reps(c)) {
          for (auto u : assign.reps(child)) E.edges.insert({u, v});
        }
      }
    }
  }
  return E;
}

void validate_edge_set(const ConceptHierarchy& h, const MultiRepAssignment& assign, const EdgeSet& E) {
  const auto allowed = complete_edges(h, assign);
  for (const auto& e : E.edges) {
    if (!allowed.edges.count(e)) {
      throw ParameterError("edge " + to_string(e.from) + " -> " + to_string(e.to) +
                           " does not join a child rep to a parent rep");
    }
  }
}

FConstraintReport check_F_constraint(const MultiRepAssignment& assign, const FailurePattern& F, int m,
                                     const Rational& epsilon) {
  if (m != assign.m()) throw ContractError("m does not match the rep assignment");
  FConstraintReport report;
  report.bound = Rational(m) * (Rational(1) - epsilon);
  for (int l = 0; l < assign.levels(); ++l) {
    for (int i = 0; i < assign.level_size(l); ++i) {
      const ConceptId c{l, i};
      int surviving = 0;
      for (auto v : assign.reps(c)) surviving += F.failed.count(v) ? 0 : 1;
      if (!at_least(surviving, report.bound)) report.shortfalls.push_back({c, surviving});
    }
  }
  return report;
}

EConstraintReport check_E_constraint(const MultiRepAssignment& assign, const FailurePattern& F, const EdgeSet& E,
                                     const Rational& a, int m, const Rational& epsilon, const ConceptHierarchy& h) {
  if (m != assign.m()) throw ContractError("m does not match the rep assignment");
  EConstraintReport report;
  report.bound = a * m * (Rational(1) - epsilon);
  for (int l = 1; l <= h.l_max(); ++l) {
    for (auto c : h.concepts(l)) {
      for (auto v : assign.reps(c)) {
        for (auto child : h.children(c)) {
          int connected = 0;
          for (auto u : assign.reps(child)) {
            if (!F.failed.count(u) && E.contains(u, v)) ++connected;
          }
          if (!at_least(connected, report.bound)) report.shortfalls.push_back({v, c, child, connected});
        }
      }
    }
  }
  return report;
}

namespace {

void check_shapes(const ConceptHierarchy& h, const DetailedParams& params, const MultiRepAssignment& assign) {
  params.validate();
  if (assign.m() != params.m) throw ContractError("rep assignment m differs from params.m");
  if (assign.levels() != h.l_max() + 1) throw ContractError("rep assignment does not match hierarchy levels");
  for (int l = 0; l <= h.l_max(); ++l) {
    if (assign.level_size(l) != h.level_size(l)) {
      throw ContractError("rep assignment does not cover level " + std::to_string(l));
    }
  }
}

void enforce_f(const MultiRepAssignment& assign, const FailurePattern& F, const DetailedParams& params) {
  const auto report = check_F_constraint(assign, F, params.m, params.epsilon);
  if (!report.pass()) {
    const auto& s = report.shortfalls.front();
    throw ConstraintViolation("F constraint violated: concept " + to_string(s.concept_id) + " keeps " +
                              std::to_string(s.surviving) + " surviving reps, needs at least " +
                              to_string(report.bound));
  }
}

Rational pick_tau(const DetailedBuildOptions& opts, Rational preferred, std::pair<Rational, Rational> range,
                  const char* which) {
  if (!opts.tau) return preferred;
  if (*opts.tau < range.first || *opts.tau > range.second) {
    throw ParameterError(std::string(which) + " threshold override " + to_string(*opts.tau) + " outside [" +
                         to_string(range.first) + ", " + to_string(range.second) + "]");
  }
  return *opts.tau;
}

NetworkBuilder make_builder(const ConceptHierarchy& h, const MultiRepAssignment& assign, const Rational& tau,
                            const FailurePattern& F, int padding) {
  if (padding < 0) throw ParameterError("padding must be non-negative");
  NetworkConfig cfg;
  cfg.l_prime_max = h.l_max();
  cfg.tau = tau;
  for (int l = 0; l <= h.l_max(); ++l) cfg.widths.push_back(assign.required_width(l) + padding);
  NetworkBuilder builder(std::move(cfg));
  for (auto v : F.failed) {
    if (!builder.peek().contains(v)) throw ParameterError("failed neuron " + to_string(v) + " is not in the network");
    builder.fail(v);
  }
  return builder;
}

}  // namespace

Network build_H(const ConceptHierarchy& h, const DetailedParams& params, const MultiRepAssignment& assign,
                const FailurePattern& F, const DetailedBuildOptions& opts) {
  check_shapes(h, params, assign);
  if (opts.enforce_gap && !params.h_gap_holds()) {
    throw ParameterError("H needs r1 <= r2 (1 - epsilon); got r1 = " + to_string(params.r1) +
                         ", r2 (1 - epsilon) = " + to_string(params.r2 * (Rational(1) - params.epsilon)));
  }
  if (opts.enforce_constraints) enforce_f(assign, F, params);
  const auto tau = pick_tau(opts, params.h_tau(h.k()), params.h_tau_range(h.k()), "H");
  auto builder = make_builder(h, assign, tau, F, opts.padding);
  for (int l = 1; l <= h.l_max(); ++l) {
    for (auto c : h.concepts(l)) {
      for (auto child : h.children(c)) {
        for (auto v : assign.reps(c)) {
          for (auto u : assign.reps(child)) builder.connect(u, v);
        }
      }
    }
  }
  return std::move(builder).build();
}

Network build_L(const ConceptHierarchy& h, const DetailedParams& params, const MultiRepAssignment& assign,
                const FailurePattern& F, const EdgeSet& E, const DetailedBuildOptions& opts) {
  check_shapes(h, params, assign);
  if (opts.enforce_gap && !params.l_gap_holds()) {
    throw ParameterError("L needs r1 <= a r2 (1 - epsilon); got r1 = " + to_string(params.r1) +
                         ", a r2 (1 - epsilon) = " +
                         to_string(params.a * params.r2 * (Rational(1) - params.epsilon)));
  }
  validate_edge_set(h, assign, E);
  if (opts.enforce_constraints) {
    enforce_f(assign, F, params);
    const auto report = check_E_constraint(assign, F, E, params.a, params.m, params.epsilon, h);
    if (!report.pass()) {
      const auto& s = report.shortfalls.front();
      throw ConstraintViolation("E constraint violated: rep " + to_string(s.parent_rep) + " of concept " +
                                to_string(s.parent) + " has " + std::to_string(s.connected_survivors) +
                                " surviving connected reps of child " + to_string(s.child) + ", needs at least " +
                                to_string(report.bound));
    }
  }
  const auto tau = pick_tau(opts, params.l_tau(h.k()), params.l_tau_range(h.k()), "L");
  auto builder = make_builder(h, assign, tau, F, opts.padding);
  for (const auto& e : E.edges) builder.connect(e.from, e.to);
  return std::move(builder).build();
}

DetailedNet make_H(const ConceptHierarchy& h, const DetailedParams& params, const FailurePattern& F,
                   const DetailedBuildOptions& opts) {
  auto assign = MultiRepAssignment::canonical(h, params.m);
  auto net = build_H(h, params, assign, F, opts);
  return DetailedNet{"H", std::move(net), std::move(assign), params, F, std::nullopt};
}

DetailedNet make_L(const ConceptHierarchy& h, const DetailedParams& params, const FailurePattern& F,
                   const EdgeSet& E, const DetailedBuildOptions& opts) {
  auto assign = MultiRepAssignment::canonical(h, params.m);
  auto net = build_L(h, params, assign, F, E, opts);
  return DetailedNet{"L", std::move(net), std::move(assign), params, F, E};
}

Presentation present_multi(const MultiRepAssignment& assign, const ConceptHierarchy& h, const ConceptSet& B,
                           const FailurePattern& F) {
  Presentation p;
  for (auto b : B) {
    if (b.level != 0) throw QueryError("concept " + to_string(b) + " in B is not at level 0");
    if (!h.contains(b)) throw QueryError("concept " + to_string(b) + " in B is not in C_0");
    for (auto u : assign.reps(b)) {
      if (!F.failed.count(u)) p.fire_at_zero.insert(p.fire_at_zero.end(), u);
    }
  }
  return p;
}

BitVector input_mask_multi(const MultiRepAssignment& assign, const ConceptHierarchy& h, const ConceptSet& B,
                           const Network& net) {
  const auto width = static_cast<std::size_t>(net.width(0));
  BitVector mask(width);
  for (auto b : B) {
    if (b.level != 0) throw QueryError("concept " + to_string(b) + " in B is not at level 0");
    if (!h.contains(b)) throw QueryError("concept " + to_string(b) + " in B is not in C_0");
    for (auto u : assign.reps(b)) {
      if (static_cast<std::size_t>(u.index) >= width) throw ContractError("rep " + to_string(u) + " is outside layer 0");
      mask.set(static_cast<std::size_t>(u.index));
    }
  }
  mask.clear_bits(net.failed_mask(0));
  return mask;
}

int count_firing(const ExecutionTrace& trace, const MultiRepAssignment& assign, ConceptId c) {
  const auto t = static_cast<std::size_t>(c.level);
  if (t >= trace.time_count() || t >= trace.at(c.level).size()) return 0;
  const auto& layer = trace.at(c.level)[t];
  int n = 0;
  for (auto v : assign.reps(c)) {
    const auto i = static_cast<std::size_t>(v.index);
    n += i < layer.size() && layer.test(i) ? 1 : 0;
  }
  return n;
}

bool MultiRecognitionReport::part1_pass() const {
  return std::none_of(violations.begin(), violations.end(),
                      [](const Violation& v) { return v.kind == ViolationKind::ShouldFire; });
}

bool MultiRecognitionReport::part2_pass() const {
  return std::none_of(violations.begin(), violations.end(),
                      [](const Violation& v) { return v.kind == ViolationKind::ShouldNotFire; });
}

MultiRecognitionReport check_recognition_multi(const ExecutionTrace& trace, const MultiRepAssignment& assign,
                                               const ConceptHierarchy& h, const ConceptSet& B,
                                               const DetailedParams& params) {
  MultiRecognitionReport report;
  report.B = B;
  report.bound = params.survival_bound();
  const auto mask = leaf_mask(h, B);
  const auto supp2 = support_levels(h, mask, params.r2);
  const auto supp1 = support_levels(h, mask, params.r1);
  for (int l = 0; l <= h.l_max(); ++l) {
    for (int i = 0; i < h.level_size(l); ++i) {
      const ConceptId c{l, i};
      ConceptFiring cf{c, count_firing(trace, assign, c), supp2[static_cast<std::size_t>(l)].test(static_cast<std::size_t>(i)),
                       supp1[static_cast<std::size_t>(l)].test(static_cast<std::size_t>(i))};
      if (cf.r2_supported && !at_least(cf.firing, report.bound)) {
        report.violations.push_back({c, ViolationKind::ShouldFire});
      }
      if (!cf.r1_supported && cf.firing > 0) report.violations.push_back({c, ViolationKind::ShouldNotFire});
      report.concepts.push_back(cf);
    }
  }
  return report;
}

}  // namespace hcr
