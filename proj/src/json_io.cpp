#include "hcr/json_io.hpp"

#include <cstdio>

#include "hcr/rng.hpp"

namespace hcr::json_io {
namespace {

template <typename F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

json neuron_list(const NeuronSet& s) {
  json out = json::array();
  for (auto v : s) out.push_back(to_string(v));
  return out;
}

json edge_pair(const Edge& e) {
  return json::array({to_string(e.from), to_string(e.to)});
}

Edge edge_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParameterError("edge must be a [from, to] pair");
  return {parse_neuron_id(j.at(0).get<std::string>()), parse_neuron_id(j.at(1).get<std::string>())};
}

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

json rational_json(const Rational& r) {
  return json{{"exact", to_string(r)}, {"decimal", decimal(to_double(r))}};
}

json counterexample_json(const Counterexample& c) {
  return json{{"B", to_json(c.B)},
              {"concept", to_string(c.concept_id)},
              {"detail", c.detail},
              {"detailed_trace", to_json(c.detailed_trace)},
              {"abstract_trace", to_json(c.abstract_trace)}};
}

}  // namespace

std::string dump(const json& j) {
  return j.dump(2) + "\n";
}

json to_json(const ConceptSet& B) {
  json out = json::array();
  for (auto c : B) out.push_back(to_string(c));
  return out;
}

ConceptSet concept_set_from_json(const json& j) {
  return parsing("concept set", [&] {
    ConceptSet out;
    for (const auto& e : j) out.insert(parse_concept_id(e.get<std::string>()));
    return out;
  });
}

json to_json(const ConceptHierarchy& h) {
  json levels = json::array();
  for (int l = 0; l <= h.l_max(); ++l) {
    json level = json::array();
    for (auto c : h.concepts(l)) level.push_back(to_string(c));
    levels.push_back(std::move(level));
  }
  json children = json::object();
  for (const auto& [parent, kids] : h.children_map()) {
    json list = json::array();
    for (auto c : kids) list.push_back(to_string(c));
    children[to_string(parent)] = std::move(list);
  }
  return json{{"l_max", h.l_max()},
              {"k", h.k()},
              {"n", h.params().universe_size()},
              {"levels", std::move(levels)},
              {"children", std::move(children)}};
}

ConceptHierarchy hierarchy_from_json(const json& j) {
  return parsing("hierarchy", [&] {
    HierarchyParams params;
    params.l_max = j.at("l_max").get<int>();
    params.k = j.at("k").get<int>();
    params.n = j.contains("n") ? j.at("n").get<std::int64_t>() : 0;
    const auto& levels = j.at("levels");
    std::vector<int> sizes;
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const auto& level = levels.at(l);
      for (std::size_t i = 0; i < level.size(); ++i) {
        const auto c = parse_concept_id(level.at(i).get<std::string>());
        if (c.level != static_cast<int>(l) || c.index != static_cast<int>(i)) {
          throw ParameterError("level " + std::to_string(l) + " must list concepts in order, found " + to_string(c));
        }
      }
      sizes.push_back(static_cast<int>(level.size()));
    }
    std::map<ConceptId, std::vector<ConceptId>> children;
    for (const auto& [key, list] : j.at("children").items()) {
      auto& kids = children[parse_concept_id(key)];
      for (const auto& c : list) kids.push_back(parse_concept_id(c.get<std::string>()));
    }
    return ConceptHierarchy(params, std::move(sizes), std::move(children));
  });
}

json to_json(const Network& net) {
  json edges = json::array();
  for (const auto& e : net.edges()) edges.push_back(edge_pair(e));
  return json{{"l_prime_max", net.l_prime_max()},
              {"widths", net.config().widths},
              {"tau", to_string(net.tau())},
              {"edges", std::move(edges)},
              {"failed", neuron_list(net.failed())}};
}

Network network_from_json(const json& j) {
  return parsing("network", [&] {
    NetworkConfig cfg;
    cfg.l_prime_max = j.at("l_prime_max").get<int>();
    cfg.widths = j.at("widths").get<std::vector<int>>();
    cfg.tau = parse_rational(j.at("tau").get<std::string>());
    NetworkBuilder builder(std::move(cfg));
    for (const auto& e : j.at("edges")) {
      const auto edge = edge_from(e);
      builder.connect(edge.from, edge.to);
    }
    for (const auto& v : j.at("failed")) builder.fail(parse_neuron_id(v.get<std::string>()));
    return std::move(builder).build();
  });
}

json to_json(const ExecutionTrace& trace) {
  json times = json::array();
  for (std::size_t t = 0; t < trace.time_count(); ++t) {
    json firing = json::array();
    for (auto v : trace.firing_at(static_cast<int>(t))) firing.push_back(to_string(v));
    times.push_back(std::move(firing));
  }
  return json{{"times", std::move(times)}};
}

json to_json(const FailurePattern& F) {
  return json{{"failed", neuron_list(F.failed)}};
}

FailurePattern failures_from_json(const json& j) {
  return parsing("failure pattern", [&] {
    FailurePattern F;
    for (const auto& v : j.at("failed")) F.failed.insert(parse_neuron_id(v.get<std::string>()));
    return F;
  });
}

json to_json(const EdgeSet& E) {
  json edges = json::array();
  for (const auto& e : E.edges) edges.push_back(edge_pair(e));
  return json{{"edges", std::move(edges)}};
}

EdgeSet edges_from_json(const json& j) {
  return parsing("edge set", [&] {
    EdgeSet E;
    for (const auto& e : j.at("edges")) E.edges.insert(edge_from(e));
    return E;
  });
}

json to_json(const DetailedParams& p) {
  return json{{"m", p.m},
              {"epsilon", to_string(p.epsilon)},
              {"a", to_string(p.a)},
              {"r1", to_string(p.r1)},
              {"r2", to_string(p.r2)}};
}

json to_json(const FConstraintReport& r) {
  json shortfalls = json::array();
  for (const auto& s : r.shortfalls) {
    shortfalls.push_back({{"concept", to_string(s.concept_id)}, {"surviving", s.surviving}});
  }
  return json{{"constraint", "F"}, {"bound", to_string(r.bound)}, {"shortfalls", std::move(shortfalls)},
              {"pass", r.pass()}};
}

json to_json(const EConstraintReport& r) {
  json shortfalls = json::array();
  for (const auto& s : r.shortfalls) {
    shortfalls.push_back({{"parent_rep", to_string(s.parent_rep)},
                          {"parent", to_string(s.parent)},
                          {"child", to_string(s.child)},
                          {"connected_survivors", s.connected_survivors}});
  }
  return json{{"constraint", "E"}, {"bound", to_string(r.bound)}, {"shortfalls", std::move(shortfalls)},
              {"pass", r.pass()}};
}

json to_json(const RecognitionReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"concept", to_string(v.concept_id)}, {"kind", to_string(v.kind)}});
  }
  return json{{"network", r.network}, {"B", to_json(r.B)}, {"violations", std::move(violations)}, {"pass", r.pass()}};
}

json to_json(const MultiRecognitionReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"concept", to_string(v.concept_id)}, {"kind", to_string(v.kind)}});
  }
  json concepts = json::array();
  for (const auto& c : r.concepts) {
    concepts.push_back({{"concept", to_string(c.concept_id)},
                        {"firing", c.firing},
                        {"r2_supported", c.r2_supported},
                        {"r1_supported", c.r1_supported}});
  }
  return json{{"network", r.network},
              {"B", to_json(r.B)},
              {"bound", to_string(r.bound)},
              {"concepts", std::move(concepts)},
              {"violations", std::move(violations)},
              {"part1_pass", r.part1_pass()},
              {"part2_pass", r.part2_pass()},
              {"pass", r.pass()}};
}

json to_json(const RefinementVerdict& v, const std::string& fingerprint) {
  json cex = json::array();
  for (const auto& c : v.counterexamples) cex.push_back(counterexample_json(c));
  return json{{"relation", to_string(v.relation)},
              {"fingerprint", fingerprint},
              {"pass", v.pass()},
              {"inputs_checked", v.inputs_checked},
              {"violation_count", v.violation_count},
              {"counterexamples", std::move(cex)}};
}

json to_json(const PipelineReport& r, const std::string& fingerprint) {
  json direct = json::array();
  for (const auto& d : r.failing_direct) direct.push_back(to_json(d));
  return json{{"network", r.network},
              {"fingerprint", fingerprint},
              {"inputs_checked", r.inputs_checked},
              {"impl1", to_json(r.impl1, fingerprint)},
              {"impl2", to_json(r.impl2, fingerprint)},
              {"strong_impl1", to_json(r.strong_impl1, fingerprint)},
              {"a1_firing_failures", r.a1_firing_failures},
              {"a2_non_firing_failures", r.a2_non_firing_failures},
              {"part1_failures", r.part1_failures},
              {"part2_failures", r.part2_failures},
              {"inconsistent_inputs", r.inconsistent_inputs},
              {"failing_direct", std::move(direct)},
              {"consistent", r.consistent()},
              {"pass", r.all_pass()}};
}

json to_json(const ExperimentStats& s) {
  json out{{"prng", std::string(SplitMix64::kName)},
           {"seed", s.params.seed},
           {"trials", s.params.trials},
           {"q", to_string(s.params.q)},
           {"p", to_string(s.params.p())},
           {"zeta", to_string(s.params.zeta)},
           {"alpha", to_string(s.params.alpha)},
           {"m", s.m},
           {"a", to_string(s.a)},
           {"epsilon", rational_json(s.epsilon)},
           {"constraints", s.which == ConstraintSet::FOnly ? "F" : "F+E"},
           {"concept_count", s.concept_count},
           {"f_pass", s.f_pass},
           {"all_pass", s.all_pass},
           {"pass_fraction", rational_json(s.pass_fraction())},
           {"violation_fraction", rational_json(s.violation_fraction())},
           {"violation_standard_error", decimal(s.violation_standard_error())},
           {"reference_bound",
            {{"label", "reference only: multiplicative Chernoff lower tail exp(-zeta^2 p m / 2)"},
             {"per_concept", decimal(s.per_concept_bound())},
             {"union_over_concepts", decimal(s.union_bound())}}}};
  if (s.which == ConstraintSet::FAndE) out["e_pass"] = s.e_pass;
  if (!s.trial_pass.empty()) {
    std::string bits;
    bits.reserve(s.trial_pass.size());
    for (bool b : s.trial_pass) bits.push_back(b ? '1' : '0');
    out["trial_pass_bits"] = bits;
  }
  return out;
}

std::string instance_fingerprint(const ConceptHierarchy& h, const DetailedParams& params, const FailurePattern& F,
                                 const EdgeSet* E) {
  json doc{{"hierarchy", to_json(h)}, {"params", to_json(params)}, {"F", to_json(F)}};
  if (E) doc["E"] = to_json(*E);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : doc.dump()) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace hcr::json_io
