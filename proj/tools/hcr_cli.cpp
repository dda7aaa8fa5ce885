// hcr: command-line driver for the hierarchical-concept recognition
// simulator and refinement checker.
//
// Exit codes: 0 success, 1 theorem/property failure, 2 parameter error,
// 3 constraint-precondition failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcr/abstract_nets.hpp"
#include "hcr/detailed_nets.hpp"
#include "hcr/hierarchy.hpp"
#include "hcr/json_io.hpp"
#include "hcr/refinement.hpp"
#include "hcr/rng.hpp"
#include "hcr/sampler.hpp"

namespace {

using namespace hcr;
using json_io::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParameter = 2;
constexpr int kExitConstraint = 3;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  int exhaustive_cap = 8;
};

struct HierarchyOptions {
  std::string file;
  int k = 2;
  int l_max = 2;
};

struct NetworkOptions {
  std::string network = "A1";
  std::string r1 = "1/2";
  std::string r2 = "1";
  int m = 3;
  std::string epsilon = "1/5";
  std::string a = "1";
  std::string tau;
  std::string failures_file;
  std::string q;
  std::string edges_file;
  std::string alpha;
  bool allow_gap_violation = false;
};

struct InputOptions {
  std::vector<std::string> inputs;
  bool explicit_given = false;
  bool exhaustive = false;
  int sampled = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParameterError("cannot parse " + path + ": " + e.what());
  }
}

/// Writes once, via a temporary file renamed into place. Empty path = stdout.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParameterError("cannot write " + path);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

ConceptHierarchy load_hierarchy(const HierarchyOptions& o) {
  if (!o.file.empty()) return json_io::hierarchy_from_json(read_json(o.file));
  return build_uniform_hierarchy({o.l_max, o.k, 0});
}

void add_hierarchy_options(CLI::App* cmd, HierarchyOptions& o) {
  cmd->add_option("--hierarchy", o.file, "Hierarchy JSON file (overrides --k/--l-max)");
  cmd->add_option("--k", o.k, "Branching factor and number of roots");
  cmd->add_option("--l-max", o.l_max, "Maximum concept level");
}

void add_network_options(CLI::App* cmd, NetworkOptions& o, bool with_network_choice) {
  if (with_network_choice) cmd->add_option("--network", o.network, "A1 | A2 | H | L");
  cmd->add_option("--r1", o.r1, "Non-firing support ratio r1");
  cmd->add_option("--r2", o.r2, "Firing support ratio r2");
  cmd->add_option("--m", o.m, "Reps per concept (H, L)");
  cmd->add_option("--epsilon", o.epsilon, "Recognition approximation (H, L)");
  cmd->add_option("--a", o.a, "Connectivity coefficient (L)");
  cmd->add_option("--tau", o.tau, "Threshold override within the admissible range (H, L)");
  cmd->add_option("--failures", o.failures_file, "Failure pattern JSON file");
  cmd->add_option("--q", o.q, "Sample failures iid with this probability (uses --seed)");
  cmd->add_option("--edges", o.edges_file, "Edge set JSON file (L)");
  cmd->add_option("--alpha", o.alpha, "Sample L edges iid with this probability (uses --seed)");
  cmd->add_flag("--allow-gap-violation", o.allow_gap_violation,
                "Build H/L even when r1 exceeds the gap bound (fault injection)");
}

void add_input_options(CLI::App* cmd, InputOptions& o) {
  auto* list = cmd->add_option("--inputs", o.inputs, "Explicit input set, e.g. --inputs 0:0 0:3 (none = empty set)")
                   ->expected(0, -1);
  auto* ex = cmd->add_flag("--exhaustive", o.exhaustive, "Enumerate every subset of C_0");
  auto* sa = cmd->add_option("--sampled", o.sampled, "Check this many seeded random input sets (plus empty and C_0)");
  list->excludes(ex)->excludes(sa);
  ex->excludes(sa);
  cmd->callback([&o, list] { o.explicit_given = list->count() > 0; });
}

InputEnumeration resolve_inputs(const ConceptHierarchy& h, const InputOptions& o, const Globals& g) {
  if (o.explicit_given) {
    ConceptSet B;
    for (const auto& s : o.inputs) {
      if (!s.empty()) B.insert(parse_concept_id(s));
    }
    auto en = InputEnumeration::listed({B});
    en.exhaustive_cap = g.exhaustive_cap;
    return en;
  }
  if (o.exhaustive) return InputEnumeration::exhaustive(g.exhaustive_cap);
  if (o.sampled > 0) {
    auto en = InputEnumeration::sampled(o.sampled, g.seed);
    en.exhaustive_cap = g.exhaustive_cap;
    return en;
  }
  return InputEnumeration::automatic(h, g.exhaustive_cap, 256, g.seed);
}

DetailedParams detailed_params(const NetworkOptions& o) {
  DetailedParams p;
  p.m = o.m;
  p.epsilon = parse_rational(o.epsilon);
  p.a = parse_rational(o.a);
  p.r1 = parse_rational(o.r1);
  p.r2 = parse_rational(o.r2);
  p.validate();
  return p;
}

DetailedBuildOptions build_options(const NetworkOptions& o) {
  DetailedBuildOptions opts;
  if (!o.tau.empty()) opts.tau = parse_rational(o.tau);
  opts.enforce_gap = !o.allow_gap_violation;
  return opts;
}

FailurePattern resolve_failures(const ConceptHierarchy& h, const NetworkOptions& o, const Globals& g) {
  if (!o.failures_file.empty() && !o.q.empty()) throw ParameterError("use either --failures or --q, not both");
  if (!o.failures_file.empty()) return json_io::failures_from_json(read_json(o.failures_file));
  if (!o.q.empty()) {
    const auto assign = MultiRepAssignment::canonical(h, o.m);
    const auto neurons = assign.all_neurons();
    return sample_failures(neurons, parse_rational(o.q), derive_stream(g.seed, 0));
  }
  return {};
}

EdgeSet resolve_edges(const ConceptHierarchy& h, const MultiRepAssignment& assign, const NetworkOptions& o,
                      const Globals& g) {
  if (!o.edges_file.empty() && !o.alpha.empty()) throw ParameterError("use either --edges or --alpha, not both");
  if (!o.edges_file.empty()) return json_io::edges_from_json(read_json(o.edges_file));
  if (!o.alpha.empty()) return sample_connectivity(assign, h, parse_rational(o.alpha), derive_stream(g.seed, 1));
  return complete_edges(h, assign);
}

DetailedNet build_detailed(const std::string& which, const ConceptHierarchy& h, const NetworkOptions& o,
                           const Globals& g) {
  const auto params = detailed_params(o);
  const auto F = resolve_failures(h, o, g);
  if (which == "H") return make_H(h, params, F, build_options(o));
  if (which == "L") {
    const auto assign = MultiRepAssignment::canonical(h, params.m);
    return make_L(h, params, F, resolve_edges(h, assign, o, g), build_options(o));
  }
  throw ParameterError("detailed network must be H or L, got '" + which + "'");
}

std::string fingerprint_of(const DetailedNet& d, const ConceptHierarchy& h) {
  return json_io::instance_fingerprint(h, d.params, d.F, d.E ? &*d.E : nullptr);
}

// ---- subcommands ----------------------------------------------------------

int cmd_gen_hierarchy(const HierarchyOptions& o, const Globals& g) {
  HierarchyParams params{o.l_max, o.k, 0};
  const auto h = build_uniform_hierarchy(params);
  write_output(g.out, json_io::dump(json_io::to_json(h)));
  std::cerr << "gen-hierarchy: " << h.concept_count() << " concepts, |C_0| = " << h.level_size(0) << "\n";
  return kExitOk;
}

int cmd_run(const HierarchyOptions& ho, const NetworkOptions& no, const InputOptions& io, const Globals& g) {
  const auto h = load_hierarchy(ho);
  const auto inputs = enumerate_inputs(h, resolve_inputs(h, io, g));
  json runs = json::array();
  std::size_t failing = 0;
  json network_json;

  if (no.network == "A1" || no.network == "A2") {
    const AbstractParams p{parse_rational(no.r1), parse_rational(no.r2)};
    const auto net = no.network == "A1" ? build_A1(h, p) : build_A2(h, p);
    network_json = json_io::to_json(net.network);
    for (const auto& B : inputs) {
      const auto trace = execute(net.network, present_single(net.assign, h, B));
      auto report = check_recognition_single(trace, net.assign, h, B, p.r1, p.r2);
      report.network = net.name;
      failing += report.pass() ? 0 : 1;
      runs.push_back({{"B", json_io::to_json(B)}, {"trace", json_io::to_json(trace)}, {"report", json_io::to_json(report)}});
    }
  } else {
    const auto d = build_detailed(no.network, h, no, g);
    network_json = json_io::to_json(d.network);
    for (const auto& B : inputs) {
      const auto trace = execute(d.network, present_multi(d.reps, h, B, d.F));
      auto report = check_recognition_multi(trace, d.reps, h, B, d.params);
      report.network = d.name;
      failing += report.pass() ? 0 : 1;
      runs.push_back({{"B", json_io::to_json(B)}, {"trace", json_io::to_json(trace)}, {"report", json_io::to_json(report)}});
    }
  }
  json doc{{"network", no.network}, {"definition", std::move(network_json)}, {"runs", std::move(runs)},
           {"pass", failing == 0}};
  write_output(g.out, json_io::dump(doc));
  std::cerr << "run: " << no.network << ", " << inputs.size() << " input sets, " << failing << " failing reports\n";
  return failing == 0 ? kExitOk : kExitFailure;
}

json abstract_suite(const ConceptHierarchy& h, const AbstractParams& p, const std::vector<ConceptSet>& inputs,
                    bool& pass) {
  const auto a1 = build_A1(h, p);
  const auto a2 = build_A2(h, p);
  std::size_t a1_firing = 0, a1_recognition = 0, a2_non_firing = 0, a2_recognition = 0;
  json failing = json::array();
  for (const auto& B : inputs) {
    const auto t1 = execute(a1.network, present_single(a1.assign, h, B));
    const auto t2 = execute(a2.network, present_single(a2.assign, h, B));
    auto f1 = check_firing_guarantee(t1, a1.assign, h, B, p.r2);
    auto r1 = check_recognition_single(t1, a1.assign, h, B, p.r1, p.r2);
    auto f2 = check_non_firing_guarantee(t2, a2.assign, h, B, p.r1);
    auto r2 = check_recognition_single(t2, a2.assign, h, B, p.r1, p.r2);
    f1.network = r1.network = "A1";
    f2.network = r2.network = "A2";
    a1_firing += f1.pass() ? 0 : 1;
    a1_recognition += r1.pass() ? 0 : 1;
    a2_non_firing += f2.pass() ? 0 : 1;
    a2_recognition += r2.pass() ? 0 : 1;
    for (const auto* r : {&r1, &r2}) {
      if (!r->pass() && failing.size() < 16) failing.push_back(json_io::to_json(*r));
    }
  }
  pass = a1_firing + a1_recognition + a2_non_firing + a2_recognition == 0;
  return json{{"r1", to_string(p.r1)},
              {"r2", to_string(p.r2)},
              {"inputs_checked", inputs.size()},
              {"A1", {{"firing_guarantee_failures", a1_firing}, {"recognition_failures", a1_recognition}}},
              {"A2", {{"non_firing_guarantee_failures", a2_non_firing}, {"recognition_failures", a2_recognition}}},
              {"failing_reports", std::move(failing)},
              {"pass", pass}};
}

int cmd_check_abstract(const HierarchyOptions& ho, const NetworkOptions& no, const InputOptions& io,
                       const Globals& g) {
  const auto h = load_hierarchy(ho);
  const AbstractParams p{parse_rational(no.r1), parse_rational(no.r2)};
  p.validate();
  const auto inputs = enumerate_inputs(h, resolve_inputs(h, io, g));
  bool pass = false;
  auto doc = abstract_suite(h, p, inputs, pass);
  write_output(g.out, json_io::dump(doc));
  std::cerr << "check-abstract: " << inputs.size() << " input sets, " << (pass ? "pass" : "FAIL") << "\n";
  return pass ? kExitOk : kExitFailure;
}

int cmd_check_impl(const HierarchyOptions& ho, const NetworkOptions& no, const InputOptions& io,
                   const std::string& relation, std::string abstract_name, const Globals& g) {
  const auto h = load_hierarchy(ho);
  const auto d = build_detailed(no.network, h, no, g);
  const auto en = resolve_inputs(h, io, g);
  if (abstract_name.empty()) abstract_name = relation == "impl2" ? "A2" : "A1";
  const AbstractParams ap{d.params.r1, d.params.r2};
  const auto a = abstract_name == "A1"   ? build_A1(h, ap)
                 : abstract_name == "A2" ? build_A2(h, ap)
                                         : throw ParameterError("--abstract must be A1 or A2");
  RefinementVerdict verdict;
  if (relation == "impl1") {
    verdict = check_impl1(view(d), view(a), h, d.params.m, d.params.epsilon, en);
  } else if (relation == "impl2") {
    verdict = check_impl2(view(d), view(a), h, en);
  } else if (relation == "impl") {
    verdict = check_impl(view(d), view(a), h, d.params.m, d.params.epsilon, en);
  } else if (relation == "strong_impl1") {
    verdict = check_strong_impl1(view(d), view(a), h, en);
  } else {
    throw ParameterError("--relation must be impl, impl1, impl2 or strong_impl1");
  }
  auto doc = json_io::to_json(verdict, fingerprint_of(d, h));
  doc["detailed"] = d.name;
  doc["abstract"] = abstract_name;
  write_output(g.out, json_io::dump(doc));
  std::cerr << "check-impl: " << d.name << " <=" << relation << " " << abstract_name << ": "
            << (verdict.pass() ? "pass" : "FAIL") << " (" << verdict.violation_count << " violations over "
            << verdict.inputs_checked << " input sets)\n";
  return verdict.pass() ? kExitOk : kExitFailure;
}

int cmd_verify_theorems(const HierarchyOptions& ho, const NetworkOptions& no, const InputOptions& io,
                        const std::string& which, std::string cex_path, const Globals& g) {
  const auto h = load_hierarchy(ho);
  const auto en = resolve_inputs(h, io, g);
  const auto inputs = enumerate_inputs(h, en);
  std::vector<std::string> networks;
  if (which == "both") {
    networks = {"H", "L"};
  } else if (which == "H" || which == "L") {
    networks = {which};
  } else {
    throw ParameterError("--network must be H, L or both");
  }
  const auto params = detailed_params(no);
  bool abstract_pass = false;
  auto abstract = abstract_suite(h, {params.r1, params.r2}, inputs, abstract_pass);
  bool pass = abstract_pass;
  json pipelines = json::array();
  json counterexamples = json::array();
  for (const auto& name : networks) {
    const auto d = build_detailed(name, h, no, g);
    const auto report = combined_pipeline(d, h, en);
    auto rj = json_io::to_json(report, fingerprint_of(d, h));
    if (!report.all_pass()) {
      pass = false;
      for (const auto* v : {&rj["impl1"], &rj["impl2"], &rj["strong_impl1"]}) {
        for (const auto& c : (*v)["counterexamples"]) {
          auto entry = c;
          entry["network"] = name;
          entry["relation"] = (*v)["relation"];
          counterexamples.push_back(std::move(entry));
        }
      }
      for (const auto& r : rj["failing_direct"]) counterexamples.push_back({{"network", name}, {"direct", r}});
    }
    pipelines.push_back(std::move(rj));
  }
  json input_sets = json::array();
  for (const auto& B : inputs) input_sets.push_back(json_io::to_json(B));
  json doc{{"abstract", std::move(abstract)},
           {"pipelines", std::move(pipelines)},
           {"inputs_checked", inputs.size()},
           {"input_sets", std::move(input_sets)},
           {"pass", pass}};
  write_output(g.out, json_io::dump(doc));
  if (!pass) {
    if (cex_path.empty()) cex_path = g.out.empty() || g.out == "-" ? "counterexamples.json" : g.out + ".counterexamples.json";
    write_output(cex_path, json_io::dump(json{{"counterexamples", std::move(counterexamples)}}));
    std::cerr << "verify-theorems: FAIL, counterexamples in " << cex_path << "\n";
    return kExitFailure;
  }
  std::cerr << "verify-theorems: pass over " << inputs.size() << " input sets\n";
  return kExitOk;
}

struct ExperimentOptionsCli {
  std::string q = "1/10";
  std::string zeta = "3/10";
  std::string alpha = "1";
  std::uint64_t trials = 1000;
  int m = 10;
  std::string a = "1";
  std::string constraints = "F";
  std::string r1 = "1/2";
  std::string r2 = "1";
  bool record_trials = false;
  bool pipeline = false;
  std::string save_failures;
  std::string save_edges;
};

int cmd_sample_experiment(const HierarchyOptions& ho, const ExperimentOptionsCli& o, const Globals& g) {
  const auto h = load_hierarchy(ho);
  SamplerParams params;
  params.q = parse_rational(o.q);
  params.zeta = parse_rational(o.zeta);
  params.alpha = parse_rational(o.alpha);
  params.trials = o.trials;
  params.seed = g.seed;
  params.validate();
  ConstraintSet which;
  if (o.constraints == "F") {
    which = ConstraintSet::FOnly;
  } else if (o.constraints == "FE") {
    which = ConstraintSet::FAndE;
  } else {
    throw ParameterError("--constraints must be F or FE");
  }
  const auto a = parse_rational(o.a);
  const auto assign = MultiRepAssignment::canonical(h, o.m);

  DetailedParams dp;
  dp.m = o.m;
  dp.epsilon = epsilon_from(params.q, params.zeta);
  dp.a = a;
  dp.r1 = parse_rational(o.r1);
  dp.r2 = parse_rational(o.r2);
  if (o.pipeline) {
    dp.validate();
    if (which == ConstraintSet::FOnly ? !dp.h_gap_holds() : !dp.l_gap_holds()) {
      throw ParameterError("pipeline parameters violate the r1 gap for epsilon = " + to_string(dp.epsilon));
    }
  }

  std::uint64_t pipeline_runs = 0, pipeline_failures = 0;
  bool saved = false;
  ExperimentOptions options;
  options.record_trials = o.record_trials;
  options.on_passing = [&](std::uint64_t, const FailurePattern& F, const EdgeSet* E) {
    if (!saved && (!o.save_failures.empty() || !o.save_edges.empty())) {
      if (!o.save_failures.empty()) write_output(o.save_failures, json_io::dump(json_io::to_json(F)));
      if (!o.save_edges.empty() && E) write_output(o.save_edges, json_io::dump(json_io::to_json(*E)));
      saved = true;
    }
    if (!o.pipeline) return;
    const auto d = E ? make_L(h, dp, F, *E) : make_H(h, dp, F);
    const auto en = InputEnumeration::automatic(h, g.exhaustive_cap, 256, g.seed);
    ++pipeline_runs;
    if (!combined_pipeline(d, h, en).all_pass()) ++pipeline_failures;
  };
  const auto stats = estimate_constraint_probability(h, assign, params, which, a, o.m, options);
  auto doc = json_io::to_json(stats);
  if (o.pipeline) {
    doc["pipeline"] = {{"network", which == ConstraintSet::FOnly ? "H" : "L"},
                       {"r1", to_string(dp.r1)},
                       {"r2", to_string(dp.r2)},
                       {"runs", pipeline_runs},
                       {"failures", pipeline_failures}};
  }
  write_output(g.out, json_io::dump(doc));
  std::cerr << "sample-experiment: " << stats.all_pass << " / " << stats.params.trials
            << " trials satisfy the constraints\n";
  return pipeline_failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and refinement checker for layered threshold networks that recognize concept hierarchies"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every sampled quantity");
  app.add_option("--out", g.out, "Output file (default: standard output)");
  app.add_option("--exhaustive-cap", g.exhaustive_cap, "Largest |C_0| enumerated exhaustively");

  HierarchyOptions ho;
  NetworkOptions no;
  InputOptions io;
  ExperimentOptionsCli eo;
  std::string relation = "impl1";
  std::string abstract_name;
  std::string verify_network = "both";
  std::string cex_path;

  auto* gen = app.add_subcommand("gen-hierarchy", "Write a uniform concept hierarchy as JSON");
  gen->add_option("--k", ho.k, "Branching factor and number of roots");
  gen->add_option("--l-max", ho.l_max, "Maximum concept level");

  auto* run = app.add_subcommand("run", "Execute one network on input sets; write traces and recognition reports");
  add_hierarchy_options(run, ho);
  add_network_options(run, no, true);
  add_input_options(run, io);

  auto* abs = app.add_subcommand("check-abstract", "Check the recognition guarantees of A1 and A2");
  add_hierarchy_options(abs, ho);
  abs->add_option("--r1", no.r1, "Non-firing support ratio r1");
  abs->add_option("--r2", no.r2, "Firing support ratio r2");
  InputOptions abs_io;
  add_input_options(abs, abs_io);

  auto* impl = app.add_subcommand("check-impl", "Check an implementation relation between H/L and A1/A2");
  add_hierarchy_options(impl, ho);
  add_network_options(impl, no, true);
  InputOptions impl_io;
  add_input_options(impl, impl_io);
  impl->add_option("--relation", relation, "impl | impl1 | impl2 | strong_impl1");
  impl->add_option("--abstract", abstract_name, "A1 | A2 (default: A2 for impl2, A1 otherwise)");

  auto* verify = app.add_subcommand("verify-theorems", "Run the abstract checks and the combined mapping pipeline");
  add_hierarchy_options(verify, ho);
  add_network_options(verify, no, false);
  InputOptions verify_io;
  add_input_options(verify, verify_io);
  verify->add_option("--network", verify_network, "H | L | both");
  verify->add_option("--counterexamples", cex_path, "Counterexample file written on failure");

  auto* sample = app.add_subcommand("sample-experiment", "Estimate survival-constraint satisfaction by Monte Carlo");
  add_hierarchy_options(sample, ho);
  sample->add_option("--q", eo.q, "Per-neuron failure probability");
  sample->add_option("--zeta", eo.zeta, "Concentration slack; epsilon = 1 - (1-q)(1-zeta)");
  sample->add_option("--alpha", eo.alpha, "Per-edge connection probability (FE)");
  sample->add_option("--trials", eo.trials, "Number of trials");
  sample->add_option("--m", eo.m, "Reps per concept");
  sample->add_option("--a", eo.a, "Connectivity coefficient (FE)");
  sample->add_option("--constraints", eo.constraints, "F | FE");
  sample->add_option("--r1", eo.r1, "r1 for --pipeline");
  sample->add_option("--r2", eo.r2, "r2 for --pipeline");
  sample->add_flag("--record-trials", eo.record_trials, "Include per-trial pass bits");
  sample->add_flag("--pipeline", eo.pipeline, "Run the combined mapping pipeline on every passing sample");
  sample->add_option("--save-failures", eo.save_failures, "Write the first passing failure pattern here");
  sample->add_option("--save-edges", eo.save_edges, "Write the first passing edge set here (FE)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParameter;
  }

  try {
    if (*gen) return cmd_gen_hierarchy(ho, g);
    if (*run) return cmd_run(ho, no, io, g);
    if (*abs) return cmd_check_abstract(ho, no, abs_io, g);
    if (*impl) return cmd_check_impl(ho, no, impl_io, relation, abstract_name, g);
    if (*verify) return cmd_verify_theorems(ho, no, verify_io, verify_network, cex_path, g);
    if (*sample) return cmd_sample_experiment(ho, eo, g);
  } catch (const ConstraintViolation& e) {
    std::cerr << "constraint violation: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameter;
  }
  return kExitParameter;
}
