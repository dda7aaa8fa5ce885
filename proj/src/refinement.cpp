#include "hcr/refinement.hpp"

#include <algorithm>

#include "hcr/rng.hpp"

namespace hcr {

InputEnumeration InputEnumeration::exhaustive(int cap) {
  InputEnumeration en;
  en.mode = Mode::Exhaustive;
  en.exhaustive_cap = cap;
  return en;
}

InputEnumeration InputEnumeration::sampled(int count, std::uint64_t seed) {
  InputEnumeration en;
  en.mode = Mode::Sampled;
  en.sample_count = count;
  en.seed = seed;
  return en;
}

InputEnumeration InputEnumeration::listed(std::vector<ConceptSet> sets) {
  InputEnumeration en;
  en.mode = Mode::Explicit;
  en.explicit_sets = std::move(sets);
  return en;
}

InputEnumeration InputEnumeration::automatic(const ConceptHierarchy& h, int cap, int count, std::uint64_t seed) {
  auto en = h.level_size(0) <= cap ? exhaustive(cap) : sampled(count, seed);
  en.exhaustive_cap = cap;
  return en;
}

std::vector<ConceptSet> enumerate_inputs(const ConceptHierarchy& h, const InputEnumeration& en) {
  const int leaves = h.level_size(0);
  std::vector<ConceptSet> out;
  if (en.mode == InputEnumeration::Mode::Explicit) {
    for (const auto& B : en.explicit_sets) leaf_mask(h, B);
    return en.explicit_sets;
  }
  if (en.mode == InputEnumeration::Mode::Exhaustive) {
    if (en.exhaustive_cap > 30) throw ParameterError("exhaustive cap above 30 is not supported");
    if (leaves > en.exhaustive_cap) {
      throw ParameterError("exhaustive enumeration over " + std::to_string(leaves) + " leaves exceeds the cap of " +
                           std::to_string(en.exhaustive_cap));
    }
    const std::uint64_t total = std::uint64_t{1} << leaves;
    out.reserve(total);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      ConceptSet B;
      for (int i = 0; i < leaves; ++i) {
        if ((mask >> i) & 1U) B.insert({0, i});
      }
      out.push_back(std::move(B));
    }
    return out;
  }
  if (en.sample_count < 1) throw ParameterError("sampled enumeration needs sample_count >= 1");
  out.emplace_back();
  ConceptSet all;
  for (int i = 0; i < leaves; ++i) all.insert({0, i});
  out.push_back(all);
  for (int s = 0; s < en.sample_count; ++s) {
    SplitMix64 rng(derive_stream(en.seed, static_cast<std::uint64_t>(s)));
    ConceptSet B;
    for (int i = 0; i < leaves; ++i) {
      if (rng.next() >> 63) B.insert({0, i});
    }
    out.push_back(std::move(B));
  }
  return out;
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Impl: return "impl";
    case Relation::Impl1: return "impl1";
    case Relation::Impl2: return "impl2";
    case Relation::StrongImpl1: return "strong_impl1";
  }
  return "?";
}

namespace {

void check_shape(DetailedView D, AbstractView A, const ConceptHierarchy& h) {
  if (D.network.l_prime_max() != h.l_max() || A.network.l_prime_max() != h.l_max()) {
    throw ContractError("network depth does not match the hierarchy's l_max");
  }
  if (D.reps.levels() != h.l_max() + 1 || A.rep.levels() != h.l_max() + 1) {
    throw ContractError("rep assignment depth does not match the hierarchy");
  }
  for (int l = 0; l <= h.l_max(); ++l) {
    if (D.reps.level_size(l) != h.level_size(l) || A.rep.level_size(l) != h.level_size(l)) {
      throw ContractError("rep assignment does not cover level " + std::to_string(l) + " of the hierarchy");
    }
  }
}

struct Finding {
  ConceptId concept_id;
  std::string detail;
};

// Each clause inspects one pair of traces for one input set.

void impl1_clause(const ExecutionTrace& dt, const ExecutionTrace& at, DetailedView D, AbstractView A,
                  const ConceptHierarchy& h, const Rational& bound, std::vector<Finding>& out) {
  for (auto c : h.all_concepts()) {
    const auto rep = A.rep.rep(c);
    if (!at.fires(c.level, rep)) continue;
    const int firing = count_firing(dt, D.reps, c);
    if (!at_least(firing, bound)) {
      out.push_back({c, "rep fires in abstract network; " + std::to_string(firing) + " of " +
                            std::to_string(D.reps.m()) + " reps fire in detailed network, need " + to_string(bound)});
    }
  }
}

void impl2_clause(const ExecutionTrace& dt, const ExecutionTrace& at, DetailedView D, AbstractView A,
                  const ConceptHierarchy& h, std::vector<Finding>& out) {
  for (auto c : h.all_concepts()) {
    const auto rep = A.rep.rep(c);
    if (at.fires(c.level, rep)) continue;
    const int firing = count_firing(dt, D.reps, c);
    if (firing > 0) {
      out.push_back({c, "rep silent in abstract network; " + std::to_string(firing) +
                            " reps fire in detailed network"});
    }
  }
}

void strong_clause(const ExecutionTrace& dt, const ExecutionTrace& at, DetailedView D, AbstractView A,
                   const ConceptHierarchy& h, std::vector<Finding>& out) {
  for (auto c : h.all_concepts()) {
    if (!at.fires(c.level, A.rep.rep(c))) continue;
    const auto& failed = D.network.failed_mask(c.level);
    for (auto v : D.reps.reps(c)) {
      if (!failed.test(static_cast<std::size_t>(v.index)) && !dt.fires(c.level, v)) {
        out.push_back({c, "surviving rep " + to_string(v) + " is silent while the abstract rep fires"});
        break;
      }
    }
  }
}

class VerdictBuilder {
 public:
  VerdictBuilder(Relation relation, std::size_t limit) : limit_(limit) { verdict_.relation = relation; }

  void record(const ConceptSet& B, std::vector<Finding>& findings, const ExecutionTrace& dt,
              const ExecutionTrace& at) {
    ++verdict_.inputs_checked;
    verdict_.violation_count += findings.size();
    for (auto& f : findings) {
      if (verdict_.counterexamples.size() >= std::max<std::size_t>(limit_, 1)) break;
      verdict_.counterexamples.push_back({B, f.concept_id, std::move(f.detail), dt, at});
    }
    findings.clear();
  }

  RefinementVerdict finish() && {
    std::stable_sort(verdict_.counterexamples.begin(), verdict_.counterexamples.end(),
                     [](const Counterexample& x, const Counterexample& y) {
                       if (x.B != y.B) return x.B < y.B;
                       return x.concept_id < y.concept_id;
                     });
    return std::move(verdict_);
  }

 private:
  std::size_t limit_;
  RefinementVerdict verdict_;
};

template <typename Clause>
RefinementVerdict run_relation(Relation relation, DetailedView D, AbstractView A, const ConceptHierarchy& h,
                               const InputEnumeration& en, Clause clause) {
  check_shape(D, A, h);
  VerdictBuilder builder(relation, en.max_counterexamples);
  std::vector<Finding> findings;
  for (const auto& B : enumerate_inputs(h, en)) {
    const auto at = execute(A.network, input_mask_single(A.rep, h, B, A.network.width(0)));
    const auto dt = execute(D.network, input_mask_multi(D.reps, h, B, D.network));
    clause(dt, at, findings);
    builder.record(B, findings, dt, at);
  }
  return std::move(builder).finish();
}

}  // namespace

RefinementVerdict check_impl1(DetailedView D, AbstractView A, const ConceptHierarchy& h, int m,
                              const Rational& epsilon, const InputEnumeration& en) {
  if (m != D.reps.m()) throw ContractError("m does not match the detailed rep assignment");
  const Rational bound = Rational(m) * (Rational(1) - epsilon);
  return run_relation(Relation::Impl1, D, A, h, en, [&](const auto& dt, const auto& at, auto& out) {
    impl1_clause(dt, at, D, A, h, bound, out);
  });
}

RefinementVerdict check_impl2(DetailedView D, AbstractView A, const ConceptHierarchy& h,
                              const InputEnumeration& en) {
  return run_relation(Relation::Impl2, D, A, h, en,
                      [&](const auto& dt, const auto& at, auto& out) { impl2_clause(dt, at, D, A, h, out); });
}

RefinementVerdict check_impl(DetailedView D, AbstractView A, const ConceptHierarchy& h, int m,
                             const Rational& epsilon, const InputEnumeration& en) {
  if (m != D.reps.m()) throw ContractError("m does not match the detailed rep assignment");
  const Rational bound = Rational(m) * (Rational(1) - epsilon);
  return run_relation(Relation::Impl, D, A, h, en, [&](const auto& dt, const auto& at, auto& out) {
    impl1_clause(dt, at, D, A, h, bound, out);
    impl2_clause(dt, at, D, A, h, out);
  });
}

RefinementVerdict check_strong_impl1(DetailedView D, AbstractView A, const ConceptHierarchy& h,
                                     const InputEnumeration& en) {
  return run_relation(Relation::StrongImpl1, D, A, h, en,
                      [&](const auto& dt, const auto& at, auto& out) { strong_clause(dt, at, D, A, h, out); });
}

bool PipelineReport::consistent() const {
  const bool part1_implied = !(impl1.pass() && a1_firing_failures == 0) || part1_failures == 0;
  const bool part2_implied = !(impl2.pass() && a2_non_firing_failures == 0) || part2_failures == 0;
  return part1_implied && part2_implied && inconsistent_inputs == 0;
}

bool PipelineReport::all_pass() const {
  return impl1.pass() && impl2.pass() && strong_impl1.pass() && a1_firing_failures == 0 &&
         a2_non_firing_failures == 0 && part1_failures == 0 && part2_failures == 0 && consistent();
}

PipelineReport combined_pipeline(const DetailedNet& D, const ConceptHierarchy& h, const InputEnumeration& en) {
  const auto& params = D.params;
  const AbstractParams ap{params.r1, params.r2};
  const auto A1 = build_A1(h, ap);
  const auto A2 = build_A2(h, ap);
  const auto dv = view(D);
  const auto a1v = view(A1);
  const auto a2v = view(A2);
  check_shape(dv, a1v, h);
  check_shape(dv, a2v, h);

  PipelineReport report;
  report.network = D.name;
  const auto bound = params.survival_bound();
  VerdictBuilder impl1(Relation::Impl1, en.max_counterexamples);
  VerdictBuilder impl2(Relation::Impl2, en.max_counterexamples);
  VerdictBuilder strong(Relation::StrongImpl1, en.max_counterexamples);
  std::vector<Finding> findings;

  for (const auto& B : enumerate_inputs(h, en)) {
    ++report.inputs_checked;
    const auto t1 = execute(A1.network, input_mask_single(A1.assign, h, B, A1.network.width(0)));
    const auto t2 = execute(A2.network, input_mask_single(A2.assign, h, B, A2.network.width(0)));
    const auto dt = execute(D.network, input_mask_multi(D.reps, h, B, D.network));

    impl1_clause(dt, t1, dv, a1v, h, bound, findings);
    const bool impl1_ok = findings.empty();
    impl1.record(B, findings, dt, t1);
    impl2_clause(dt, t2, dv, a2v, h, findings);
    const bool impl2_ok = findings.empty();
    impl2.record(B, findings, dt, t2);
    strong_clause(dt, t1, dv, a1v, h, findings);
    strong.record(B, findings, dt, t1);

    const bool a1_ok = check_firing_guarantee(t1, A1.assign, h, B, params.r2).pass();
    const bool a2_ok = check_non_firing_guarantee(t2, A2.assign, h, B, params.r1).pass();
    report.a1_firing_failures += a1_ok ? 0 : 1;
    report.a2_non_firing_failures += a2_ok ? 0 : 1;

    auto direct = check_recognition_multi(dt, D.reps, h, B, params);
    direct.network = D.name;
    const bool p1 = direct.part1_pass();
    const bool p2 = direct.part2_pass();
    report.part1_failures += p1 ? 0 : 1;
    report.part2_failures += p2 ? 0 : 1;
    if ((impl1_ok && a1_ok && !p1) || (impl2_ok && a2_ok && !p2)) ++report.inconsistent_inputs;
    if (!direct.pass() && report.failing_direct.size() < en.max_counterexamples) {
      report.failing_direct.push_back(std::move(direct));
    }
  }
  report.impl1 = std::move(impl1).finish();
  report.impl2 = std::move(impl2).finish();
  report.strong_impl1 = std::move(strong).finish();
  return report;
}

}  // namespace hcr
