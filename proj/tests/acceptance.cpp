// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <spdlog/spdlog.h>

#include "evcheck/error.hpp"
#include "support.hpp"

using namespace evcheck;
using testing::inst;
using testing::nat;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_sec(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

struct Case {
  std::string name;
  Lpe lpe;
  MuFormula phi;
  Value init;
};

std::vector<Case> golden_cases() {
  std::vector<Case> out;
  Lpe ex = testing::running(3);
  out.push_back({"running", ex, parse_formula(testing::kRunningFormula), nat(1)});
  out.push_back({"running/b-step@2", ex, parse_formula("mu V . <b> V || nu W . <c> W"), nat(2)});
  out.push_back({"running/no-c", ex, parse_formula("nu X . [a] X && [c] false"), nat(1)});
  out.push_back({"running/true", ex, ensure_fixpoint_root(parse_formula("true")), nat(1)});
  out.push_back({"running/always-a", ex, parse_formula("nu X . <a> true && [a] X"), nat(1)});
  out.push_back({"witness1000", testing::running(1000), parse_formula(testing::kRunningFormula), nat(1)});
  return out;
}

std::vector<Case> random_cases(std::uint64_t seed, std::size_t count, std::size_t max_instances,
                               std::size_t& skipped) {
  std::vector<Case> out;
  testing::CaseGenerator gen(seed);
  skipped = 0;
  while (out.size() < count) {
    auto c = gen.next();
    Case k{"random", parse_lpe(c.lpe_text), parse_formula(c.formula_text), nat(c.init)};
    Pbes e = encode_with_evidence(k.lpe, k.phi, k.init);
    if (instantiate(core_of(e)).instance_count() > max_instances) {
      ++skipped;
      continue;
    }
    k.name = c.lpe_text + c.formula_text + " @" + std::to_string(c.init);
    out.push_back(std::move(k));
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Lpe lpe = testing::running(1000);
  auto phi = parse_formula(testing::kRunningFormula);
  auto t0 = Clock::now();
  CheckResult two = check(lpe, phi, nat(1), Mode::TwoStep);
  double two_s = seconds_since(t0);
  CheckResult direct = check(lpe, phi, nat(1), Mode::Direct);
  const std::size_t d = *direct.stats.direct_vertices;
  const double rel = (static_cast<double>(d) - 1001002.0) / 1001002.0;
  bool ok = two.verdict && direct.verdict && two.stats.phase1_vertices == 2000 && two.stats.phase2_vertices == 5 &&
            d >= 1'000'000 && rel <= 0.01 && rel >= -0.01 && two_s < 60.0;
  std::ostringstream s;
  s << "phase1=" << two.stats.phase1_vertices << " phase2=" << two.stats.phase2_vertices << " direct=" << d
    << " two-step " << fmt_sec(two_s);
  return {ok, s.str()};
}

Outcome criterion2() {
  Lpe lpe = testing::running(3);
  auto phi = parse_formula(testing::kRunningFormula);
  CheckResult r = check(lpe, phi, nat(1), Mode::TwoStep);
  if (!r.verdict || !r.evidence) return {false, "verdict false or no evidence"};
  Lts w = evidence_lts(*r.evidence, r.evidence_pbes, lpe, nat(1));
  std::set<std::tuple<std::string, std::string, std::string>> got;
  for (const auto& t : w.transitions) got.emplace(w.states[t.source].to_string(), t.label, w.states[t.target].to_string());
  const std::set<std::tuple<std::string, std::string, std::string>> want{{"1", "a", "3"}, {"3", "c", "3"}};
  std::set<std::string> states;
  for (const auto& v : w.states) states.insert(v.to_string());
  bool ok = got == want && states == std::set<std::string>{"1", "3"} && w.states[w.initial] == nat(1);
  std::string aut = to_aut(w);
  for (auto& ch : aut) ch = ch == '\n' ? ' ' : ch;
  return {ok, aut};
}

Outcome criterion3() {
  Pbes core = parse_pbes(testing::kCorePbes);
  auto x1 = inst(core, "X", {1}), x3 = inst(core, "X", {3}), y3 = inst(core, "Y", {3});
  EvidenceGraph fig = testing::make_graph(Polarity::Proof, {x1, x3, y3}, {{0, 1}, {1, 2}, {2, 2}});
  Pbes e = testing::running_evidence();
  EvidenceGraph ex6 = testing::make_graph(
      Polarity::Proof,
      {inst(e, "X", {1}), inst(e, "X", {3}), inst(e, "Zp_a", {1, 3}), inst(e, "Y", {3}), inst(e, "Zp_c", {3, 3})},
      {{0, 1}, {0, 2}, {1, 3}, {3, 3}, {3, 4}});
  int accepted = 0, rejected = 0, mutants = 0;
  accepted += validate_evidence_graph(fig, core).empty();
  accepted += validate_evidence_graph(ex6, e).empty();

  auto expect_reject = [&](EvidenceGraph g, const Pbes& p, Violation::Kind kind) {
    ++mutants;
    auto vs = validate_evidence_graph(g, p);
    for (const auto& v : vs) {
      if (v.kind == kind) {
        ++rejected;
        return;
      }
    }
  };
  // Redirect: X(1) -> Y(3) instead of X(3).
  auto redirect = fig;
  redirect.edges = {{0, 2}, {1, 2}, {2, 2}};
  expect_reject(redirect, core, Violation::Kind::Local);
  // Deletion: X(1) loses its only successor.
  auto deletion = fig;
  deletion.edges = {{1, 2}, {2, 2}};
  expect_reject(deletion, core, Violation::Kind::Local);
  // Odd cycle: Y(3) -> X(3) closes a cycle of least rank 1.
  auto odd = fig;
  odd.edges = {{0, 1}, {1, 2}, {2, 1}};
  expect_reject(odd, core, Violation::Kind::Parity);
  // The same three mutations on the evidence graph.
  auto redirect6 = ex6;
  redirect6.edges = {{0, 3}, {0, 2}, {1, 3}, {3, 3}, {3, 4}};
  expect_reject(redirect6, e, Violation::Kind::Local);
  auto deletion6 = ex6;
  deletion6.edges = {{0, 1}, {1, 3}, {3, 3}, {3, 4}};
  expect_reject(deletion6, e, Violation::Kind::Local);
  auto odd6 = ex6;
  odd6.edges = {{0, 1}, {0, 2}, {1, 3}, {3, 1}, {3, 4}};
  expect_reject(odd6, e, Violation::Kind::Parity);

  std::ostringstream s;
  s << accepted << "/2 accepted, " << rejected << "/" << mutants << " mutants rejected";
  return {accepted == 2 && rejected == mutants, s.str()};
}

Outcome criterion4() {
  Pbes e = testing::running_evidence();
  const std::size_t direct = instantiate(e).instance_count();
  const std::size_t core = instantiate(core_of(e)).instance_count();
  std::ostringstream s;
  s << "direct=" << direct << " core=" << core;
  return {direct == 14 && core == 6, s.str()};
}

Outcome criterion5() {
  Pbes e = testing::running_evidence(1000);
  ParityGame g = instantiate(e);
  RelevancyGraph r = relevancy_graph(g);
  const Instance x1 = inst(e, "X", {1});
  const std::uint32_t za_plus = e.index_of("Zp_a"), za_minus = e.index_of("Zm_a");
  std::size_t deps = 0;
  for (auto [a, b] : r.edges) {
    if (r.vertices[a] == x1 && (r.vertices[b].var == za_plus || r.vertices[b].var == za_minus)) ++deps;
  }
  return {deps == 1998, "X(1) has " + std::to_string(deps) + " Z_a dependencies"};
}

Outcome criterion6() {
  auto t0 = Clock::now();
  std::size_t skipped = 0;
  auto cases = random_cases(20261018, 500, 50, skipped);
  std::size_t disagreements = 0, holds = 0;
  for (const auto& c : cases) {
    Pbes e = encode_with_evidence(c.lpe, c.phi, c.init);
    const bool oracle = brute_force_solve(e).get(e.initial);
    const bool direct = check(c.lpe, c.phi, c.init, Mode::Direct).verdict;
    const bool two = check(c.lpe, c.phi, c.init, Mode::TwoStep).verdict;
    const bool plain = check(c.lpe, c.phi, c.init, Mode::Plain).verdict;
    holds += oracle;
    if (oracle != direct || oracle != two || oracle != plain) {
      ++disagreements;
      std::cerr << "disagreement on\n" << c.name << "\n";
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream s;
  s << cases.size() << " instances (" << holds << " true, " << skipped << " oversized skipped), " << disagreements
    << " disagreements, " << fmt_sec(secs);
  return {cases.size() >= 500 && disagreements == 0 && secs < 300, s.str()};
}

// The phase-1 graph plus, for every vertex, edges to the evidence instances
// its restricted right-hand side mentions.
EvidenceGraph extend_guide(const EvidenceGraph& guide, const Pbes& stripped, const CombineContext& ctx) {
  EvidenceGraph out = guide;
  CallFilter filter = ctx.filter();
  const std::size_t n = guide.vertices.size();
  for (std::uint32_t v = 0; v < n; ++v) {
    GroundFormula gf = ground(stripped, guide.vertices[v], Bounds{}, &filter);
    for (const Instance& callee : gf.calls) {
      if (!ctx.is_evidence_var(callee.var)) continue;
      auto idx = out.index_of(callee);
      if (!idx) {
        out.vertices.push_back(callee);
        idx = static_cast<std::uint32_t>(out.vertices.size() - 1);
      }
      out.edges.emplace_back(v, *idx);
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

Outcome criterion7() {
  std::size_t skipped = 0;
  auto cases = golden_cases();
  for (auto& c : random_cases(7, 200, 50, skipped)) cases.push_back(std::move(c));
  std::size_t thm2 = 0, prop1 = 0;
  for (const auto& c : cases) {
    CheckOptions opt;
    opt.validate = false;
    CheckResult r = check(c.lpe, c.phi, c.init, Mode::TwoStep, opt);
    const Pbes& e = r.evidence_pbes;
    if (!validate_evidence_graph(*r.evidence, e).empty()) {
      ++thm2;
      std::cerr << "evidence rejected by E on\n" << c.name << "\n";
    }
    Pbes stripped = strip_for_polarity(e, r.verdict);
    CombineContext ctx(e, *r.guide);
    EvidenceGraph extended = extend_guide(*r.guide, stripped, ctx);
    Pbes combined = materialize_combine(ctx, stripped);
    auto vs = validate_evidence_graph(extended, combined);
    if (!vs.empty()) {
      ++prop1;
      std::cerr << "extended guide rejected by the combined system on\n" << c.name << "\n" << vs.front().message << "\n";
    }
  }
  std::ostringstream s;
  s << cases.size() << " instances, " << thm2 << " evidence violations, " << prop1 << " extended-guide violations";
  return {thm2 == 0 && prop1 == 0, s.str()};
}

Outcome criterion8() {
  std::size_t skipped = 0;
  auto cases = golden_cases();
  for (auto& c : random_cases(8, 200, 50, skipped)) cases.push_back(std::move(c));
  std::size_t failures = 0, witnesses = 0, counterexamples = 0;
  for (const auto& c : cases) {
    for (Mode m : {Mode::TwoStep, Mode::Direct}) {
      CheckResult r = check(c.lpe, c.phi, c.init, m);
      Lts lts = evidence_lts(*r.evidence, r.evidence_pbes, c.lpe, c.init);
      (r.verdict ? witnesses : counterexamples)++;
      if (!self_verify(lts, c.lpe, c.phi, r.verdict)) {
        ++failures;
        std::cerr << "self-verification failed (" << to_string(m) << ") on\n" << c.name << "\n";
      }
    }
  }
  std::ostringstream s;
  s << witnesses << " witnesses, " << counterexamples << " counterexamples, " << failures << " failures";
  return {failures == 0, s.str()};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
  int failed = 0;
  for (const auto& [n, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")" << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
