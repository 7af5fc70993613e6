#include <doctest.h>

#include <algorithm>
#include <set>

#include "evcheck/error.hpp"
#include "support.hpp"

using namespace evcheck;
using testing::inst;
using testing::make_graph;
using testing::nat;

namespace {

std::set<std::string> instance_names(const Pbes& p, const ParityGame& g) {
  std::set<std::string> out;
  for (const auto& i : g.instances) out.insert(to_string(p, i));
  return out;
}

std::set<std::pair<std::string, std::string>> named_edges(const Pbes& p, const RelevancyGraph& r) {
  std::set<std::pair<std::string, std::string>> out;
  for (auto [a, b] : r.edges) out.emplace(to_string(p, r.vertices[a]), to_string(p, r.vertices[b]));
  return out;
}

bool has_kind(const std::vector<Violation>& vs, Violation::Kind k) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST_CASE("instantiate: core and direct vertex sets") {
  Pbes e = testing::running_evidence();
  ParityGame core = instantiate(core_of(e));
  CHECK(core.instance_count() == 6);
  CHECK(instance_names(e, core) == std::set<std::string>{"X(1)", "X(2)", "X(3)", "Y(1)", "Y(2)", "Y(3)"});
  ParityGame direct = instantiate(e);
  CHECK(direct.instance_count() == 14);
  auto names = instance_names(e, direct);
  for (const char* z : {"Zp_a(1, 2)", "Zp_a(1, 3)", "Zm_a(1, 2)", "Zm_a(1, 3)", "Zp_b(2, 1)", "Zm_b(2, 1)",
                        "Zp_c(3, 3)", "Zm_c(3, 3)"}) {
    CHECK_MESSAGE(names.count(z), z);
  }
}

TEST_CASE("instantiate: game invariants") {
  Pbes e = testing::running_evidence();
  ParityGame g = instantiate(e);
  auto r = ranks(e);
  CHECK(g.owner[ParityGame::true_sink] == Player::Even);
  CHECK(g.priority[ParityGame::true_sink] % 2 == 0);
  CHECK(g.priority[ParityGame::false_sink] % 2 == 1);
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    CHECK(!g.successors(v).empty());
    if (g.is_instance_vertex(v)) CHECK(g.priority[v] == r[g.instances[g.origin[v]].var]);
    if (v > ParityGame::false_sink && g.synthetic[v]) CHECK(g.priority[v] == r[g.instances[g.origin[v]].var]);
  }
  for (std::size_t k = 0; k < g.instance_count(); ++k) CHECK(g.origin[g.instance_vertex[k]] == k);
}

TEST_CASE("instantiate: single self-loop") {
  Pbes p = parse_pbes("nu X(n: Nat) = X(n); init X(0);");
  ParityGame g = instantiate(p);
  REQUIRE(g.instance_count() == 1);
  std::uint32_t v = g.instance_vertex[0];
  CHECK(g.successors(v).size() == 1);
  CHECK(g.successors(v)[0] == v);
  CHECK(g.priority[v] % 2 == 0);
}

TEST_CASE("instantiate: resource bound") {
  Pbes p = parse_pbes("nu X(n: Nat) = X(n + 1); init X(0);");
  try {
    instantiate(p, nullptr, Bounds{100, 1000});
    FAIL("expected StateExplosion");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::StateExplosion);
  }
}

TEST_CASE("relevancy_proxy") {
  Pbes core = parse_pbes(testing::kCorePbes);
  RelevancyGraph r = relevancy_proxy(core);
  CHECK(r.vertices.size() == 6);
  CHECK(to_string(core, r.vertices[0]) == "X(1)");
  std::set<std::pair<std::string, std::string>> expected{
      {"X(1)", "Y(1)"}, {"X(1)", "X(2)"}, {"X(2)", "X(1)"}, {"X(1)", "X(3)"},
      {"X(2)", "Y(2)"}, {"X(3)", "Y(3)"}, {"Y(3)", "Y(3)"}};
  CHECK(named_edges(core, r) == expected);
  Pbes e = testing::running_evidence();
  CHECK(relevancy_proxy(e).vertices.size() == 14);
  ParityGame g = instantiate(e);
  std::set<std::string> from_proxy;
  for (const auto& i : relevancy_proxy(e).vertices) from_proxy.insert(to_string(e, i));
  CHECK(from_proxy == instance_names(e, g));
}

TEST_CASE("validator: running example proof graphs") {
  Pbes core = parse_pbes(testing::kCorePbes);
  auto x1 = inst(core, "X", {1}), x3 = inst(core, "X", {3}), y3 = inst(core, "Y", {3});
  EvidenceGraph fig = make_graph(Polarity::Proof, {x1, x3, y3}, {{0, 1}, {1, 2}, {2, 2}});
  CHECK(validate_evidence_graph(fig, core).empty());
  CHECK(validate_evidence_graph(fig, core, {}, ExecPolicy::Parallel).empty());

  EvidenceGraph odd = fig;
  odd.edges = {{0, 1}, {1, 2}, {2, 1}};
  auto v1 = validate_evidence_graph(odd, core);
  CHECK(has_kind(v1, Violation::Kind::Parity));

  EvidenceGraph cut = fig;
  cut.edges = {{1, 2}, {2, 2}};
  auto v2 = validate_evidence_graph(cut, core);
  CHECK(has_kind(v2, Violation::Kind::Local));

  EvidenceGraph redirected = fig;
  redirected.edges = {{0, 2}, {1, 2}, {2, 2}};
  CHECK(has_kind(validate_evidence_graph(redirected, core), Violation::Kind::Local));

  Pbes e = testing::running_evidence();
  EvidenceGraph ex6 = make_graph(
      Polarity::Proof,
      {inst(e, "X", {1}), inst(e, "X", {3}), inst(e, "Zp_a", {1, 3}), inst(e, "Y", {3}), inst(e, "Zp_c", {3, 3})},
      {{0, 1}, {0, 2}, {1, 3}, {3, 3}, {3, 4}});
  CHECK(validate_evidence_graph(ex6, e).empty());
  EvidenceGraph no_z = ex6;
  no_z.edges = {{0, 1}, {1, 3}, {3, 3}, {3, 4}};
  CHECK(has_kind(validate_evidence_graph(no_z, e), Violation::Kind::Local));
  EvidenceGraph odd6 = ex6;
  odd6.edges = {{0, 1}, {0, 2}, {1, 3}, {3, 1}, {3, 4}};
  CHECK(has_kind(validate_evidence_graph(odd6, e), Violation::Kind::Parity));
}

TEST_CASE("validator: refutations and unknown instances") {
  Pbes mu_id = parse_pbes("mu Z(d: Nat) = Z(d); init Z(0);");
  auto z0 = inst(mu_id, "Z", {0});
  CHECK(validate_evidence_graph(make_graph(Polarity::Refutation, {z0}, {{0, 0}}), mu_id).empty());
  CHECK(has_kind(validate_evidence_graph(make_graph(Polarity::Proof, {z0}, {{0, 0}}), mu_id),
                 Violation::Kind::Parity));
  Pbes nu_or = parse_pbes("nu Z(d: Nat) = d == 1 || Z(d); init Z(0);");
  auto n0 = inst(nu_or, "Z", {0});
  CHECK(has_kind(validate_evidence_graph(make_graph(Polarity::Refutation, {n0}, {{0, 0}}), nu_or),
                 Violation::Kind::Parity));
  auto n1 = inst(nu_or, "Z", {1});
  CHECK(has_kind(validate_evidence_graph(make_graph(Polarity::Refutation, {n1}, {}), nu_or),
                 Violation::Kind::Local));
  EvidenceGraph bogus = make_graph(Polarity::Proof, {Instance{9, testing::args({0})}}, {});
  CHECK(has_kind(validate_evidence_graph(bogus, nu_or), Violation::Kind::Unknown));
}

TEST_CASE("serial and parallel instantiation build the same game") {
  Lpe wide = parse_lpe("proc L(s : Nat) = sum n : Nat . (n < 6000 && s < 3) -> a . L(n + s);");
  Pbes e = encode_with_evidence(wide, parse_formula("nu X . [a] X && mu Y . <a> true || Y"), nat(0));
  ParityGame s = instantiate(e, nullptr, {}, ExecPolicy::Serial);
  ParityGame p = instantiate(e, nullptr, {}, ExecPolicy::Parallel);
  CHECK(s.instance_count() > 10000);
  CHECK(s.owner == p.owner);
  CHECK(s.priority == p.priority);
  CHECK(s.edge_begin == p.edge_begin);
  CHECK(s.edges == p.edges);
  CHECK(s.origin == p.origin);
  CHECK(s.synthetic == p.synthetic);
  CHECK(s.instances == p.instances);
  CHECK(s.initial == p.initial);
}

TEST_CASE("dot output tags evidence vertices") {
  Pbes e = testing::running_evidence();
  auto r = check(testing::running(), parse_formula(testing::kRunningFormula), nat(1), Mode::TwoStep);
  std::ostringstream out;
  write_evidence_dot(out, *r.evidence, e);
  CHECK(out.str().find("palegreen") != std::string::npos);
  std::ostringstream game, rel;
  write_game_dot(game, instantiate(e), e);
  write_relevancy_dot(rel, relevancy_proxy(e), e);
  CHECK(game.str().rfind("digraph", 0) == 0);
  CHECK(rel.str().find("Zm_a(1, 3)") != std::string::npos);
}

TEST_CASE("nested modalities ground to a polynomial game") {
  Lpe lpe = parse_lpe("proc L(s : Nat) = sum n : Nat . (n < 10) -> a . L(n);");
  Pbes core = core_of(encode_with_evidence(lpe, parse_formula("nu X . <a> <a> <a> <a> <a> [a] X"), nat(0)));
  ParityGame g = instantiate(core);
  CHECK(g.instance_count() == 10);
  CHECK(g.vertex_count() < 1000);
  GameSolution sol = zielonka(g);
  CHECK(sol.winner[g.initial] == Player::Even);
  CHECK(validate_evidence_graph(extract_evidence_graph(g, sol, Polarity::Proof), core).empty());
}
