#include <doctest.h>

#include "evcheck/error.hpp"
#include "support.hpp"

using namespace evcheck;
using testing::args;
using testing::inst;
using testing::nat;

namespace {

// Ranks by direct alternation counting: rank of equation i is the number of
// fixpoint switches before it, shifted by one when the first equation is mu.
std::vector<std::uint32_t> alternation_ranks(const std::vector<Fixpoint>& fs) {
  std::vector<std::uint32_t> out;
  std::uint32_t r = fs.empty() || fs[0] == Fixpoint::Nu ? 0 : 1;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i > 0 && fs[i] != fs[i - 1]) ++r;
    out.push_back(r);
  }
  return out;
}

Pbes chain(const std::vector<Fixpoint>& fs) {
  std::string text;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    text += std::string(to_string(fs[i])) + " X" + std::to_string(i) + "(d: Nat) = X" +
            std::to_string((i + 1) % fs.size()) + "(d);\n";
  }
  return parse_pbes(text + "init X0(0);");
}

}  // namespace

TEST_CASE("ranks") {
  Pbes core = parse_pbes(testing::kCorePbes);
  CHECK(rank(core, "X") == 1);
  CHECK(rank(core, "Y") == 2);
  CHECK(rank(parse_pbes("nu Z(d: Nat) = true; init Z(0);"), "Z") == 0);
  CHECK(ranks(chain({Fixpoint::Mu, Fixpoint::Nu, Fixpoint::Mu})) == std::vector<std::uint32_t>{1, 2, 3});
  CHECK_THROWS_AS(rank(core, "Q"), Error);
}

TEST_CASE("ranks match alternation counting on random orders") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Fixpoint> fs(1 + rng() % 8);
    for (auto& f : fs) f = rng() % 2 ? Fixpoint::Mu : Fixpoint::Nu;
    auto r = ranks(chain(fs));
    CHECK(r == alternation_ranks(fs));
    for (std::size_t i = 0; i < fs.size(); ++i) {
      CHECK((r[i] % 2 == 0) == (fs[i] == Fixpoint::Nu));
      if (i) CHECK(r[i] >= r[i - 1]);
    }
  }
}

TEST_CASE("eval_predicate_formula on the running example") {
  Pbes core = parse_pbes(testing::kCorePbes);
  const auto& phi_x = core.equations[core.index_of("X")].rhs;
  const auto& phi_y = core.equations[core.index_of("Y")].rhs;
  PredicateEnvironment eta;
  eta.set(inst(core, "Y", {3}), true);
  CHECK(eval_predicate_formula(core, phi_y, eta, update({}, "s", nat(3))));
  CHECK_FALSE(eval_predicate_formula(core, phi_y, eta, update({}, "s", nat(1))));
  PredicateEnvironment only_x3;
  only_x3.set(inst(core, "X", {3}), true);
  CHECK(eval_predicate_formula(core, phi_x, only_x3, update({}, "s", nat(1))));
  CHECK_FALSE(eval_predicate_formula(core, phi_x, PredicateEnvironment(false), update({}, "s", nat(1))));
  CHECK(eval_predicate_formula(core, phi_x, PredicateEnvironment(true), update({}, "s", nat(2))));
}

TEST_CASE("brute_force_solve") {
  Pbes core = parse_pbes(testing::kCorePbes);
  auto sol = brute_force_solve(core);
  CHECK(sol.get(inst(core, "X", {1})));
  CHECK(sol.get(inst(core, "X", {2})));
  CHECK(sol.get(inst(core, "X", {3})));
  CHECK(sol.get(inst(core, "Y", {3})));
  CHECK_FALSE(sol.get(inst(core, "Y", {1})));
  CHECK_FALSE(sol.get(inst(core, "Y", {2})));
  CHECK(sol.explicit_values().size() == 6);

  Pbes nu_true = parse_pbes("nu Z(d: Nat) = true; init Z(4);");
  CHECK(brute_force_solve(nu_true).get(inst(nu_true, "Z", {4})));
  Pbes mu_id = parse_pbes("mu Z(d: Nat) = Z(d); init Z(4);");
  CHECK_FALSE(brute_force_solve(mu_id).get(inst(mu_id, "Z", {4})));
  Pbes nu_id = parse_pbes("nu Z(d: Nat) = Z(d); init Z(4);");
  CHECK(brute_force_solve(nu_id).get(inst(nu_id, "Z", {4})));
}

TEST_CASE("brute_force_solve: nested alternation") {
  // nu X . mu Y . (a-loop visiting 0 infinitely often): on a 0 <-> 1 cycle,
  // "infinitely often at 0" holds.
  Pbes p = parse_pbes(
      "nu X(s: Nat) = Y(s);\n"
      "mu Y(s: Nat) = (s == 0 && X(1)) || (s == 1 && Y(0));\n"
      "init X(0);");
  CHECK(brute_force_solve(p).get(inst(p, "X", {0})));
  Pbes q = parse_pbes(
      "mu X(s: Nat) = Y(s);\n"
      "nu Y(s: Nat) = (s == 0 && X(1)) || (s == 1 && Y(0));\n"
      "init X(0);");
  CHECK_FALSE(brute_force_solve(q).get(inst(q, "X", {0})));
}

TEST_CASE("check_pbes rejects malformed systems") {
  Pbes core = parse_pbes(testing::kCorePbes);
  check_pbes(core);
  Pbes dropped = core;
  dropped.equations.pop_back();
  CHECK_THROWS_AS(check_pbes(dropped), Error);
  Pbes twice = core;
  twice.equations.push_back(core.equations[0]);
  CHECK_THROWS_AS(check_pbes(twice), Error);
  Pbes arity = core;
  arity.equations[1].rhs = pf::call("Y", {});
  CHECK_THROWS_AS(check_pbes(arity), Error);
  Pbes open = core;
  open.equations[1].rhs = pf::data(Term::eq(Term::var("q", Sort::Nat), Term::natural(1)));
  CHECK_THROWS_AS(check_pbes(open), Error);
  Pbes bad_init = core;
  bad_init.initial.args = args({1, 2});
  CHECK_THROWS_AS(check_pbes(bad_init), Error);
}

TEST_CASE("dump and parse round-trip") {
  Pbes e = testing::running_evidence();
  std::string text = dump_pbes(e);
  Pbes back = parse_pbes(text);
  CHECK(dump_pbes(back) == text);
  CHECK(evidence_variables(back).plus.size() == 3);
  CHECK(back.equations[2].role == EquationRole::ZPlus);
  CHECK(back.equations[7].role == EquationRole::ZMinus);
}

TEST_CASE("substitution avoids capture") {
  auto f = pf::exists("n", Sort::Nat,
                      pf::data(Term::land(Term::less(Term::var("n", Sort::Nat), Term::natural(2)),
                                          Term::eq(Term::var("s", Sort::Nat), Term::var("n", Sort::Nat)))));
  auto g = substitute(f, "s", Term::var("n", Sort::Nat));
  CHECK(free_data_vars(g) == std::set<std::string>{"n"});
  CHECK(g->name != "n");
}

TEST_CASE("simplify folds and flattens") {
  auto x = pf::call("X", {Term::natural(1)});
  CHECK(is_true(simplify(pf::disj(pf::truth(true), x))));
  CHECK(to_string(simplify(pf::conj(pf::truth(true), x))) == to_string(x));
  CHECK(is_false(simplify(pf::conj(pf::data(Term::eq(Term::natural(1), Term::natural(2))), x))));
  auto vacuous = simplify(pf::exists("n", Sort::Nat, x));
  CHECK(vacuous->op == PfOp::Call);
  auto nested = simplify(pf::conj(pf::conj(x, x), pf::conj(x, x)));
  CHECK(nested->op == PfOp::And);
  CHECK(nested->children.size() == 4);
}

TEST_CASE("quantifier ranges come from guards") {
  Pbes p = parse_pbes(
      "nu X(s: Nat) = forall n: Nat . (!(n < 3) || X(n));\n"
      "init X(0);");
  auto sol = brute_force_solve(p);
  CHECK(sol.explicit_values().size() == 3);
  Pbes unbounded = parse_pbes("nu X(s: Nat) = forall n: Nat . X(n); init X(0);");
  try {
    brute_force_solve(unbounded);
    FAIL("expected BoundExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundExceeded);
  }
}
