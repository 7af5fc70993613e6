#include <doctest.h>

#include "evcheck/error.hpp"
#include "support.hpp"

using namespace evcheck;
using testing::nat;
using testing::term;

namespace {
const syntax::Scope kSN{{"s", Sort::Nat}, {"n", Sort::Nat}};
}

TEST_CASE("eval: equality, guards, truncating minus") {
  DataEnvironment env = update({}, "s", nat(1));
  CHECK(eval_bool(term("s == 1", kSN), env));
  CHECK(eval_bool(term("0 < n && n < 3", kSN), update({}, "n", nat(2))));
  CHECK(eval_term(term("s - n", kSN), update(env, "n", nat(2))) == nat(0));
}

TEST_CASE("monus agrees with max(0, a - b) for a, b <= 20") {
  Term t = term("s - n", kSN);
  for (std::uint64_t a = 0; a <= 20; ++a) {
    for (std::uint64_t b = 0; b <= 20; ++b) {
      DataEnvironment env = update(update({}, "s", nat(a)), "n", nat(b));
      CHECK(eval_term(t, env) == nat(a > b ? a - b : 0));
    }
  }
}

TEST_CASE("naturals do not overflow") {
  Term big = Term::natural(Natural::parse("18446744073709551615"));
  Value v = eval_term(Term::plus(big, Term::natural(1)), {});
  CHECK(v.to_string() == "18446744073709551616");
  CHECK(eval_term(Term::minus(Term::plus(big, Term::natural(1)), big), {}) == nat(1));
}

TEST_CASE("environment update is persistent") {
  DataEnvironment e1 = update({}, "s", nat(1));
  CHECK(e1.lookup("s") == nat(1));
  DataEnvironment e2 = update(e1, "s", nat(3));
  CHECK(e2.lookup("s") == nat(3));
  CHECK(e1.lookup("s") == nat(1));
  DataEnvironment e3 = update(e1, "n", nat(2));
  CHECK(e3.lookup("s") == nat(1));
  CHECK(e1.find("n") == nullptr);
}

TEST_CASE("unbound variables are errors") {
  try {
    eval_term(Term::var("m", Sort::Nat), {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnboundVariable);
  }
}

TEST_CASE("ill-sorted terms are rejected") {
  CHECK_THROWS_AS(Term::plus(Term::boolean(true), Term::natural(1)), Error);
  CHECK_THROWS_AS(Term::land(Term::natural(0), Term::boolean(true)), Error);
  CHECK_THROWS_AS(Term::eq(Term::natural(0), Term::boolean(true)), Error);
}

TEST_CASE("free_vars") {
  CHECK(free_vars(term("s + n", kSN)) == std::set<std::string>{"s", "n"});
  CHECK(free_vars(term("true", kSN)).empty());
  CHECK(free_vars(term("s == 1 && 0 < n", kSN)) == std::set<std::string>{"s", "n"});
}

TEST_CASE("evaluation ignores bindings of non-free variables") {
  Term t = term("s + 2 < 5 || !(s == 0)", kSN);
  for (std::uint64_t s = 0; s < 6; ++s) {
    DataEnvironment env = update({}, "s", nat(s));
    bool base = eval_bool(t, env);
    CHECK(eval_bool(t, update(env, "n", nat(s * 7))) == base);
    CHECK(eval_bool(t, env) == base);
  }
}

TEST_CASE("enumerate_domain uses syntactic guards") {
  std::vector<Term> guards;
  collect_conjuncts(term("0 < n && n < 3", kSN), guards);
  auto vs = enumerate_domain("n", Sort::Nat, guards, {}, {});
  REQUIRE(vs.size() == 2);
  CHECK(vs[0] == nat(1));
  CHECK(vs[1] == nat(2));
  CHECK(enumerate_domain("b", Sort::Bool, {}, {}, {}).size() == 2);
  try {
    enumerate_domain("n", Sort::Nat, {}, {}, {});
    FAIL("expected BoundExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundExceeded);
  }
  guards.clear();
  collect_conjuncts(term("n < 20", kSN), guards);
  CHECK_THROWS_AS(enumerate_domain("n", Sort::Nat, guards, {}, Bounds{10, 100}), Error);
}

TEST_CASE("simplify folds closed subterms") {
  CHECK(simplify(term("1 + 1 == 2 && s < 4", kSN)) == term("s < 4", kSN));
  CHECK(simplify(term("false && s < 4", kSN)).is_false());
}
