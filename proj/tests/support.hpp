#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "evcheck/encode.hpp"
#include "evcheck/evidence.hpp"
#include "evcheck/formula.hpp"
#include "evcheck/graphs.hpp"
#include "evcheck/model.hpp"
#include "evcheck/pbes.hpp"
#include "evcheck/solve.hpp"
#include "evcheck/syntax.hpp"
#include "evcheck/transform.hpp"

namespace testing {

using namespace evcheck;

inline Value nat(std::uint64_t n) { return Value::natural(Natural(n)); }

inline Args args(std::initializer_list<std::uint64_t> xs) {
  Args a;
  for (auto x : xs) a.push_back(nat(x));
  return a;
}

inline Instance inst(const Pbes& p, const std::string& var, std::initializer_list<std::uint64_t> xs) {
  return Instance{p.index_of(var), args(xs)};
}

inline Term term(const std::string& text, const syntax::Scope& scope) {
  syntax::TokenStream ts(syntax::tokenize(text));
  return syntax::to_term(*syntax::parse_expr(ts), scope);
}

// Running example, parameterised by M.
inline std::string running_lpe(unsigned m) {
  const std::string M = std::to_string(m);
  return "proc L(s : Nat) =\n"
         "    sum n : Nat . (s == 1 && 0 < n < " + M + ") -> a . L(s + n)\n"
         "  + sum n : Nat . (0 < n < s < " + M + ") -> b . L(s - n)\n"
         "  + (s == " + M + ") -> c . L(s);\n"
         "init L(1);\n";
}

inline const char* const kRunningFormula = "mu X . (<a> X || <b> X || nu Y . <c> Y)";

// The plain encoding of the running example (M = 3) written by hand.
inline const char* const kCorePbes =
    "mu X(s: Nat) = (exists n: Nat . (s == 1 && 0 < n && n < 3 && X(s + n)))"
    " || (exists n: Nat . (0 < n && n < s && s < 3 && X(s - n))) || Y(s);\n"
    "nu Y(s: Nat) = s == 3 && Y(s);\n"
    "init X(1);\n";

inline Lpe running(unsigned m = 3) { return parse_lpe(running_lpe(m)); }

inline Pbes running_evidence(unsigned m = 3) {
  return encode_with_evidence(running(m), parse_formula(kRunningFormula), nat(1));
}

inline EvidenceGraph make_graph(Polarity pol, std::vector<Instance> vertices,
                                std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  EvidenceGraph g;
  g.polarity = pol;
  g.vertices = std::move(vertices);
  g.edges = std::move(edges);
  g.root = 0;
  return g;
}

// Random bounded models and formulas. States stay below `states` because
// every next-state is either a constant, the summation variable (bounded by
// its guard) or s itself.
struct RandomCase {
  std::string lpe_text;
  std::string formula_text;
  std::uint64_t init;
};

class CaseGenerator {
 public:
  explicit CaseGenerator(std::uint64_t seed) : rng_(seed) {}

  RandomCase next() {
    RandomCase c;
    const unsigned states = pick(2, 6);
    const std::vector<std::string> acts = {"a", "b", "c"};
    const unsigned nacts = pick(1, 3);
    c.lpe_text = "act ";
    for (unsigned i = 0; i < nacts; ++i) c.lpe_text += (i ? ", " : "") + acts[i];
    c.lpe_text += ";\nproc L(s : Nat) =\n";
    const unsigned nsum = pick(0, 5);
    if (nsum == 0) c.lpe_text += "  delta";
    for (unsigned i = 0; i < nsum; ++i) {
      c.lpe_text += i ? "\n  + " : "    ";
      c.lpe_text += summand(acts[pick(0, nacts - 1)], states, i == 0);
    }
    c.lpe_text += ";\ninit L(0);\n";
    c.init = pick(0, states - 1);
    std::vector<std::string> scope;
    std::vector<std::string> used(acts.begin(), acts.begin() + nacts);
    binders_ = 0;
    c.formula_text = fixpoint(scope, used, 5);
    return c;
  }

 private:
  unsigned pick(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng_); }
  bool coin() { return pick(0, 1) == 1; }

  std::string state_guard(unsigned states) {
    const std::string k = std::to_string(pick(0, states - 1));
    switch (pick(0, 6)) {
      case 0: return "s == " + k;
      case 1: return "s < " + k;
      case 2: return k + " < s";
      case 3: return "!(s == " + k + ")";
      default: return "true";
    }
  }

  std::string summand(const std::string& act, unsigned states, bool broad) {
    const std::string k = std::to_string(pick(0, states - 1));
    switch (broad ? 3 : pick(0, 3)) {
      case 0:  // jump to any n in a window
        return "sum n : Nat . (n < " + std::to_string(states) + " && " + state_guard(states) + " && " +
               (coin() ? "s < n" : "!(n == s)") + ") -> " + act + " . L(n)";
      case 1: return "(" + state_guard(states) + ") -> " + act + " . L(" + k + ")";
      case 2: return "(" + state_guard(states) + ") -> " + act + " . L(s)";
      default:
        return "sum n : Nat . (n < " + std::to_string(states) + " && " + state_guard(states) + ") -> " + act +
               " . L(n)";
    }
  }

  std::string fixpoint(std::vector<std::string>& scope, const std::vector<std::string>& acts, int depth) {
    const std::string var = "V" + std::to_string(binders_++);
    scope.push_back(var);
    std::string body = compound(scope, acts, depth);
    scope.pop_back();
    return std::string(coin() ? "mu " : "nu ") + var + " . " + body;
  }

  std::string leaf(const std::vector<std::string>& scope) {
    if (scope.empty() || pick(0, 5) == 0) return coin() ? "true" : "false";
    return scope[pick(0, scope.size() - 1)];
  }

  // Never a bare leaf, so fixpoint bodies always make progress.
  std::string compound(std::vector<std::string>& scope, const std::vector<std::string>& acts, int depth) {
    const std::string& a = acts[pick(0, acts.size() - 1)];
    switch (pick(0, 9)) {
      case 0:
      case 1: return "(" + formula(scope, acts, depth - 1) + " && " + formula(scope, acts, depth - 1) + ")";
      case 2:
      case 3: return "(" + formula(scope, acts, depth - 1) + " || " + formula(scope, acts, depth - 1) + ")";
      case 4:
      case 5:
      case 6: return "<" + a + "> " + formula(scope, acts, depth - 1);
      default: return "[" + a + "] " + formula(scope, acts, depth - 1);
    }
  }

  std::string formula(std::vector<std::string>& scope, const std::vector<std::string>& acts, int depth) {
    if (depth <= 0) return leaf(scope);
    const unsigned choice = pick(0, 9);
    if (choice < 2) return leaf(scope);
    if (choice < 4 && binders_ < 4) return "(" + fixpoint(scope, acts, depth - 1) + ")";
    return compound(scope, acts, depth);
  }

  std::mt19937_64 rng_;
  unsigned binders_ = 0;
};

}  // namespace testing
