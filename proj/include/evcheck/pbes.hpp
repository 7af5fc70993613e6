#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "evcheck/formula.hpp"
#include "evcheck/kernel.hpp"

namespace evcheck {

enum class PfOp : std::uint8_t { Data, Call, And, Or, Exists, Forall };

struct PfNode;
using PredicateFormula = std::shared_ptr<const PfNode>;

struct PfNode {
  PfOp op;
  Term data;                               // Data
  std::string name;                        // Call: predicate variable; Exists/Forall: bound variable
  Sort sort = Sort::Nat;                   // Exists/Forall
  std::vector<Term> args;                  // Call
  std::vector<PredicateFormula> children;  // And/Or: operands (n-ary); Exists/Forall: body
};

namespace pf {
PredicateFormula data(Term t);
PredicateFormula truth(bool b);
PredicateFormula call(std::string var, std::vector<Term> args);
PredicateFormula conj(PredicateFormula a, PredicateFormula b);
PredicateFormula disj(PredicateFormula a, PredicateFormula b);
PredicateFormula conj(std::vector<PredicateFormula> operands);
PredicateFormula disj(std::vector<PredicateFormula> operands);
PredicateFormula exists(std::string var, Sort sort, PredicateFormula body);
PredicateFormula forall(std::string var, Sort sort, PredicateFormula body);
}  // namespace pf

bool is_true(const PredicateFormula& f);
bool is_false(const PredicateFormula& f);

std::string to_string(const PredicateFormula& f);

std::set<std::string> free_data_vars(const PredicateFormula& f);
/// Predicate variables occurring in f (occ).
std::set<std::string> occurring_vars(const PredicateFormula& f);

/// Capture-avoiding substitution of a data term for a data variable;
/// binders that would capture a free variable of `replacement` are renamed.
PredicateFormula substitute(const PredicateFormula& f, std::string_view name, const Term& replacement);

/// Boolean constant folding: flattens nested And/Or, drops neutral operands,
/// short-circuits absorbing ones, folds closed data, and drops quantifiers
/// whose variable does not occur in the body.
PredicateFormula simplify(const PredicateFormula& f);

/// Replaces calls for which `decide(var)` returns a value by that constant,
/// then simplifies.
PredicateFormula replace_calls(const PredicateFormula& f,
                               const std::function<std::optional<bool>(const std::string&)>& decide);

enum class EquationRole : std::uint8_t { Plain, ZPlus, ZMinus };

struct Parameter {
  std::string name;
  Sort sort;
};

struct Equation {
  Fixpoint fixpoint;
  std::string var;
  std::vector<Parameter> params;
  PredicateFormula rhs;
  /// Evidence bookkeeping: Z-equations carry their action label.
  EquationRole role = EquationRole::Plain;
  std::string action;
};

/// X(v): `var` indexes the equation list of the owning Pbes.
struct Instance {
  std::uint32_t var = 0;
  Args args;

  friend bool operator==(const Instance& a, const Instance& b) { return a.var == b.var && a.args == b.args; }
  std::size_t hash() const noexcept;
};

struct InstanceHash {
  std::size_t operator()(const Instance& i) const noexcept { return i.hash(); }
};

struct Pbes {
  std::vector<Equation> equations;
  Instance initial;

  /// Index of the equation defining `var`.
  std::optional<std::uint32_t> find(std::string_view var) const;
  /// Throws ErrorKind::UnknownVariable.
  std::uint32_t index_of(std::string_view var) const;
};

std::string to_string(const Pbes& p, const Instance& i);

/// Throws IllFormed when an equation is defined twice, a call targets an
/// unbound variable, a call has the wrong arity or sorts, a right-hand side
/// has free data variables besides its parameters, or the initial instance
/// does not fit its equation.
void check_pbes(const Pbes& p);

/// Minimal ranks in equation order: even iff nu, starting at 0 for a leading
/// nu and 1 for a leading mu, incremented at each alternation.
std::vector<std::uint32_t> ranks(const Pbes& p);
/// Throws ErrorKind::UnknownVariable.
std::uint32_t rank(const Pbes& p, std::string_view var);

/// eta: explicit assignment plus a default for all other instances.
class PredicateEnvironment {
 public:
  explicit PredicateEnvironment(bool fallback = false) : fallback_(fallback) {}

  void set(const Instance& i, bool value) { values_[i] = value; }
  bool get(const Instance& i) const;
  bool fallback() const noexcept { return fallback_; }
  const std::unordered_map<Instance, bool, InstanceHash>& explicit_values() const { return values_; }

 private:
  std::unordered_map<Instance, bool, InstanceHash> values_;
  bool fallback_;
};

/// [[f]] eta delta. Calls are resolved against `p`.
bool eval_predicate_formula(const Pbes& p, const PredicateFormula& f, const PredicateEnvironment& eta,
                            const DataEnvironment& delta, const Bounds& bounds = {});

/// Binds the parameters of equation `var` to `args`.
DataEnvironment bind_parameters(const Equation& eq, const Args& args);

/// Quantifier range for `exists d . body` (positive=true) or `forall d . body`.
/// Guards are the data conjuncts of an existential body, and the negated data
/// disjuncts (or implication premises) of a universal one.
std::vector<Value> quantifier_range(const PfNode& quantifier, const DataEnvironment& env, const Bounds& bounds);

/// Naive nested fixpoint iteration over every instance reachable from the
/// initial one. The returned environment lists all reachable instances.
PredicateEnvironment brute_force_solve(const Pbes& p, const Bounds& bounds = {});

/// Text dump, one equation per line: `mu X(s: Nat) = rhs;` then `init X(1);`.
std::string dump_pbes(const Pbes& p);
/// Inverse of dump_pbes. Equations named Zp_<a>/Zm_<a> with true/false right
/// hand sides regain their evidence roles.
Pbes parse_pbes(std::string_view text);

}  // namespace evcheck
