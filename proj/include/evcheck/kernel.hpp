#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "evcheck/natural.hpp"

namespace evcheck {

enum class Sort : std::uint8_t { Bool, Nat };

const char* to_string(Sort sort);

/// A closed data value of sort Bool or Nat.
class Value {
 public:
  Value() : Value(false) {}

  static Value boolean(bool b) { return Value(b); }
  static Value natural(Natural n) { return Value(std::move(n)); }

  Sort sort() const noexcept { return sort_; }
  bool is_bool() const noexcept { return sort_ == Sort::Bool; }
  bool is_nat() const noexcept { return sort_ == Sort::Nat; }

  /// Precondition: is_bool().
  bool as_bool() const noexcept { return boolean_; }
  /// Precondition: is_nat().
  const Natural& as_nat() const noexcept { return nat_; }

  friend bool operator==(const Value& a, const Value& b);
  /// Total order: all booleans (false < true) before all naturals.
  friend bool operator<(const Value& a, const Value& b);

  std::string to_string() const;
  std::size_t hash() const noexcept;

 private:
  explicit Value(bool b) : sort_(Sort::Bool), boolean_(b) {}
  explicit Value(Natural n) : sort_(Sort::Nat), nat_(std::move(n)) {}

  Sort sort_;
  bool boolean_ = false;
  Natural nat_;
};

/// Argument tuple of a predicate-variable instance or a Z-variable.
using Args = boost::container::small_vector<Value, 2>;

std::size_t hash_args(const Args& args) noexcept;
std::string to_string(const Args& args);

enum class TermOp : std::uint8_t { Const, Var, Eq, Less, Plus, Minus, And, Or, Not, Implies };

struct TermNode;

/// Immutable, well-sorted data expression over Bool and Nat.
///
/// Construction goes through the static factories, which reject ill-sorted
/// trees with ErrorKind::SortMismatch.
class Term {
 public:
  Term() = default;

  static Term constant(Value v);
  static Term boolean(bool b) { return constant(Value::boolean(b)); }
  static Term natural(Natural n) { return constant(Value::natural(std::move(n))); }
  static Term var(std::string name, Sort sort);
  static Term eq(Term a, Term b);
  static Term less(Term a, Term b);
  static Term plus(Term a, Term b);
  /// Truncating subtraction.
  static Term minus(Term a, Term b);
  static Term land(Term a, Term b);
  static Term lor(Term a, Term b);
  static Term lnot(Term a);
  static Term implies(Term a, Term b);

  bool valid() const noexcept { return node_ != nullptr; }
  TermOp op() const;
  Sort sort() const;
  /// Const only.
  const Value& value() const;
  /// Var only.
  const std::string& name() const;
  /// Binary operators: lhs/rhs; Not: lhs only.
  const Term& lhs() const;
  const Term& rhs() const;

  bool is_constant() const { return valid() && op() == TermOp::Const; }
  bool is_true() const { return is_constant() && value().is_bool() && value().as_bool(); }
  bool is_false() const { return is_constant() && value().is_bool() && !value().as_bool(); }

  /// Structural equality.
  friend bool operator==(const Term& a, const Term& b);

  std::string to_string() const;

 private:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermOp op;
  Sort sort;
  Value value;
  std::string name;
  Term lhs;
  Term rhs;
};

/// Persistent mapping from variable names to values (the data environment).
///
/// update() returns a new environment sharing structure with the old one;
/// the receiver is never modified.
class DataEnvironment {
 public:
  DataEnvironment() = default;

  DataEnvironment update(std::string name, Value value) const;
  /// nullptr when unbound.
  const Value* find(std::string_view name) const;
  /// Throws ErrorKind::UnboundVariable.
  const Value& lookup(std::string_view name) const;
  bool empty() const noexcept { return head_ == nullptr; }

 private:
  struct Binding {
    std::string name;
    Value value;
    std::shared_ptr<const Binding> next;
  };
  std::shared_ptr<const Binding> head_;
};

inline DataEnvironment update(const DataEnvironment& env, std::string name, Value value) {
  return env.update(std::move(name), std::move(value));
}

Value eval_term(const Term& t, const DataEnvironment& env);
bool eval_bool(const Term& t, const DataEnvironment& env);

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, std::string_view name);

/// Capture-free substitution of `replacement` for free occurrences of `name`
/// (terms have no binders, so this is plain replacement).
Term substitute(const Term& t, std::string_view name, const Term& replacement);

/// Constant folding; also evaluates closed subterms.
Term simplify(const Term& t);

/// Resource bounds shared by exploration, quantifier enumeration and
/// instantiation.
struct Bounds {
  std::uint64_t quantifier_cap = 10'000;
  std::uint64_t max_vertices = 10'000'000;
};

/// Enumerates the values a bound variable ranges over.
///
/// Bool variables range over {false, true}. Nat variables need a syntactic
/// upper bound: some guard conjunct of the form `v < t`, `t > v` or `v == t`
/// where t does not mention v and evaluates under `env`. Conjuncts `t < v`
/// raise the lower end of the range. Missing bounds and ranges wider than
/// bounds.quantifier_cap raise ErrorKind::BoundExceeded.
std::vector<Value> enumerate_domain(const std::string& name, Sort sort,
                                    const std::vector<Term>& guards,
                                    const DataEnvironment& env, const Bounds& bounds);

/// Appends the top-level conjuncts of a Bool term.
void collect_conjuncts(const Term& t, std::vector<Term>& out);

}  // namespace evcheck

template <>
struct std::hash<evcheck::Value> {
  std::size_t operator()(const evcheck::Value& v) const noexcept { return v.hash(); }
};
