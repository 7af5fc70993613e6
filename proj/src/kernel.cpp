#include "evcheck/kernel.hpp"

#include <algorithm>
#include <optional>

#include "evcheck/error.hpp"

namespace evcheck {

const char* to_string(Sort sort) { return sort == Sort::Bool ? "Bool" : "Nat"; }

bool operator==(const Value& a, const Value& b) {
  if (a.sort_ != b.sort_) return false;
  return a.is_bool() ? a.boolean_ == b.boolean_ : a.nat_ == b.nat_;
}

bool operator<(const Value& a, const Value& b) {
  if (a.sort_ != b.sort_) return a.is_bool();
  return a.is_bool() ? a.boolean_ < b.boolean_ : a.nat_ < b.nat_;
}

std::string Value::to_string() const {
  if (is_bool()) return boolean_ ? "true" : "false";
  return nat_.to_string();
}

std::size_t Value::hash() const noexcept {
  return is_bool() ? (boolean_ ? 0x9e3779b97f4a7c15ULL : 0x7f4a7c159e3779b9ULL) : nat_.hash();
}

std::size_t hash_args(const Args& args) noexcept {
  std::size_t h = args.size();
  for (const Value& v : args) h ^= v.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string to_string(const Args& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i].to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Term construction

namespace {


void require(const Term& t, Sort sort, const char* what) {
  if (!t.valid()) throw Error(ErrorKind::Internal, std::string("null operand of ") + what);
  if (t.sort() != sort) {
    throw Error(ErrorKind::SortMismatch, std::string("operand of ") + what + " must be " +
                                             to_string(sort) + ", got " + t.to_string());
  }
}

}  // namespace

Term Term::constant(Value v) {
  Term t(std::make_shared<const TermNode>(TermNode{TermOp::Const, v.sort(), v, {}, {}, {}}));
  return t;
}

Term Term::var(std::string name, Sort sort) {
  return Term(std::make_shared<const TermNode>(
      TermNode{TermOp::Var, sort, Value{}, std::move(name), {}, {}}));
}

Term Term::eq(Term a, Term b) {
  if (!a.valid() || !b.valid()) throw Error(ErrorKind::Internal, "null operand of ==");
  if (a.sort() != b.sort()) {
    throw Error(ErrorKind::SortMismatch,
                "operands of == have different sorts: " + a.to_string() + ", " + b.to_string());
  }
  return Term(std::make_shared<const TermNode>(
      TermNode{TermOp::Eq, Sort::Bool, Value{}, {}, std::move(a), std::move(b)}));
}

Term Term::less(Term a, Term b) {
  require(a, Sort::Nat, "<");
  require(b, Sort::Nat, "<");
  return Term(std::make_shared<const TermNode>(
      TermNode{TermOp::Less, Sort::Bool, Value{}, {}, std::move(a), std::move(b)}));
}

Term Term::plus(Term a, Term b) {
  require(a, Sort::Nat, "+");
  require(b, Sort::Nat, "+");
  return Term(std::make_shared<const TermNode>(
      TermNode{TermOp::Plus, Sort::Nat, Value{}, {}, std::move(a), std::move(b)}));
}

Term Term::minus(Term a, Term b) {
  require(a, Sort::Nat, "-");
  require(b, Sort::Nat, "-");
  return Term(std::make_shared<const TermNode>(
      TermNode{TermOp::Minus, Sort::Nat, Value{}, {}, std::move(a), std::move(b)}));
}

Term Term::land(Term a, Term b) {
  require(a, Sort::Bool, "&&");
  require(b, Sort::Bool, "&&");
  return Term(std::make_shared<const TermNode>(
      TermNode{TermOp::And, Sort::Bool, Value{}, {}, std::move(a), std::move(b)}));
}

Term Term::lor(Term a, Term b) {
  require(a, Sort::Bool, "||");
  require(b, Sort::Bool, "||");
  return Term(std::make_shared<const TermNode>(
      TermNode{TermOp::Or, Sort::Bool, Value{}, {}, std::move(a), std::move(b)}));
}

Term Term::lnot(Term a) {
  require(a, Sort::Bool, "!");
  return Term(std::make_shared<const TermNode>(
      TermNode{TermOp::Not, Sort::Bool, Value{}, {}, std::move(a), {}}));
}

Term Term::implies(Term a, Term b) {
  require(a, Sort::Bool, "=>");
  require(b, Sort::Bool, "=>");
  return Term(std::make_shared<const TermNode>(
      TermNode{TermOp::Implies, Sort::Bool, Value{}, {}, std::move(a), std::move(b)}));
}

TermOp Term::op() const { return node_->op; }
Sort Term::sort() const { return node_->sort; }
const Value& Term::value() const { return node_->value; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::lhs() const { return node_->lhs; }
const Term& Term::rhs() const { return node_->rhs; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.valid() || !b.valid()) return false;
  if (a.op() != b.op() || a.sort() != b.sort()) return false;
  switch (a.op()) {
    case TermOp::Const: return a.value() == b.value();
    case TermOp::Var: return a.name() == b.name();
    case TermOp::Not: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

int precedence(TermOp op) {
  switch (op) {
    case TermOp::Implies: return 1;
    case TermOp::Or: return 2;
    case TermOp::And: return 3;
    case TermOp::Eq:
    case TermOp::Less: return 4;
    case TermOp::Plus:
    case TermOp::Minus: return 5;
    case TermOp::Not: return 6;
    default: return 7;
  }
}

const char* symbol(TermOp op) {
  switch (op) {
    case TermOp::Eq: return " == ";
    case TermOp::Less: return " < ";
    case TermOp::Plus: return " + ";
    case TermOp::Minus: return " - ";
    case TermOp::And: return " && ";
    case TermOp::Or: return " || ";
    case TermOp::Implies: return " => ";
    default: return "?";
  }
}

// Fully parenthesises operands whose precedence is not strictly higher, so
// the output re-parses to the same tree regardless of associativity.
std::string print(const Term& t) {
  switch (t.op()) {
    case TermOp::Const: return t.value().to_string();
    case TermOp::Var: return t.name();
    case TermOp::Not: {
      std::string inner = print(t.lhs());
      if (precedence(t.lhs().op()) < precedence(TermOp::Not)) inner = "(" + inner + ")";
      return "!" + inner;
    }
    default: {
      auto side = [&](const Term& s) {
        std::string inner = print(s);
        return precedence(s.op()) <= precedence(t.op()) ? "(" + inner + ")" : inner;
      };
      return side(t.lhs()) + symbol(t.op()) + side(t.rhs());
    }
  }
}

}  // namespace

std::string Term::to_string() const { return valid() ? print(*this) : "<null>"; }

// ---------------------------------------------------------------------------
// Environments

DataEnvironment DataEnvironment::update(std::string name, Value value) const {
  DataEnvironment env;
  env.head_ = std::make_shared<const Binding>(Binding{std::move(name), std::move(value), head_});
  return env;
}

const Value* DataEnvironment::find(std::string_view name) const {
  for (const Binding* b = head_.get(); b != nullptr; b = b->next.get()) {
    if (b->name == name) return &b->value;
  }
  return nullptr;
}

const Value& DataEnvironment::lookup(std::string_view name) const {
  if (const Value* v = find(name)) return *v;
  throw Error(ErrorKind::UnboundVariable, "variable '" + std::string(name) + "' is unbound");
}

// ---------------------------------------------------------------------------
// Evaluation

Value eval_term(const Term& t, const DataEnvironment& env) {
  switch (t.op()) {
    case TermOp::Const: return t.value();
    case TermOp::Var: {
      const Value& v = env.lookup(t.name());
      if (v.sort() != t.sort()) {
        throw Error(ErrorKind::SortMismatch, "variable '" + t.name() + "' of sort " +
                                                 to_string(t.sort()) + " bound to " +
                                                 v.to_string());
      }
      return v;
    }
    case TermOp::Eq: return Value::boolean(eval_term(t.lhs(), env) == eval_term(t.rhs(), env));
    case TermOp::Less:
      return Value::boolean(eval_term(t.lhs(), env).as_nat() < eval_term(t.rhs(), env).as_nat());
    case TermOp::Plus:
      return Value::natural(eval_term(t.lhs(), env).as_nat() + eval_term(t.rhs(), env).as_nat());
    case TermOp::Minus:
      return Value::natural(
          monus(eval_term(t.lhs(), env).as_nat(), eval_term(t.rhs(), env).as_nat()));
    case TermOp::And: return Value::boolean(eval_bool(t.lhs(), env) && eval_bool(t.rhs(), env));
    case TermOp::Or: return Value::boolean(eval_bool(t.lhs(), env) || eval_bool(t.rhs(), env));
    case TermOp::Not: return Value::boolean(!eval_bool(t.lhs(), env));
    case TermOp::Implies:
      return Value::boolean(!eval_bool(t.lhs(), env) || eval_bool(t.rhs(), env));
  }
  throw Error(ErrorKind::Internal, "unknown term operator");
}

bool eval_bool(const Term& t, const DataEnvironment& env) {
  Value v = eval_term(t, env);
  if (!v.is_bool()) throw Error(ErrorKind::SortMismatch, "expected Bool: " + t.to_string());
  return v.as_bool();
}

namespace {

void collect_free(const Term& t, std::set<std::string>& out) {
  switch (t.op()) {
    case TermOp::Const: return;
    case TermOp::Var: out.insert(t.name()); return;
    case TermOp::Not: collect_free(t.lhs(), out); return;
    default:
      collect_free(t.lhs(), out);
      collect_free(t.rhs(), out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

bool occurs_free(const Term& t, std::string_view name) {
  switch (t.op()) {
    case TermOp::Const: return false;
    case TermOp::Var: return t.name() == name;
    case TermOp::Not: return occurs_free(t.lhs(), name);
    default: return occurs_free(t.lhs(), name) || occurs_free(t.rhs(), name);
  }
}

namespace {

Term rebuild(TermOp op, Term a, Term b) {
  switch (op) {
    case TermOp::Eq: return Term::eq(std::move(a), std::move(b));
    case TermOp::Less: return Term::less(std::move(a), std::move(b));
    case TermOp::Plus: return Term::plus(std::move(a), std::move(b));
    case TermOp::Minus: return Term::minus(std::move(a), std::move(b));
    case TermOp::And: return Term::land(std::move(a), std::move(b));
    case TermOp::Or: return Term::lor(std::move(a), std::move(b));
    case TermOp::Implies: return Term::implies(std::move(a), std::move(b));
    case TermOp::Not: return Term::lnot(std::move(a));
    default: throw Error(ErrorKind::Internal, "rebuild of leaf term");
  }
}

}  // namespace

Term substitute(const Term& t, std::string_view name, const Term& replacement) {
  switch (t.op()) {
    case TermOp::Const: return t;
    case TermOp::Var:
      if (t.name() != name) return t;
      if (replacement.sort() != t.sort()) {
        throw Error(ErrorKind::SortMismatch, "substituting " + replacement.to_string() +
                                                 " for " + t.name());
      }
      return replacement;
    case TermOp::Not: {
      Term a = substitute(t.lhs(), name, replacement);
      return a == t.lhs() ? t : Term::lnot(std::move(a));
    }
    default: {
      Term a = substitute(t.lhs(), name, replacement);
      Term b = substitute(t.rhs(), name, replacement);
      if (a == t.lhs() && b == t.rhs()) return t;
      return rebuild(t.op(), std::move(a), std::move(b));
    }
  }
}

Term simplify(const Term& t) {
  switch (t.op()) {
    case TermOp::Const:
    case TermOp::Var: return t;
    case TermOp::Not: {
      Term a = simplify(t.lhs());
      if (a.is_constant()) return Term::boolean(!a.value().as_bool());
      if (a.op() == TermOp::Not) return a.lhs();
      return Term::lnot(std::move(a));
    }
    default: break;
  }
  Term a = simplify(t.lhs());
  Term b = simplify(t.rhs());
  if (a.is_constant() && b.is_constant()) {
    return Term::constant(eval_term(rebuild(t.op(), a, b), DataEnvironment{}));
  }
  switch (t.op()) {
    case TermOp::And:
      if (a.is_false() || b.is_false()) return Term::boolean(false);
      if (a.is_true()) return b;
      if (b.is_true()) return a;
      break;
    case TermOp::Or:
      if (a.is_true() || b.is_true()) return Term::boolean(true);
      if (a.is_false()) return b;
      if (b.is_false()) return a;
      break;
    case TermOp::Implies:
      if (a.is_false() || b.is_true()) return Term::boolean(true);
      if (a.is_true()) return b;
      if (b.is_false()) return simplify(Term::lnot(a));
      break;
    default: break;
  }
  return rebuild(t.op(), std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// Quantifier enumeration

void collect_conjuncts(const Term& t, std::vector<Term>& out) {
  if (t.op() == TermOp::And) {
    collect_conjuncts(t.lhs(), out);
    collect_conjuncts(t.rhs(), out);
  } else {
    out.push_back(t);
  }
}

namespace {

bool is_var(const Term& t, const std::string& name) {
  return t.op() == TermOp::Var && t.name() == name;
}

std::optional<Natural> try_eval_nat(const Term& t, const std::string& name,
                                    const DataEnvironment& env) {
  if (occurs_free(t, name)) return std::nullopt;
  try {
    Value v = eval_term(t, env);
    if (v.is_nat()) return v.as_nat();
  } catch (const Error&) {
    // Mentions a variable that is not bound yet; not usable as a bound.
  }
  return std::nullopt;
}

}  // namespace

std::vector<Value> enumerate_domain(const std::string& name, Sort sort,
                                    const std::vector<Term>& guards,
                                    const DataEnvironment& env, const Bounds& bounds) {
  if (sort == Sort::Bool) return {Value::boolean(false), Value::boolean(true)};

  std::vector<Term> conjuncts;
  for (const Term& g : guards) collect_conjuncts(g, conjuncts);

  std::optional<Natural> upper;  // exclusive
  Natural lower = 0;
  for (const Term& c : conjuncts) {
    std::optional<Natural> exclusive;
    if (c.op() == TermOp::Less && is_var(c.lhs(), name)) {
      exclusive = try_eval_nat(c.rhs(), name, env);
    } else if (c.op() == TermOp::Less && is_var(c.rhs(), name)) {
      if (auto lo = try_eval_nat(c.lhs(), name, env)) lower = std::max(lower, *lo + 1);
    } else if (c.op() == TermOp::Eq && c.lhs().sort() == Sort::Nat) {
      std::optional<Natural> exact;
      if (is_var(c.lhs(), name)) exact = try_eval_nat(c.rhs(), name, env);
      else if (is_var(c.rhs(), name)) exact = try_eval_nat(c.lhs(), name, env);
      if (exact) {
        lower = std::max(lower, *exact);
        exclusive = *exact + 1;
      }
    }
    if (exclusive && (!upper || *exclusive < *upper)) upper = exclusive;
  }
  if (!upper) {
    throw Error(ErrorKind::BoundExceeded,
                "quantified variable '" + name + "' has no syntactic upper bound");
  }
  if (*upper <= lower) return {};
  Natural width = monus(*upper, lower);
  if (!width.is_small() || width.small() > bounds.quantifier_cap) {
    throw Error(ErrorKind::BoundExceeded, "range of '" + name + "' has " + width.to_string() +
                                              " values, cap is " +
                                              std::to_string(bounds.quantifier_cap));
  }
  std::vector<Value> out;
  out.reserve(width.small());
  Natural v = lower;
  for (std::uint64_t i = 0; i < width.small(); ++i) {
    out.push_back(Value::natural(v));
    v = v + 1;
  }
  return out;
}

}  // namespace evcheck
