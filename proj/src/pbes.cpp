#include "evcheck/pbes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "evcheck/error.hpp"
#include "evcheck/syntax.hpp"

namespace evcheck {

namespace pf {

namespace {
PredicateFormula make(PfNode n) { return std::make_shared<const PfNode>(std::move(n)); }

PredicateFormula nary(PfOp op, std::vector<PredicateFormula> operands) {
  if (operands.empty()) return truth(op == PfOp::And);
  if (operands.size() == 1) return operands.front();
  PfNode n{op, {}, {}, Sort::Nat, {}, std::move(operands)};
  return make(std::move(n));
}
}  // namespace

PredicateFormula data(Term t) {
  if (t.sort() != Sort::Bool) throw Error(ErrorKind::SortMismatch, "data formula must be Bool: " + t.to_string());
  return make(PfNode{PfOp::Data, std::move(t), {}, Sort::Nat, {}, {}});
}
PredicateFormula truth(bool b) { return data(Term::boolean(b)); }
PredicateFormula call(std::string var, std::vector<Term> args) {
  return make(PfNode{PfOp::Call, {}, std::move(var), Sort::Nat, std::move(args), {}});
}
PredicateFormula conj(PredicateFormula a, PredicateFormula b) { return nary(PfOp::And, {std::move(a), std::move(b)}); }
PredicateFormula disj(PredicateFormula a, PredicateFormula b) { return nary(PfOp::Or, {std::move(a), std::move(b)}); }
PredicateFormula conj(std::vector<PredicateFormula> operands) { return nary(PfOp::And, std::move(operands)); }
PredicateFormula disj(std::vector<PredicateFormula> operands) { return nary(PfOp::Or, std::move(operands)); }
PredicateFormula exists(std::string var, Sort sort, PredicateFormula body) {
  return make(PfNode{PfOp::Exists, {}, std::move(var), sort, {}, {std::move(body)}});
}
PredicateFormula forall(std::string var, Sort sort, PredicateFormula body) {
  return make(PfNode{PfOp::Forall, {}, std::move(var), sort, {}, {std::move(body)}});
}

}  // namespace pf

bool is_true(const PredicateFormula& f) { return f->op == PfOp::Data && f->data.is_true(); }
bool is_false(const PredicateFormula& f) { return f->op == PfOp::Data && f->data.is_false(); }

namespace {

void print(const PredicateFormula& f, std::string& out) {
  switch (f->op) {
    case PfOp::Data: {
      std::string s = f->data.to_string();
      bool atomic = f->data.op() == TermOp::Const || f->data.op() == TermOp::Var || s.front() == '(';
      out += atomic ? s : "(" + s + ")";
      return;
    }
    case PfOp::Call:
      out += f->name + "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += ", ";
        out += f->args[i].to_string();
      }
      out += ")";
      return;
    case PfOp::And:
    case PfOp::Or:
      out += "(";
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        if (i) out += f->op == PfOp::And ? " && " : " || ";
        print(f->children[i], out);
      }
      out += ")";
      return;
    case PfOp::Exists:
    case PfOp::Forall:
      out += f->op == PfOp::Exists ? "(exists " : "(forall ";
      out += f->name + ": " + to_string(f->sort) + " . ";
      print(f->children[0], out);
      out += ")";
      return;
  }
}

void collect_free(const PredicateFormula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  auto add = [&](const Term& t) {
    for (const std::string& v : free_vars(t)) {
      if (!bound.count(v)) out.insert(v);
    }
  };
  switch (f->op) {
    case PfOp::Data: add(f->data); return;
    case PfOp::Call:
      for (const Term& t : f->args) add(t);
      return;
    case PfOp::And:
    case PfOp::Or:
      for (const auto& c : f->children) collect_free(c, bound, out);
      return;
    case PfOp::Exists:
    case PfOp::Forall: {
      bool fresh = bound.insert(f->name).second;
      collect_free(f->children[0], bound, out);
      if (fresh) bound.erase(f->name);
      return;
    }
  }
}

void collect_occ(const PredicateFormula& f, std::set<std::string>& out) {
  if (f->op == PfOp::Call) out.insert(f->name);
  for (const auto& c : f->children) collect_occ(c, out);
}

PredicateFormula with_children(const PredicateFormula& f, std::vector<PredicateFormula> children) {
  PfNode n = *f;
  n.children = std::move(children);
  return std::make_shared<const PfNode>(std::move(n));
}

void collect_names(const PredicateFormula& f, std::set<std::string>& out) {
  auto add = [&](const Term& t) {
    for (const std::string& v : free_vars(t)) out.insert(v);
  };
  if (f->op == PfOp::Data) add(f->data);
  for (const Term& t : f->args) add(t);
  if (f->op == PfOp::Exists || f->op == PfOp::Forall) out.insert(f->name);
  for (const auto& c : f->children) collect_names(c, out);
}

}  // namespace

std::string to_string(const PredicateFormula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::set<std::string> free_data_vars(const PredicateFormula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> occurring_vars(const PredicateFormula& f) {
  std::set<std::string> out;
  collect_occ(f, out);
  return out;
}

PredicateFormula substitute(const PredicateFormula& f, std::string_view name, const Term& replacement) {
  switch (f->op) {
    case PfOp::Data: return pf::data(substitute(f->data, name, replacement));
    case PfOp::Call: {
      std::vector<Term> args;
      args.reserve(f->args.size());
      for (const Term& t : f->args) args.push_back(substitute(t, name, replacement));
      return pf::call(f->name, std::move(args));
    }
    case PfOp::And:
    case PfOp::Or: {
      std::vector<PredicateFormula> children;
      children.reserve(f->children.size());
      for (const auto& c : f->children) children.push_back(substitute(c, name, replacement));
      return with_children(f, std::move(children));
    }
    case PfOp::Exists:
    case PfOp::Forall: {
      if (f->name == name) return f;
      const PredicateFormula& body = f->children[0];
      if (!free_data_vars(body).count(std::string(name))) return f;
      std::set<std::string> repl_vars = free_vars(replacement);
      if (!repl_vars.count(f->name)) {
        return with_children(f, {substitute(body, name, replacement)});
      }
      // Rename the binder away from the replacement's variables.
      std::set<std::string> taken = repl_vars;
      collect_names(body, taken);
      taken.insert(std::string(name));
      std::string fresh;
      for (int i = 1;; ++i) {
        fresh = f->name + std::to_string(i);
        if (!taken.count(fresh)) break;
      }
      PredicateFormula renamed = substitute(body, f->name, Term::var(fresh, f->sort));
      PfNode n = *f;
      n.name = fresh;
      n.children = {substitute(renamed, name, replacement)};
      return std::make_shared<const PfNode>(std::move(n));
    }
  }
  throw Error(ErrorKind::Internal, "unknown predicate formula operator");
}

PredicateFormula simplify(const PredicateFormula& f) {
  switch (f->op) {
    case PfOp::Data: {
      Term t = evcheck::simplify(f->data);
      return t == f->data ? f : pf::data(std::move(t));
    }
    case PfOp::Call: {
      std::vector<Term> args;
      args.reserve(f->args.size());
      for (const Term& t : f->args) args.push_back(evcheck::simplify(t));
      return pf::call(f->name, std::move(args));
    }
    case PfOp::And:
    case PfOp::Or: {
      const bool conj = f->op == PfOp::And;
      std::vector<PredicateFormula> out;
      for (const auto& c : f->children) {
        PredicateFormula s = simplify(c);
        if (conj ? is_true(s) : is_false(s)) continue;
        if (conj ? is_false(s) : is_true(s)) return s;
        if (s->op == f->op) {
          out.insert(out.end(), s->children.begin(), s->children.end());
        } else {
          out.push_back(std::move(s));
        }
      }
      return conj ? pf::conj(std::move(out)) : pf::disj(std::move(out));
    }
    case PfOp::Exists:
    case PfOp::Forall: {
      PredicateFormula body = simplify(f->children[0]);
      // Bool and Nat are non-empty, so a vacuous quantifier disappears.
      if (!free_data_vars(body).count(f->name)) return body;
      return with_children(f, {std::move(body)});
    }
  }
  throw Error(ErrorKind::Internal, "unknown predicate formula operator");
}

namespace {

PredicateFormula replace_rec(const PredicateFormula& f,
                             const std::function<std::optional<bool>(const std::string&)>& decide) {
  switch (f->op) {
    case PfOp::Data: return f;
    case PfOp::Call: {
      if (auto b = decide(f->name)) return pf::truth(*b);
      return f;
    }
    default: {
      std::vector<PredicateFormula> children;
      children.reserve(f->children.size());
      for (const auto& c : f->children) children.push_back(replace_rec(c, decide));
      return with_children(f, std::move(children));
    }
  }
}

}  // namespace

PredicateFormula replace_calls(const PredicateFormula& f,
                               const std::function<std::optional<bool>(const std::string&)>& decide) {
  return simplify(replace_rec(f, decide));
}

// ---------------------------------------------------------------------------

std::size_t Instance::hash() const noexcept { return hash_args(args) * 31 + var; }

std::optional<std::uint32_t> Pbes::find(std::string_view var) const {
  for (std::uint32_t i = 0; i < equations.size(); ++i) {
    if (equations[i].var == var) return i;
  }
  return std::nullopt;
}

std::uint32_t Pbes::index_of(std::string_view var) const {
  if (auto i = find(var)) return *i;
  throw Error(ErrorKind::UnknownVariable, "no equation for '" + std::string(var) + "'");
}

std::string to_string(const Pbes& p, const Instance& i) {
  const std::string& name = i.var < p.equations.size() ? p.equations[i.var].var : "?";
  return name + "(" + to_string(i.args) + ")";
}

namespace {

void check_calls(const Pbes& p, const Equation& eq, const PredicateFormula& f) {
  if (f->op == PfOp::Call) {
    auto target = p.find(f->name);
    if (!target) {
      throw Error(ErrorKind::IllFormed, "equation '" + eq.var + "' calls unbound '" + f->name + "'");
    }
    const Equation& t = p.equations[*target];
    if (t.params.size() != f->args.size()) {
      throw Error(ErrorKind::IllFormed, "call " + f->name + " in '" + eq.var + "' has " +
                                            std::to_string(f->args.size()) + " arguments, expected " +
                                            std::to_string(t.params.size()));
    }
    for (std::size_t k = 0; k < f->args.size(); ++k) {
      if (f->args[k].sort() != t.params[k].sort) {
        throw Error(ErrorKind::IllFormed, "argument " + std::to_string(k + 1) + " of call " + f->name +
                                              " in '" + eq.var + "' has the wrong sort");
      }
    }
  }
  for (const auto& c : f->children) check_calls(p, eq, c);
}

}  // namespace

void check_pbes(const Pbes& p) {
  std::set<std::string> seen;
  for (const Equation& eq : p.equations) {
    if (!seen.insert(eq.var).second) {
      throw Error(ErrorKind::IllFormed, "predicate variable '" + eq.var + "' is defined twice");
    }
  }
  for (const Equation& eq : p.equations) {
    check_calls(p, eq, eq.rhs);
    std::set<std::string> params;
    for (const Parameter& prm : eq.params) params.insert(prm.name);
    for (const std::string& v : free_data_vars(eq.rhs)) {
      if (!params.count(v)) {
        throw Error(ErrorKind::IllFormed, "right-hand side of '" + eq.var + "' has free data variable '" + v + "'");
      }
    }
  }
  if (p.initial.var >= p.equations.size()) throw Error(ErrorKind::IllFormed, "initial instance is unbound");
  const Equation& init = p.equations[p.initial.var];
  if (init.params.size() != p.initial.args.size()) {
    throw Error(ErrorKind::IllFormed, "initial instance has the wrong arity");
  }
  for (std::size_t k = 0; k < init.params.size(); ++k) {
    if (init.params[k].sort != p.initial.args[k].sort()) {
      throw Error(ErrorKind::IllFormed, "initial instance has the wrong sort");
    }
  }
}

std::vector<std::uint32_t> ranks(const Pbes& p) {
  std::vector<std::uint32_t> out;
  out.reserve(p.equations.size());
  std::uint32_t r = 0;
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    const bool nu = p.equations[i].fixpoint == Fixpoint::Nu;
    if (i == 0) {
      r = nu ? 0 : 1;
    } else if (p.equations[i].fixpoint != p.equations[i - 1].fixpoint) {
      ++r;
    }
    out.push_back(r);
  }
  return out;
}

std::uint32_t rank(const Pbes& p, std::string_view var) { return ranks(p)[p.index_of(var)]; }

bool PredicateEnvironment::get(const Instance& i) const {
  auto it = values_.find(i);
  return it == values_.end() ? fallback_ : it->second;
}

DataEnvironment bind_parameters(const Equation& eq, const Args& args) {
  if (args.size() != eq.params.size()) {
    throw Error(ErrorKind::IllFormed, "instance of '" + eq.var + "' has the wrong arity");
  }
  DataEnvironment env;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k].sort() != eq.params[k].sort) {
      throw Error(ErrorKind::SortMismatch, "argument of '" + eq.var + "' has the wrong sort");
    }
    env = env.update(eq.params[k].name, args[k]);
  }
  return env;
}

namespace {

void existential_guards(const PredicateFormula& f, std::vector<Term>& out) {
  if (f->op == PfOp::Data) out.push_back(f->data);
  if (f->op == PfOp::And) {
    for (const auto& c : f->children) existential_guards(c, out);
  }
}

void universal_guards(const PredicateFormula& f, std::vector<Term>& out) {
  if (f->op == PfOp::Data) {
    if (f->data.op() == TermOp::Not) out.push_back(f->data.lhs());
    if (f->data.op() == TermOp::Implies) out.push_back(f->data.lhs());
  }
  if (f->op == PfOp::Or) {
    for (const auto& c : f->children) universal_guards(c, out);
  }
}

}  // namespace

std::vector<Value> quantifier_range(const PfNode& q, const DataEnvironment& env, const Bounds& bounds) {
  std::vector<Term> guards;
  if (q.op == PfOp::Exists) existential_guards(q.children[0], guards);
  else universal_guards(q.children[0], guards);
  std::vector<Term> conjuncts;
  for (const Term& g : guards) collect_conjuncts(g, conjuncts);
  // A false guard that does not mention the variable empties the range.
  for (const Term& g : conjuncts) {
    if (!occurs_free(g, q.name) && !eval_bool(g, env)) return {};
  }
  return enumerate_domain(q.name, q.sort, conjuncts, env, bounds);
}

bool eval_predicate_formula(const Pbes& p, const PredicateFormula& f, const PredicateEnvironment& eta,
                            const DataEnvironment& delta, const Bounds& bounds) {
  switch (f->op) {
    case PfOp::Data: return eval_bool(f->data, delta);
    case PfOp::Call: {
      Instance i{p.index_of(f->name), {}};
      for (const Term& t : f->args) i.args.push_back(eval_term(t, delta));
      return eta.get(i);
    }
    case PfOp::And:
      return std::all_of(f->children.begin(), f->children.end(), [&](const PredicateFormula& c) {
        return eval_predicate_formula(p, c, eta, delta, bounds);
      });
    case PfOp::Or:
      return std::any_of(f->children.begin(), f->children.end(), [&](const PredicateFormula& c) {
        return eval_predicate_formula(p, c, eta, delta, bounds);
      });
    case PfOp::Exists:
    case PfOp::Forall: {
      const bool ex = f->op == PfOp::Exists;
      for (const Value& v : quantifier_range(*f, delta, bounds)) {
        bool b = eval_predicate_formula(p, f->children[0], eta, delta.update(f->name, v), bounds);
        if (b == ex) return ex;
      }
      return !ex;
    }
  }
  throw Error(ErrorKind::Internal, "unknown predicate formula operator");
}

// ---------------------------------------------------------------------------

namespace {

// Instances a right-hand side can depend on. Data operands that decide an
// And/Or on their own cut off the remaining operands.
void collect_calls(const Pbes& p, const PredicateFormula& f, const DataEnvironment& env, const Bounds& bounds,
                   std::vector<Instance>& out) {
  switch (f->op) {
    case PfOp::Data: return;
    case PfOp::Call: {
      Instance i{p.index_of(f->name), {}};
      for (const Term& t : f->args) i.args.push_back(eval_term(t, env));
      out.push_back(std::move(i));
      return;
    }
    case PfOp::And:
    case PfOp::Or: {
      const bool absorbing = f->op == PfOp::Or;
      for (const auto& c : f->children) {
        if (c->op == PfOp::Data && eval_bool(c->data, env) == absorbing) return;
      }
      for (const auto& c : f->children) collect_calls(p, c, env, bounds, out);
      return;
    }
    case PfOp::Exists:
    case PfOp::Forall:
      for (const Value& v : quantifier_range(*f, env, bounds)) {
        collect_calls(p, f->children[0], env.update(f->name, v), bounds, out);
      }
      return;
  }
}

class BruteForce {
 public:
  BruteForce(const Pbes& p, const Bounds& bounds) : p_(p), bounds_(bounds) {}

  PredicateEnvironment run() {
    discover();
    eta_ = PredicateEnvironment(false);
    for (const Instance& i : instances_) eta_.set(i, false);
    solve(0);
    return eta_;
  }

 private:
  void discover() {
    std::unordered_map<Instance, std::size_t, InstanceHash> seen;
    by_eq_.assign(p_.equations.size(), {});
    auto add = [&](const Instance& i) {
      if (seen.emplace(i, instances_.size()).second) {
        if (instances_.size() >= bounds_.max_vertices) {
          throw Error(ErrorKind::StateExplosion, "too many instances for brute-force solving");
        }
        instances_.push_back(i);
        by_eq_[i.var].push_back(instances_.size() - 1);
      }
    };
    add(p_.initial);
    for (std::size_t k = 0; k < instances_.size(); ++k) {
      Instance cur = instances_[k];
      const Equation& eq = p_.equations[cur.var];
      std::vector<Instance> calls;
      collect_calls(p_, eq.rhs, bind_parameters(eq, cur.args), bounds_, calls);
      for (const Instance& c : calls) add(c);
    }
  }

  bool evaluate(std::size_t idx) const {
    const Instance& i = instances_[idx];
    const Equation& eq = p_.equations[i.var];
    return eval_predicate_formula(p_, eq.rhs, eta_, bind_parameters(eq, i.args), bounds_);
  }

  // Fixpoint of equation k with the inner equations re-solved at each step.
  void solve(std::size_t k) {
    if (k == p_.equations.size()) return;
    const bool start = p_.equations[k].fixpoint == Fixpoint::Nu;
    for (std::size_t idx : by_eq_[k]) eta_.set(instances_[idx], start);
    for (;;) {
      solve(k + 1);
      bool changed = false;
      std::vector<bool> next;
      next.reserve(by_eq_[k].size());
      for (std::size_t idx : by_eq_[k]) next.push_back(evaluate(idx));
      for (std::size_t j = 0; j < by_eq_[k].size(); ++j) {
        const Instance& i = instances_[by_eq_[k][j]];
        if (eta_.get(i) != next[j]) {
          eta_.set(i, next[j]);
          changed = true;
        }
      }
      if (!changed) return;
    }
  }

  const Pbes& p_;
  const Bounds& bounds_;
  std::vector<Instance> instances_;
  std::vector<std::vector<std::size_t>> by_eq_;
  PredicateEnvironment eta_;
};

}  // namespace

PredicateEnvironment brute_force_solve(const Pbes& p, const Bounds& bounds) {
  check_pbes(p);
  return BruteForce(p, bounds).run();
}

// ---------------------------------------------------------------------------

std::string dump_pbes(const Pbes& p) {
  std::ostringstream out;
  for (const Equation& eq : p.equations) {
    out << to_string(eq.fixpoint) << " " << eq.var << "(";
    for (std::size_t k = 0; k < eq.params.size(); ++k) {
      if (k) out << ", ";
      out << eq.params[k].name << ": " << to_string(eq.params[k].sort);
    }
    out << ") = " << to_string(eq.rhs) << ";\n";
  }
  const Equation& init = p.equations.at(p.initial.var);
  out << "init " << init.var << "(";
  for (std::size_t k = 0; k < p.initial.args.size(); ++k) {
    if (k) out << ", ";
    out << p.initial.args[k].to_string();
  }
  out << ");\n";
  return out.str();
}

namespace {

struct PendingEquation {
  Equation eq;
  syntax::ExprPtr rhs;
};

using Arity = std::map<std::string, std::vector<Sort>, std::less<>>;

bool is_data(const syntax::Expr& e, const Arity& preds) {
  using K = syntax::Expr::Kind;
  switch (e.kind) {
    case K::Call:
    case K::Quant: return false;
    case K::Ident: return !preds.count(e.text);
    default:
      return std::all_of(e.args.begin(), e.args.end(),
                         [&](const syntax::ExprPtr& a) { return is_data(*a, preds); });
  }
}

PredicateFormula to_formula(const syntax::Expr& e, const syntax::Scope& scope, const Arity& preds) {
  using K = syntax::Expr::Kind;
  if (is_data(e, preds)) {
    Term t = syntax::to_term(e, scope);
    if (t.sort() != Sort::Bool) throw SyntaxError(e.line, e.column, "expected a Bool formula", ErrorKind::Sort);
    return pf::data(std::move(t));
  }
  switch (e.kind) {
    case K::Ident:
    case K::Call: {
      auto it = preds.find(e.text);
      if (it == preds.end()) {
        throw SyntaxError(e.line, e.column, "unknown predicate variable '" + e.text + "'",
                          ErrorKind::UnknownVariable);
      }
      if (it->second.size() != e.args.size()) {
        throw SyntaxError(e.line, e.column, "wrong number of arguments for '" + e.text + "'");
      }
      std::vector<Term> args;
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        Term t = syntax::to_term(*e.args[k], scope);
        if (t.sort() != it->second[k]) {
          throw SyntaxError(e.args[k]->line, e.args[k]->column, "argument has the wrong sort", ErrorKind::Sort);
        }
        args.push_back(std::move(t));
      }
      return pf::call(e.text, std::move(args));
    }
    case K::Quant: {
      syntax::Scope inner = scope;
      inner[e.bound_var] = e.bound_sort;
      PredicateFormula body = to_formula(*e.args[0], inner, preds);
      return e.text == "exists" ? pf::exists(e.bound_var, e.bound_sort, body)
                                : pf::forall(e.bound_var, e.bound_sort, body);
    }
    case K::Binary: {
      if (e.text == "&&" || e.text == "||") {
        PredicateFormula a = to_formula(*e.args[0], scope, preds);
        PredicateFormula b = to_formula(*e.args[1], scope, preds);
        return e.text == "&&" ? pf::conj(a, b) : pf::disj(a, b);
      }
      if (e.text == "=>" && is_data(*e.args[0], preds)) {
        Term premise = syntax::to_term(*e.args[0], scope);
        return pf::disj(pf::data(Term::lnot(premise)), to_formula(*e.args[1], scope, preds));
      }
      break;
    }
    default: break;
  }
  throw SyntaxError(e.line, e.column, "operator '" + e.text + "' cannot be applied to predicate formulas");
}

}  // namespace

Pbes parse_pbes(std::string_view text) {
  syntax::TokenStream ts(syntax::tokenize(text));
  std::vector<PendingEquation> pending;
  Arity preds;
  while (ts.is("mu") || ts.is("nu")) {
    PendingEquation pe;
    pe.eq.fixpoint = ts.next().text == "mu" ? Fixpoint::Mu : Fixpoint::Nu;
    const syntax::Token& at = ts.peek();
    pe.eq.var = ts.expect_ident();
    if (preds.count(pe.eq.var)) ts.fail_at(at, "predicate variable '" + pe.eq.var + "' is defined twice");
    if (ts.accept("(") && !ts.accept(")")) {
      do {
        std::string name = ts.expect_ident();
        ts.expect(":");
        pe.eq.params.push_back({std::move(name), syntax::parse_sort(ts)});
      } while (ts.accept(","));
      ts.expect(")");
    }
    ts.expect("=");
    pe.rhs = syntax::parse_expr(ts);
    ts.expect(";");
    std::vector<Sort> sorts;
    for (const Parameter& prm : pe.eq.params) sorts.push_back(prm.sort);
    preds[pe.eq.var] = std::move(sorts);
    pending.push_back(std::move(pe));
  }
  Pbes p;
  for (PendingEquation& pe : pending) {
    syntax::Scope scope;
    for (const Parameter& prm : pe.eq.params) scope[prm.name] = prm.sort;
    pe.eq.rhs = to_formula(*pe.rhs, scope, preds);
    const std::string& v = pe.eq.var;
    const bool zp = v.rfind("Zp_", 0) == 0 && pe.eq.fixpoint == Fixpoint::Nu && is_true(pe.eq.rhs);
    const bool zm = v.rfind("Zm_", 0) == 0 && pe.eq.fixpoint == Fixpoint::Mu && is_false(pe.eq.rhs);
    if ((zp || zm) && pe.eq.params.size() == 2) {
      pe.eq.role = zp ? EquationRole::ZPlus : EquationRole::ZMinus;
      pe.eq.action = v.substr(3);
    }
    p.equations.push_back(std::move(pe.eq));
  }
  ts.expect("init");
  const syntax::Token& at = ts.peek();
  std::string var = ts.expect_ident();
  auto idx = p.find(var);
  if (!idx) ts.fail_at(at, "unknown predicate variable '" + var + "'", ErrorKind::UnknownVariable);
  p.initial.var = *idx;
  if (ts.accept("(") && !ts.accept(")")) {
    do {
      syntax::ExprPtr e = syntax::parse_expr(ts);
      p.initial.args.push_back(eval_term(syntax::to_term(*e, {}), {}));
    } while (ts.accept(","));
    ts.expect(")");
  }
  ts.expect(";");
  if (!ts.at_end()) ts.fail("unexpected trailing input '" + ts.peek().text + "'");
  check_pbes(p);
  return p;
}

}  // namespace evcheck
