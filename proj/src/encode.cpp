#include "evcheck/encode.hpp"

#include <set>

#include "evcheck/error.hpp"

namespace evcheck {

namespace {

class Encoder {
 public:
  Encoder(const Lpe& lpe, const EvidenceVariables& z) : lpe_(lpe), z_(z) {}

  Term param() const { return Term::var(lpe_.parameter, lpe_.parameter_sort); }

  PredicateFormula rhs(const MuFormula& f) const {
    switch (f->op) {
      case MuOp::True: return pf::truth(true);
      case MuOp::False: return pf::truth(false);
      case MuOp::Var:
      case MuOp::Fix: return pf::call(f->name, {param()});
      case MuOp::And: return pf::conj(rhs(f->left), rhs(f->right));
      case MuOp::Or: return pf::disj(rhs(f->left), rhs(f->right));
      case MuOp::Diamond:
      case MuOp::Box: return modality(f);
    }
    throw Error(ErrorKind::Internal, "unknown formula operator");
  }

  void equations(const MuFormula& f, std::vector<Equation>& out) const {
    if (!f) return;
    if (f->op == MuOp::Fix) {
      Equation eq;
      eq.fixpoint = f->fixpoint;
      eq.var = f->name;
      eq.params = {{lpe_.parameter, lpe_.parameter_sort}};
      eq.rhs = rhs(f->left);
      out.push_back(std::move(eq));
    }
    equations(f->left, out);
    equations(f->right, out);
  }

 private:
  PredicateFormula modality(const MuFormula& f) const {
    const bool diamond = f->op == MuOp::Diamond;
    const std::string& a = f->name;
    PredicateFormula body = rhs(f->left);
    std::vector<PredicateFormula> branches;
    for (const Summand& s : lpe_.summands) {
      if (s.action != a) continue;
      Term d = param();
      PredicateFormula next = substitute(body, lpe_.parameter, s.next_state);
      PredicateFormula zp = pf::call(z_.plus.at(a), {d, s.next_state});
      PredicateFormula zm = pf::call(z_.minus.at(a), {d, s.next_state});
      PredicateFormula branch;
      if (diamond) {
        // c && ((phi[g/d] || Zm(d,g)) && Zp(d,g))
        branch = pf::conj(pf::data(s.condition), pf::conj(pf::disj(next, zm), zp));
      } else {
        // !c || ((phi[g/d] && Zp(d,g)) || Zm(d,g))
        branch = pf::disj(pf::data(Term::lnot(s.condition)), pf::disj(pf::conj(next, zp), zm));
      }
      if (s.local) {
        branch = diamond ? pf::exists(s.local->name, s.local->sort, branch)
                         : pf::forall(s.local->name, s.local->sort, branch);
      }
      branches.push_back(std::move(branch));
    }
    return diamond ? pf::disj(std::move(branches)) : pf::conj(std::move(branches));
  }

  const Lpe& lpe_;
  const EvidenceVariables& z_;
};

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
  std::string name = base;
  for (int i = 1; taken.count(name); ++i) name = base + "_" + std::to_string(i);
  taken.insert(name);
  return name;
}

}  // namespace

Pbes encode_with_evidence(const Lpe& lpe, const MuFormula& phi, const Value& init) {
  if (phi->op != MuOp::Fix) {
    throw Error(ErrorKind::InvalidFormula, "formula must start with a fixpoint: " + to_string(phi));
  }
  for (const std::string& a : actions_of(phi)) {
    if (!lpe.has_action(a)) throw Error(ErrorKind::ActionNotInAlphabet, "action '" + a + "' is not in the alphabet");
  }
  if (init.sort() != lpe.parameter_sort) {
    throw Error(ErrorKind::SortMismatch, "initial value " + init.to_string() + " has the wrong sort");
  }
  MuFormula f = close_and_rename(phi);

  std::set<std::string> taken;
  for (const auto& [sigma, x] : bound_vars_in_order(f)) taken.insert(x);
  EvidenceVariables z;
  for (const std::string& a : lpe.alphabet) z.plus[a] = fresh_name("Zp_" + a, taken);
  for (const std::string& a : lpe.alphabet) z.minus[a] = fresh_name("Zm_" + a, taken);

  Pbes p;
  Encoder(lpe, z).equations(f, p.equations);
  std::string second = lpe.parameter + "1";
  if (second == lpe.parameter) second += "_";
  std::vector<Parameter> zparams{{lpe.parameter, lpe.parameter_sort}, {second, lpe.parameter_sort}};
  for (const std::string& a : lpe.alphabet) {
    p.equations.push_back({Fixpoint::Nu, z.plus[a], zparams, pf::truth(true), EquationRole::ZPlus, a});
  }
  for (const std::string& a : lpe.alphabet) {
    p.equations.push_back({Fixpoint::Mu, z.minus[a], zparams, pf::truth(false), EquationRole::ZMinus, a});
  }
  p.initial = Instance{0, {init}};
  check_pbes(p);
  return p;
}

EvidenceVariables evidence_variables(const Pbes& p) {
  EvidenceVariables z;
  for (const Equation& eq : p.equations) {
    if (eq.role == EquationRole::ZPlus) z.plus[eq.action] = eq.var;
    if (eq.role == EquationRole::ZMinus) z.minus[eq.action] = eq.var;
  }
  return z;
}

void check_evidence_shape(const Pbes& p) {
  std::size_t i = 0;
  const std::size_t n = p.equations.size();
  while (i < n && p.equations[i].role == EquationRole::Plain) ++i;
  if (i == 0) throw Error(ErrorKind::Shape, "no equations precede the evidence blocks");
  std::size_t plus_begin = i;
  while (i < n && p.equations[i].role == EquationRole::ZPlus) ++i;
  std::size_t k = i - plus_begin;
  for (std::size_t j = 0; j < k; ++j, ++i) {
    if (i >= n || p.equations[i].role != EquationRole::ZMinus ||
        p.equations[i].action != p.equations[plus_begin + j].action) {
      throw Error(ErrorKind::Shape, "Zm block does not mirror the Zp block");
    }
  }
  if (i != n) throw Error(ErrorKind::Shape, "equation '" + p.equations[i].var + "' follows the evidence blocks");
  for (std::size_t j = plus_begin; j < n; ++j) {
    const Equation& eq = p.equations[j];
    bool ok = eq.params.size() == 2 && (eq.role == EquationRole::ZPlus ? eq.fixpoint == Fixpoint::Nu && is_true(eq.rhs)
                                                                        : eq.fixpoint == Fixpoint::Mu && is_false(eq.rhs));
    if (!ok) throw Error(ErrorKind::Shape, "malformed evidence equation '" + eq.var + "'");
  }
}

namespace {

Pbes substitute_z(const Pbes& p, bool drop_plus, bool drop_minus) {
  check_evidence_shape(p);
  std::map<std::string, EquationRole> roles;
  for (const Equation& eq : p.equations) roles[eq.var] = eq.role;
  auto decide = [&](const std::string& var) -> std::optional<bool> {
    EquationRole r = roles.at(var);
    if (r == EquationRole::ZPlus && drop_plus) return true;
    if (r == EquationRole::ZMinus && drop_minus) return false;
    return std::nullopt;
  };
  Pbes out = p;
  for (Equation& eq : out.equations) {
    if (eq.role == EquationRole::Plain) eq.rhs = replace_calls(eq.rhs, decide);
  }
  return out;
}

}  // namespace

Pbes core_of(const Pbes& p) { return substitute_z(p, true, true); }

Pbes strip_for_polarity(const Pbes& p, bool solution_is_true) {
  return substitute_z(p, !solution_is_true, solution_is_true);
}

}  // namespace evcheck
