#include "evcheck/formula.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "evcheck/error.hpp"
#include "evcheck/syntax.hpp"

namespace evcheck {

namespace mu {

MuFormula truth(bool b) {
  return std::make_shared<const MuNode>(MuNode{b ? MuOp::True : MuOp::False, {}, {}, {}, {}});
}
MuFormula var(std::string name) {
  return std::make_shared<const MuNode>(MuNode{MuOp::Var, std::move(name), {}, {}, {}});
}
MuFormula conj(MuFormula a, MuFormula b) {
  return std::make_shared<const MuNode>(MuNode{MuOp::And, {}, {}, std::move(a), std::move(b)});
}
MuFormula disj(MuFormula a, MuFormula b) {
  return std::make_shared<const MuNode>(MuNode{MuOp::Or, {}, {}, std::move(a), std::move(b)});
}
MuFormula box(std::string action, MuFormula body) {
  return std::make_shared<const MuNode>(MuNode{MuOp::Box, std::move(action), {}, std::move(body), {}});
}
MuFormula diamond(std::string action, MuFormula body) {
  return std::make_shared<const MuNode>(
      MuNode{MuOp::Diamond, std::move(action), {}, std::move(body), {}});
}
MuFormula fix(Fixpoint sigma, std::string var, MuFormula body) {
  return std::make_shared<const MuNode>(MuNode{MuOp::Fix, std::move(var), sigma, std::move(body), {}});
}

}  // namespace mu

namespace {

using syntax::TokenStream;

MuFormula parse_mu(TokenStream& ts);

MuFormula parse_unary(TokenStream& ts) {
  if (ts.is("mu") || ts.is("nu")) {
    Fixpoint sigma = ts.next().text == "mu" ? Fixpoint::Mu : Fixpoint::Nu;
    std::string var = ts.expect_ident();
    ts.expect(".");
    return mu::fix(sigma, std::move(var), parse_mu(ts));
  }
  if (ts.accept("<")) {
    std::string action = ts.expect_ident();
    ts.expect(">");
    return mu::diamond(std::move(action), parse_unary(ts));
  }
  if (ts.accept("[")) {
    std::string action = ts.expect_ident();
    ts.expect("]");
    return mu::box(std::move(action), parse_unary(ts));
  }
  if (ts.accept("(")) {
    MuFormula f = parse_mu(ts);
    ts.expect(")");
    return f;
  }
  if (ts.accept("true")) return mu::truth(true);
  if (ts.accept("false")) return mu::truth(false);
  const syntax::Token& t = ts.peek();
  if (t.kind == syntax::TokenKind::Ident) return mu::var(ts.next().text);
  ts.fail(t.kind == syntax::TokenKind::End ? "unexpected end of formula" : "unexpected '" + t.text + "'");
}

MuFormula parse_and(TokenStream& ts) {
  MuFormula f = parse_unary(ts);
  while (ts.accept("&&")) f = mu::conj(f, parse_unary(ts));
  return f;
}

MuFormula parse_mu(TokenStream& ts) {
  MuFormula f = parse_and(ts);
  while (ts.accept("||")) f = mu::disj(f, parse_and(ts));
  return f;
}

void collect_names(const MuFormula& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->op == MuOp::Var || f->op == MuOp::Fix) out.insert(f->name);
  collect_names(f->left, out);
  collect_names(f->right, out);
}

class Renamer {
 public:
  explicit Renamer(const MuFormula& root) { collect_names(root, taken_); }

  MuFormula run(const MuFormula& f, std::map<std::string, std::string>& scope) {
    switch (f->op) {
      case MuOp::True:
      case MuOp::False: return f;
      case MuOp::Var: {
        auto it = scope.find(f->name);
        if (it == scope.end()) {
          throw Error(ErrorKind::OpenFormula, "fixpoint variable '" + f->name + "' is not bound");
        }
        return it->second == f->name ? f : mu::var(it->second);
      }
      case MuOp::And: return mu::conj(run(f->left, scope), run(f->right, scope));
      case MuOp::Or: return mu::disj(run(f->left, scope), run(f->right, scope));
      case MuOp::Box: return mu::box(f->name, run(f->left, scope));
      case MuOp::Diamond: return mu::diamond(f->name, run(f->left, scope));
      case MuOp::Fix: {
        std::string fresh = f->name;
        if (bound_.count(fresh)) {
          for (int i = 1;; ++i) {
            fresh = f->name + "_" + std::to_string(i);
            if (!taken_.count(fresh) && !bound_.count(fresh)) break;
          }
        }
        bound_.insert(fresh);
        auto saved = scope.find(f->name) != scope.end()
                         ? std::optional<std::string>(scope[f->name])
                         : std::nullopt;
        scope[f->name] = fresh;
        MuFormula body = run(f->left, scope);
        if (saved) scope[f->name] = *saved;
        else scope.erase(f->name);
        return mu::fix(f->fixpoint, fresh, body);
      }
    }
    throw Error(ErrorKind::Internal, "unknown formula operator");
  }

 private:
  std::set<std::string> taken_;
  std::set<std::string> bound_;
};

int precedence(MuOp op) {
  switch (op) {
    case MuOp::Fix: return 0;
    case MuOp::Or: return 1;
    case MuOp::And: return 2;
    default: return 3;
  }
}

std::string print(const MuFormula& f) {
  auto wrap = [](const MuFormula& g, int min_prec) {
    std::string s = print(g);
    return precedence(g->op) < min_prec ? "(" + s + ")" : s;
  };
  switch (f->op) {
    case MuOp::True: return "true";
    case MuOp::False: return "false";
    case MuOp::Var: return f->name;
    case MuOp::And: return wrap(f->left, 3) + " && " + wrap(f->right, 3);
    case MuOp::Or: return wrap(f->left, 2) + " || " + wrap(f->right, 2);
    case MuOp::Box: return "[" + f->name + "]" + wrap(f->left, 3);
    case MuOp::Diamond: return "<" + f->name + ">" + wrap(f->left, 3);
    case MuOp::Fix: return std::string(to_string(f->fixpoint)) + " " + f->name + " . " + print(f->left);
  }
  return "?";
}

void binders(const MuFormula& f, std::vector<std::pair<Fixpoint, std::string>>& out) {
  if (!f) return;
  if (f->op == MuOp::Fix) out.emplace_back(f->fixpoint, f->name);
  binders(f->left, out);
  binders(f->right, out);
}

void actions(const MuFormula& f, std::vector<std::string>& out) {
  if (!f) return;
  if ((f->op == MuOp::Box || f->op == MuOp::Diamond) &&
      std::find(out.begin(), out.end(), f->name) == out.end()) {
    out.push_back(f->name);
  }
  actions(f->left, out);
  actions(f->right, out);
}

bool alpha_eq(const MuFormula& a, const MuFormula& b, std::map<std::string, std::string>& map) {
  if (a->op != b->op) return false;
  switch (a->op) {
    case MuOp::True:
    case MuOp::False: return true;
    case MuOp::Var: {
      auto it = map.find(a->name);
      return it != map.end() ? it->second == b->name : a->name == b->name;
    }
    case MuOp::And:
    case MuOp::Or: return alpha_eq(a->left, b->left, map) && alpha_eq(a->right, b->right, map);
    case MuOp::Box:
    case MuOp::Diamond: return a->name == b->name && alpha_eq(a->left, b->left, map);
    case MuOp::Fix: {
      if (a->fixpoint != b->fixpoint) return false;
      auto saved = map;
      map[a->name] = b->name;
      bool r = alpha_eq(a->left, b->left, map);
      map = std::move(saved);
      return r;
    }
  }
  return false;
}

}  // namespace

MuFormula close_and_rename(const MuFormula& f) {
  Renamer r(f);
  std::map<std::string, std::string> scope;
  return r.run(f, scope);
}

MuFormula parse_formula(std::string_view text) {
  TokenStream ts(syntax::tokenize(text));
  MuFormula f = parse_mu(ts);
  if (!ts.at_end()) ts.fail("unexpected trailing input '" + ts.peek().text + "'");
  return close_and_rename(f);
}

std::string to_string(const MuFormula& f) { return print(f); }

std::vector<std::pair<Fixpoint, std::string>> bound_vars_in_order(const MuFormula& f) {
  std::vector<std::pair<Fixpoint, std::string>> out;
  binders(f, out);
  return out;
}

std::vector<std::string> actions_of(const MuFormula& f) {
  std::vector<std::string> out;
  actions(f, out);
  return out;
}

MuFormula ensure_fixpoint_root(const MuFormula& f) {
  if (f->op == MuOp::Fix) return f;
  std::set<std::string> names;
  collect_names(f, names);
  std::string fresh = "Top";
  for (int i = 1; names.count(fresh); ++i) fresh = "Top_" + std::to_string(i);
  return mu::fix(Fixpoint::Nu, fresh, f);
}

bool alpha_equivalent(const MuFormula& a, const MuFormula& b) {
  std::map<std::string, std::string> map;
  return alpha_eq(a, b, map);
}

}  // namespace evcheck
