#include "evcheck/model.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "evcheck/error.hpp"
#include "evcheck/syntax.hpp"

namespace evcheck {

bool Lpe::has_action(std::string_view label) const {
  return std::find(alphabet.begin(), alphabet.end(), label) != alphabet.end();
}

namespace {

void add_action(Lpe& lpe, const std::string& label) {
  if (!lpe.has_action(label)) lpe.alphabet.push_back(label);
}

Summand parse_summand(syntax::TokenStream& ts, const Lpe& lpe) {
  Summand s;
  syntax::Scope scope{{lpe.parameter, lpe.parameter_sort}};
  if (ts.accept("sum")) {
    const syntax::Token& at = ts.peek();
    std::string name = ts.expect_ident();
    if (name == lpe.parameter) {
      ts.fail_at(at, "sum variable '" + name + "' shadows the process parameter");
    }
    ts.expect(":");
    Sort sort = syntax::parse_sort(ts);
    ts.expect(".");
    s.local = LocalVar{name, sort};
    scope[name] = sort;
  }
  // `(c) -> a . L(g)` or `a . L(g)`; a parenthesised condition is only a
  // condition when followed by `->`.
  if (!(ts.peek().kind == syntax::TokenKind::Ident && ts.is(".", 1))) {
    const syntax::Token& at = ts.peek();
    syntax::ExprPtr cond = syntax::parse_expr(ts);
    s.condition = syntax::to_term(*cond, scope);
    if (s.condition.sort() != Sort::Bool) {
      ts.fail_at(at, "condition must be Bool", ErrorKind::Sort);
    }
    ts.expect("->");
  } else {
    s.condition = Term::boolean(true);
  }
  s.action = ts.expect_ident();
  ts.expect(".");
  const syntax::Token& proc = ts.peek();
  if (ts.expect_ident() != lpe.process_name) {
    ts.fail_at(proc, "expected recursion on '" + lpe.process_name + "'");
  }
  ts.expect("(");
  const syntax::Token& at = ts.peek();
  syntax::ExprPtr next = syntax::parse_expr(ts);
  s.next_state = syntax::to_term(*next, scope);
  if (s.next_state.sort() != lpe.parameter_sort) {
    ts.fail_at(at, "next state must have sort " + std::string(to_string(lpe.parameter_sort)),
               ErrorKind::Sort);
  }
  ts.expect(")");
  return s;
}

}  // namespace

Lpe parse_lpe(std::string_view text) {
  syntax::TokenStream ts(syntax::tokenize(text));
  Lpe lpe;
  if (ts.accept("act")) {
    do {
      add_action(lpe, ts.expect_ident());
    } while (ts.accept(","));
    ts.expect(";");
  }
  ts.expect("proc");
  lpe.process_name = ts.expect_ident();
  ts.expect("(");
  lpe.parameter = ts.expect_ident();
  ts.expect(":");
  lpe.parameter_sort = syntax::parse_sort(ts);
  ts.expect(")");
  ts.expect("=");
  if (!ts.accept("delta")) {
    do {
      Summand s = parse_summand(ts, lpe);
      add_action(lpe, s.action);
      lpe.summands.push_back(std::move(s));
    } while (ts.accept("+"));
  }
  ts.expect(";");
  if (ts.accept("init")) {
    const syntax::Token& proc = ts.peek();
    if (ts.expect_ident() != lpe.process_name) {
      ts.fail_at(proc, "init must instantiate '" + lpe.process_name + "'");
    }
    ts.expect("(");
    const syntax::Token& at = ts.peek();
    syntax::ExprPtr e = syntax::parse_expr(ts);
    Term t = syntax::to_term(*e, {});
    if (t.sort() != lpe.parameter_sort) {
      ts.fail_at(at, "initial state has the wrong sort", ErrorKind::Sort);
    }
    lpe.initial = eval_term(t, {});
    ts.expect(")");
    ts.expect(";");
  }
  if (!ts.at_end()) ts.fail("unexpected trailing input '" + ts.peek().text + "'");
  return lpe;
}

void check_lpe(const Lpe& lpe) {
  for (const Summand& s : lpe.summands) {
    if (!lpe.has_action(s.action)) {
      throw Error(ErrorKind::IllFormed, "action '" + s.action + "' missing from alphabet");
    }
    std::set<std::string> allowed{lpe.parameter};
    if (s.local) allowed.insert(s.local->name);
    for (const Term* t : {&s.condition, &s.next_state}) {
      for (const std::string& v : free_vars(*t)) {
        if (!allowed.count(v)) {
          throw Error(ErrorKind::IllFormed, "summand '" + s.action + "' mentions unknown '" + v + "'");
        }
      }
    }
    if (s.condition.sort() != Sort::Bool || s.next_state.sort() != lpe.parameter_sort) {
      throw Error(ErrorKind::SortMismatch, "summand '" + s.action + "' is ill-sorted");
    }
  }
}

std::optional<std::uint32_t> Lts::index_of(const Value& state) const {
  for (std::uint32_t i = 0; i < states.size(); ++i) {
    if (states[i] == state) return i;
  }
  return std::nullopt;
}

std::vector<Step> successors(const Lpe& lpe, const Value& state, const Bounds& bounds) {
  std::vector<Step> out;
  DataEnvironment base = DataEnvironment{}.update(lpe.parameter, state);
  for (std::size_t i = 0; i < lpe.summands.size(); ++i) {
    const Summand& s = lpe.summands[i];
    if (!s.local) {
      if (eval_bool(s.condition, base)) out.push_back({i, std::nullopt, eval_term(s.next_state, base)});
      continue;
    }
    for (const Value& v : enumerate_domain(s.local->name, s.local->sort, {s.condition}, base, bounds)) {
      DataEnvironment env = base.update(s.local->name, v);
      if (eval_bool(s.condition, env)) out.push_back({i, v, eval_term(s.next_state, env)});
    }
  }
  return out;
}

namespace {

struct ValueHash {
  std::size_t operator()(const Value& v) const noexcept { return v.hash(); }
};

}  // namespace

Lts explore_lts(const Lpe& lpe, const Value& init, const Bounds& bounds) {
  if (init.sort() != lpe.parameter_sort) {
    throw Error(ErrorKind::SortMismatch, "initial state " + init.to_string() + " is not of sort " +
                                             to_string(lpe.parameter_sort));
  }
  Lts lts;
  std::unordered_map<Value, std::uint32_t, ValueHash> index;
  auto intern = [&](const Value& v) {
    auto [it, fresh] = index.emplace(v, static_cast<std::uint32_t>(lts.states.size()));
    if (fresh) {
      if (lts.states.size() >= bounds.max_vertices) {
        throw Error(ErrorKind::StateExplosion,
                    "more than " + std::to_string(bounds.max_vertices) + " states");
      }
      lts.states.push_back(v);
    }
    return it->second;
  };
  lts.initial = intern(init);
  for (std::uint32_t next = 0; next < lts.states.size(); ++next) {
    Value state = lts.states[next];
    std::set<std::pair<std::string, std::uint32_t>> seen;
    for (const Step& step : successors(lpe, state, bounds)) {
      std::uint32_t target = intern(step.target);
      const std::string& label = lpe.summands[step.summand].action;
      if (seen.emplace(label, target).second) lts.transitions.push_back({next, label, target});
    }
  }
  std::sort(lts.transitions.begin(), lts.transitions.end(), [](const Transition& a, const Transition& b) {
    return std::tie(a.source, a.label, a.target) < std::tie(b.source, b.label, b.target);
  });
  return lts;
}

namespace {

// Breadth-first renumbering from the initial state.
std::vector<std::uint32_t> aut_numbering(const Lts& lts) {
  const std::uint32_t unset = UINT32_MAX;
  std::vector<std::vector<std::uint32_t>> succ(lts.states.size());
  for (const Transition& t : lts.transitions) succ[t.source].push_back(t.target);
  std::vector<std::uint32_t> number(lts.states.size(), unset);
  std::uint32_t counter = 0;
  if (!lts.states.empty()) {
    std::deque<std::uint32_t> queue{lts.initial};
    number[lts.initial] = counter++;
    while (!queue.empty()) {
      std::uint32_t s = queue.front();
      queue.pop_front();
      for (std::uint32_t t : succ[s]) {
        if (number[t] == unset) {
          number[t] = counter++;
          queue.push_back(t);
        }
      }
    }
  }
  for (auto& n : number) {
    if (n == unset) n = counter++;
  }
  return number;
}

}  // namespace

void write_aut(std::ostream& out, const Lts& lts) {
  std::vector<std::uint32_t> number = aut_numbering(lts);
  std::vector<std::tuple<std::uint32_t, std::string, std::uint32_t>> lines;
  lines.reserve(lts.transitions.size());
  for (const Transition& t : lts.transitions) lines.emplace_back(number[t.source], t.label, number[t.target]);
  std::sort(lines.begin(), lines.end());
  out << "des (" << (lts.states.empty() ? 0 : number[lts.initial]) << ", " << lines.size() << ", "
      << lts.states.size() << ")\n";
  for (const auto& [s, label, t] : lines) out << "(" << s << ", \"" << label << "\", " << t << ")\n";
}

std::string to_aut(const Lts& lts) {
  std::ostringstream out;
  write_aut(out, lts);
  return out.str();
}

void write_lts_dot(std::ostream& out, const Lts& lts) {
  out << "digraph lts {\n  __init [shape=point];\n";
  for (std::uint32_t i = 0; i < lts.states.size(); ++i) {
    out << "  s" << i << " [label=\"" << lts.states[i].to_string() << "\"";
    if (i == lts.initial) out << ", peripheries=2";
    out << "];\n";
  }
  if (!lts.states.empty()) out << "  __init -> s" << lts.initial << ";\n";
  for (const Transition& t : lts.transitions) {
    out << "  s" << t.source << " -> s" << t.target << " [label=\"" << t.label << "\"];\n";
  }
  out << "}\n";
}

Lpe lts_to_lpe(const Lts& lts, std::string parameter, Sort sort, const std::vector<std::string>& alphabet) {
  Lpe lpe;
  lpe.parameter = std::move(parameter);
  lpe.parameter_sort = sort;
  for (const std::string& a : alphabet) {
    if (!lpe.has_action(a)) lpe.alphabet.push_back(a);
  }
  for (const Transition& t : lts.transitions) {
    Summand s;
    s.action = t.label;
    s.condition = Term::eq(Term::var(lpe.parameter, sort), Term::constant(lts.states[t.source]));
    s.next_state = Term::constant(lts.states[t.target]);
    if (!lpe.has_action(t.label)) lpe.alphabet.push_back(t.label);
    lpe.summands.push_back(std::move(s));
  }
  if (!lts.states.empty()) lpe.initial = lts.states[lts.initial];
  return lpe;
}

}  // namespace evcheck
