#include "evcheck/transform.hpp"

#include <chrono>

#include <spdlog/spdlog.h>

#include "evcheck/encode.hpp"
#include "evcheck/error.hpp"

namespace evcheck {

CombineContext::CombineContext(const Pbes& p, const EvidenceGraph& guide)
    : polarity_(guide.polarity), evidence_(p.equations.size(), false) {
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    evidence_[i] = p.equations[i].role != EquationRole::Plain;
  }
  for (const Instance& v : guide.vertices) {
    if (v.var >= p.equations.size()) throw Error(ErrorKind::UnknownInstance, "guiding graph does not fit the system");
    vertices_.insert(v);
  }
  for (auto [a, b] : guide.edges) edges_[guide.vertices.at(a)].insert(guide.vertices.at(b));
}

bool CombineContext::has_edge(const Instance& owner, const Instance& callee) const {
  auto it = edges_.find(owner);
  return it != edges_.end() && it->second.count(callee) != 0;
}

std::vector<Args> CombineContext::vertex_args(std::uint32_t var) const {
  std::vector<Args> out;
  for (const Instance& i : vertices_) {
    if (i.var == var) out.push_back(i.args);
  }
  std::sort(out.begin(), out.end(), [](const Args& a, const Args& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return out;
}

std::vector<Args> CombineContext::edge_args(const Instance& owner, std::uint32_t target_var) const {
  std::vector<Args> out;
  auto it = edges_.find(owner);
  if (it == edges_.end()) return out;
  for (const Instance& i : it->second) {
    if (i.var == target_var) out.push_back(i.args);
  }
  std::sort(out.begin(), out.end(), [](const Args& a, const Args& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return out;
}

CallFilter CombineContext::filter() const {
  return [this](const Instance& owner, const Instance& callee) {
    if (!has_vertex(owner)) {
      throw Error(ErrorKind::UnknownInstance, "instance outside the guiding graph was expanded");
    }
    if (is_evidence_var(callee.var) || has_edge(owner, callee)) return CallDecision::Keep;
    return polarity_ == Polarity::Proof ? CallDecision::False : CallDecision::True;
  };
}

namespace {

PredicateFormula map_calls(const PredicateFormula& f, const std::function<PredicateFormula(const PfNode&)>& fn) {
  switch (f->op) {
    case PfOp::Data: return f;
    case PfOp::Call: return fn(*f);
    default: {
      PfNode n = *f;
      for (auto& c : n.children) c = map_calls(c, fn);
      return std::make_shared<const PfNode>(std::move(n));
    }
  }
}

Term tuple_eq(const std::vector<Term>& terms, const Args& values) {
  Term t = Term::boolean(true);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    Term e = Term::eq(terms[k], Term::constant(values[k]));
    t = k == 0 ? e : Term::land(t, e);
  }
  return t;
}

// e in S, as a disjunction of tuple equalities.
Term membership(const std::vector<Term>& e, const std::vector<Args>& set) {
  Term t = Term::boolean(false);
  for (std::size_t k = 0; k < set.size(); ++k) {
    Term eq = tuple_eq(e, set[k]);
    t = k == 0 ? eq : Term::lor(t, eq);
  }
  return t;
}

PredicateFormula restricted_call(const PfNode& call, const Term& member, Polarity pol) {
  PredicateFormula y = pf::call(call.name, call.args);
  if (pol == Polarity::Proof) return pf::conj(pf::data(member), y);
  return pf::disj(pf::data(Term::lnot(member)), y);
}

// With d_X fixed the guards of a quantifier are often closed, so an empty
// range (the b-branch at s == 1, say) can be folded away before grounding.
PredicateFormula fold_empty_ranges(const PredicateFormula& f) {
  if (f->op == PfOp::Data || f->op == PfOp::Call) return f;
  PfNode n = *f;
  for (auto& c : n.children) c = fold_empty_ranges(c);
  if (n.op == PfOp::Exists || n.op == PfOp::Forall) {
    try {
      if (quantifier_range(n, {}, Bounds{}).empty()) return pf::truth(n.op == PfOp::Forall);
    } catch (const Error&) {
      // open or unbounded guard: keep the quantifier
    }
  }
  return std::make_shared<const PfNode>(std::move(n));
}

}  // namespace

PredicateFormula combine_rhs(const CombineContext& ctx, const Pbes& p, const Instance& owner) {
  if (!ctx.has_vertex(owner)) {
    throw Error(ErrorKind::UnknownInstance, to_string(p, owner) + " is not a vertex of the guiding graph");
  }
  const Equation& eq = p.equations.at(owner.var);
  PredicateFormula f = eq.rhs;
  for (std::size_t k = 0; k < eq.params.size(); ++k) f = substitute(f, eq.params[k].name, Term::constant(owner.args[k]));
  f = map_calls(f, [&](const PfNode& call) {
    std::uint32_t y = p.index_of(call.name);
    if (ctx.is_evidence_var(y)) return pf::call(call.name, call.args);
    return restricted_call(call, membership(call.args, ctx.edge_args(owner, y)), ctx.polarity());
  });
  return simplify(fold_empty_ranges(simplify(f)));
}

Pbes materialize_combine(const CombineContext& ctx, const Pbes& p) {
  Pbes out = p;
  const bool proof = ctx.polarity() == Polarity::Proof;
  for (std::uint32_t x = 0; x < out.equations.size(); ++x) {
    Equation& eq = out.equations[x];
    if (eq.role != EquationRole::Plain) continue;
    std::vector<Term> dx;
    for (const Parameter& prm : eq.params) dx.push_back(Term::var(prm.name, prm.sort));
    const std::vector<Args> vx = ctx.vertex_args(x);
    eq.rhs = map_calls(eq.rhs, [&](const PfNode& call) {
      std::uint32_t y = p.index_of(call.name);
      if (ctx.is_evidence_var(y)) return pf::call(call.name, call.args);
      std::vector<PredicateFormula> clauses;
      for (const Args& v : vx) {
        Term at_v = tuple_eq(dx, v);
        Term member = membership(call.args, ctx.edge_args(Instance{x, v}, y));
        PredicateFormula body = restricted_call(call, member, ctx.polarity());
        clauses.push_back(proof ? pf::disj(pf::data(Term::lnot(at_v)), body) : pf::conj(pf::data(at_v), body));
      }
      return proof ? pf::conj(std::move(clauses)) : pf::disj(std::move(clauses));
    });
  }
  check_pbes(out);
  return out;
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Plain: return "plain";
    case Mode::Direct: return "direct";
    case Mode::TwoStep: return "two-step";
  }
  return "?";
}

Solved solve_pbes(const Pbes& p, const CallFilter* filter, const CheckOptions& options) {
  ParityGame game = instantiate(p, filter, options.bounds, options.policy);
  GameSolution sol = zielonka(game);
  const bool verdict = sol.winner[game.initial] == Player::Even;
  EvidenceGraph graph = extract_evidence_graph(game, sol, verdict ? Polarity::Proof : Polarity::Refutation);
  return {verdict, std::move(graph), game.instance_count(), game.vertex_count()};
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

CheckResult check(const Lpe& lpe, const MuFormula& phi, const Value& init, Mode mode, const CheckOptions& options) {
  CheckResult r;
  r.mode = mode;
  r.evidence_pbes = encode_with_evidence(lpe, phi, init);
  const Pbes& e = r.evidence_pbes;
  spdlog::debug("evidence system has {} equations", e.equations.size());

  if (mode == Mode::Direct) {
    auto t0 = Clock::now();
    Solved s = solve_pbes(e, nullptr, options);
    r.stats.direct_ms = ms_since(t0);
    r.stats.direct_vertices = s.instance_vertices;
    r.verdict = s.verdict;
    r.evidence = std::move(s.graph);
    spdlog::info("direct: {} instances, {} game vertices, {:.1f} ms", s.instance_vertices, s.game_vertices,
                 r.stats.direct_ms);
  } else {
    auto t0 = Clock::now();
    Solved core = solve_pbes(core_of(e), nullptr, options);
    r.stats.phase1_ms = ms_since(t0);
    r.stats.phase1_vertices = core.instance_vertices;
    r.stats.phase1_game_vertices = core.game_vertices;
    r.verdict = core.verdict;
    spdlog::info("phase 1: {} instances, {} game vertices, {:.1f} ms", core.instance_vertices, core.game_vertices,
                 r.stats.phase1_ms);
    if (mode == Mode::TwoStep) {
      auto t1 = Clock::now();
      Pbes stripped = strip_for_polarity(e, core.verdict);
      CombineContext ctx(e, core.graph);
      CallFilter filter = ctx.filter();
      Solved second = solve_pbes(stripped, &filter, options);
      r.stats.phase2_ms = ms_since(t1);
      r.stats.phase2_vertices = second.instance_vertices;
      r.stats.phase2_game_vertices = second.game_vertices;
      spdlog::info("phase 2: {} instances, {} game vertices, {:.1f} ms", second.instance_vertices,
                   second.game_vertices, r.stats.phase2_ms);
      if (second.verdict != core.verdict) {
        throw Error(ErrorKind::Internal, "restricted system disagrees with the core verdict");
      }
      r.evidence = std::move(second.graph);
      r.guide = std::move(core.graph);
    }
  }
  if (r.evidence && options.validate) {
    auto violations = validate_evidence_graph(*r.evidence, e, options.bounds, options.policy);
    if (!violations.empty()) {
      throw Error(ErrorKind::Internal, "evidence graph rejected: " + violations.front().message);
    }
  }
  return r;
}

CheckResult run_pipeline(const Lpe& lpe, const MuFormula& phi, const Value& init, const CheckOptions& options) {
  return check(lpe, phi, init, Mode::TwoStep, options);
}

}  // namespace evcheck
