#include "evcheck/graphs.hpp"

#include <algorithm>
#include <exception>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <omp.h>

#include "evcheck/error.hpp"

namespace evcheck {

// ---------------------------------------------------------------------------
// Grounding

namespace {

constexpr std::uint32_t kTrue = UINT32_MAX;
constexpr std::uint32_t kFalse = UINT32_MAX - 1;

class Grounder {
 public:
  Grounder(const Pbes& p, const Instance& owner, const Bounds& bounds, const CallFilter* filter)
      : p_(p), owner_(owner), bounds_(bounds), filter_(filter) {}

  GroundFormula run() {
    const Equation& eq = p_.equations.at(owner_.var);
    std::uint32_t root = go(*eq.rhs, bind_parameters(eq, owner_.args));
    if (root == kTrue || root == kFalse) {
      out_.nodes.push_back({root == kTrue ? GroundFormula::Kind::True : GroundFormula::Kind::False});
    } else if (root != out_.nodes.size() - 1) {
      out_.nodes.push_back(out_.nodes[root]);
    }
    return std::move(out_);
  }

 private:
  using Kind = GroundFormula::Kind;

  // Compound subformulas are grounded once per valuation of their free data
  // variables; nested modalities would otherwise repeat the same subtree for
  // every value of an outer, irrelevant quantifier.
  std::uint32_t go(const PfNode& f, const DataEnvironment& env) {
    if (f.op == PfOp::Data || f.op == PfOp::Call) return go_uncached(f, env);
    MemoKey key{&f, {}};
    for (const std::string& v : free_vars(f)) key.values.push_back(env.lookup(v));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::uint32_t r = go_uncached(f, env);
    memo_.emplace(std::move(key), r);
    return r;
  }

  std::uint32_t go_uncached(const PfNode& f, const DataEnvironment& env) {
    switch (f.op) {
      case PfOp::Data: return eval_bool(f.data, env) ? kTrue : kFalse;
      case PfOp::Call: {
        Instance callee{resolve(f.name), {}};
        for (const Term& t : f.args) callee.args.push_back(eval_term(t, env));
        if (filter_) {
          switch ((*filter_)(owner_, callee)) {
            case CallDecision::True: return kTrue;
            case CallDecision::False: return kFalse;
            case CallDecision::Keep: break;
          }
        }
        out_.calls.push_back(std::move(callee));
        auto c = static_cast<std::uint32_t>(out_.calls.size() - 1);
        out_.nodes.push_back({Kind::Call, c, c + 1});
        return static_cast<std::uint32_t>(out_.nodes.size() - 1);
      }
      case PfOp::And:
      case PfOp::Or: {
        const bool conj = f.op == PfOp::And;
        // Data operands first: they may decide the connective on their own.
        for (const auto& c : f.children) {
          if (c->op == PfOp::Data && eval_bool(c->data, env) != conj) return conj ? kFalse : kTrue;
        }
        std::vector<std::uint32_t> parts;
        for (const auto& c : f.children) {
          if (c->op == PfOp::Data) continue;
          std::uint32_t r = go(*c, env);
          if (r == (conj ? kFalse : kTrue)) return r;
          if (r == (conj ? kTrue : kFalse)) continue;
          parts.push_back(r);
        }
        return combine(conj ? Kind::And : Kind::Or, parts);
      }
      case PfOp::Exists:
      case PfOp::Forall: {
        const bool ex = f.op == PfOp::Exists;
        std::vector<std::uint32_t> parts;
        for (const Value& v : quantifier_range(f, env, bounds_)) {
          std::uint32_t r = go(*f.children[0], env.update(f.name, v));
          if (r == (ex ? kTrue : kFalse)) return r;
          if (r == (ex ? kFalse : kTrue)) continue;
          parts.push_back(r);
        }
        return combine(ex ? Kind::Or : Kind::And, parts);
      }
    }
    throw Error(ErrorKind::Internal, "unknown predicate formula operator");
  }

  std::uint32_t combine(Kind kind, const std::vector<std::uint32_t>& parts) {
    if (parts.empty()) return kind == Kind::And ? kTrue : kFalse;
    if (parts.size() == 1) return parts.front();
    auto begin = static_cast<std::uint32_t>(out_.kids.size());
    for (std::uint32_t part : parts) {
      const auto& n = out_.nodes[part];
      if (n.kind == kind) {
        // Splice same-kind operands; the spliced node is left unreferenced.
        for (std::uint32_t k = n.begin; k < n.end; ++k) out_.kids.push_back(out_.kids[k]);
      } else {
        out_.kids.push_back(part);
      }
    }
    out_.nodes.push_back({kind, begin, static_cast<std::uint32_t>(out_.kids.size())});
    return static_cast<std::uint32_t>(out_.nodes.size() - 1);
  }

  const std::vector<std::string>& free_vars(const PfNode& f) {
    auto it = free_.find(&f);
    if (it != free_.end()) return it->second;
    std::set<std::string> vars;
    switch (f.op) {
      case PfOp::Data: vars = evcheck::free_vars(f.data); break;
      case PfOp::Call:
        for (const Term& t : f.args) {
          auto fv = evcheck::free_vars(t);
          vars.insert(fv.begin(), fv.end());
        }
        break;
      default:
        for (const auto& c : f.children) {
          const auto& fv = free_vars(*c);
          vars.insert(fv.begin(), fv.end());
        }
        if (f.op == PfOp::Exists || f.op == PfOp::Forall) vars.erase(f.name);
    }
    return free_.emplace(&f, std::vector<std::string>(vars.begin(), vars.end())).first->second;
  }

  struct MemoKey {
    const PfNode* node;
    Args values;
    friend bool operator==(const MemoKey& a, const MemoKey& b) { return a.node == b.node && a.values == b.values; }
  };
  struct MemoHash {
    std::size_t operator()(const MemoKey& k) const noexcept {
      return std::hash<const void*>()(k.node) * 31 + hash_args(k.values);
    }
  };

  std::uint32_t resolve(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    std::uint32_t i = p_.index_of(name);
    index_.emplace(name, i);
    return i;
  }

  const Pbes& p_;
  const Instance& owner_;
  const Bounds& bounds_;
  const CallFilter* filter_;
  GroundFormula out_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::unordered_map<const PfNode*, std::vector<std::string>> free_;
  std::unordered_map<MemoKey, std::uint32_t, MemoHash> memo_;
};

}  // namespace

GroundFormula ground(const Pbes& p, const Instance& owner, const Bounds& bounds, const CallFilter* filter) {
  return Grounder(p, owner, bounds, filter).run();
}

// ---------------------------------------------------------------------------
// Instantiation

namespace {

class Instantiator {
 public:
  Instantiator(const Pbes& p, const CallFilter* filter, const Bounds& bounds, ExecPolicy policy)
      : p_(p), filter_(filter), bounds_(bounds), policy_(policy), ranks_(ranks(p)) {}

  ParityGame run() {
    add_vertex(Player::Even, 0, ParityGame::none, false);
    add_vertex(Player::Odd, 1, ParityGame::none, false);
    edge(ParityGame::true_sink, ParityGame::true_sink);
    edge(ParityGame::false_sink, ParityGame::false_sink);
    g_.initial = intern(p_.initial);

    constexpr std::size_t chunk = 4096;
    std::vector<GroundFormula> ground_chunk;
    std::vector<std::exception_ptr> errors;
    for (std::size_t next = 0; next < g_.instances.size();) {
      const std::size_t n = std::min(chunk, g_.instances.size() - next);
      ground_chunk.assign(n, {});
      errors.assign(n, nullptr);
      const bool parallel = policy_ == ExecPolicy::Parallel && n > 1;
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
      for (std::size_t k = 0; k < n; ++k) {
        try {
          ground_chunk[k] = ground(p_, g_.instances[next + k], bounds_, filter_);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (errors[k]) std::rethrow_exception(errors[k]);
        expand(static_cast<std::uint32_t>(next + k), ground_chunk[k]);
      }
      next += n;
    }
    build_csr();
    return std::move(g_);
  }

 private:
  using Kind = GroundFormula::Kind;

  std::uint32_t add_vertex(Player owner, std::uint32_t priority, std::uint32_t origin, bool synthetic) {
    if (g_.owner.size() >= bounds_.max_vertices) {
      throw Error(ErrorKind::StateExplosion, "game exceeds " + std::to_string(bounds_.max_vertices) + " vertices");
    }
    g_.owner.push_back(owner);
    g_.priority.push_back(priority);
    g_.origin.push_back(origin);
    g_.synthetic.push_back(synthetic);
    return static_cast<std::uint32_t>(g_.owner.size() - 1);
  }

  std::uint32_t intern(const Instance& i) {
    auto [it, fresh] = index_.try_emplace(i, 0);
    if (fresh) {
      auto idx = static_cast<std::uint32_t>(g_.instances.size());
      it->second = add_vertex(Player::Even, ranks_[i.var], idx, false);
      g_.instances.push_back(i);
      g_.instance_vertex.push_back(it->second);
    }
    return it->second;
  }

  void edge(std::uint32_t from, std::uint32_t to) { edge_list_.emplace_back(from, to); }

  void expand(std::uint32_t inst, const GroundFormula& f) {
    std::uint32_t v = g_.instance_vertex[inst];
    const auto& root = f.root();
    switch (root.kind) {
      case Kind::True: edge(v, ParityGame::true_sink); return;
      case Kind::False: edge(v, ParityGame::false_sink); return;
      case Kind::Call: edge(v, intern(f.calls[root.begin])); return;
      case Kind::And:
      case Kind::Or: build(f, root, v, inst); return;
    }
  }

  void build(const GroundFormula& f, const GroundFormula::Node& node, std::uint32_t v, std::uint32_t inst) {
    node_vertex_.assign(f.nodes.size(), ParityGame::none);
    build_node(f, node, v, inst);
  }

  // Ground nodes may be shared (memoised subformulas); each gets one vertex.
  void build_node(const GroundFormula& f, const GroundFormula::Node& node, std::uint32_t v, std::uint32_t inst) {
    g_.owner[v] = node.kind == Kind::And ? Player::Odd : Player::Even;
    succ_.clear();
    seen_.clear();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> nested;  // (kid node, fresh vertex)
    for (std::uint32_t k = node.begin; k < node.end; ++k) {
      const std::uint32_t id = f.kids[k];
      const auto& kid = f.nodes[id];
      if (kid.kind == Kind::Call) {
        push_unique(intern(f.calls[kid.begin]));
      } else if (node_vertex_[id] != ParityGame::none) {
        push_unique(node_vertex_[id]);
      } else {
        std::uint32_t s = add_vertex(Player::Even, ranks_[g_.instances[inst].var], inst, true);
        node_vertex_[id] = s;
        push_unique(s);
        nested.emplace_back(id, s);
      }
    }
    for (std::uint32_t s : succ_) edge(v, s);
    for (auto [kid, s] : nested) build_node(f, f.nodes[kid], s, inst);
  }

  void push_unique(std::uint32_t s) {
    if (succ_.size() <= 32) {
      if (std::find(succ_.begin(), succ_.end(), s) != succ_.end()) return;
      succ_.push_back(s);
      if (succ_.size() > 32) seen_.insert(succ_.begin(), succ_.end());
      return;
    }
    if (seen_.insert(s).second) succ_.push_back(s);
  }

  void build_csr() {
    const std::size_t n = g_.owner.size();
    g_.edge_begin.assign(n + 1, 0);
    for (auto [from, to] : edge_list_) ++g_.edge_begin[from + 1];
    for (std::size_t i = 0; i < n; ++i) g_.edge_begin[i + 1] += g_.edge_begin[i];
    g_.edges.resize(edge_list_.size());
    std::vector<std::uint32_t> fill(g_.edge_begin.begin(), g_.edge_begin.end() - 1);
    for (auto [from, to] : edge_list_) g_.edges[fill[from]++] = to;
    edge_list_.clear();
    edge_list_.shrink_to_fit();
  }

  const Pbes& p_;
  const CallFilter* filter_;
  const Bounds& bounds_;
  ExecPolicy policy_;
  std::vector<std::uint32_t> ranks_;
  ParityGame g_;
  std::unordered_map<Instance, std::uint32_t, InstanceHash> index_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list_;
  std::vector<std::uint32_t> succ_;
  std::unordered_set<std::uint32_t> seen_;
  std::vector<std::uint32_t> node_vertex_;
};

}  // namespace

ParityGame instantiate(const Pbes& p, const CallFilter* filter, const Bounds& bounds, ExecPolicy policy) {
  check_pbes(p);
  return Instantiator(p, filter, bounds, policy).run();
}

Predecessors predecessors(const ParityGame& g) {
  const std::size_t n = g.vertex_count();
  Predecessors pred;
  pred.begin.assign(n + 1, 0);
  for (std::uint32_t t : g.edges) ++pred.begin[t + 1];
  for (std::size_t i = 0; i < n; ++i) pred.begin[i + 1] += pred.begin[i];
  pred.list.resize(g.edges.size());
  std::vector<std::uint32_t> fill(pred.begin.begin(), pred.begin.end() - 1);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t t : g.successors(v)) pred.list[fill[t]++] = v;
  }
  return pred;
}

// ---------------------------------------------------------------------------
// Relevancy proxy

RelevancyGraph relevancy_graph(const ParityGame& g) {
  RelevancyGraph rg;
  rg.vertices = g.instances;
  std::vector<std::uint32_t> stack;
  std::unordered_set<std::uint32_t> inner;
  for (std::uint32_t i = 0; i < g.instances.size(); ++i) {
    std::vector<std::uint32_t> targets;
    inner.clear();
    stack.assign(1, g.instance_vertex[i]);
    while (!stack.empty()) {
      std::uint32_t v = stack.back();
      stack.pop_back();
      for (std::uint32_t s : g.successors(v)) {
        if (g.synthetic[s]) {
          if (inner.insert(s).second) stack.push_back(s);
        } else if (g.is_instance_vertex(s)) {
          targets.push_back(g.origin[s]);
        }
      }
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::uint32_t t : targets) rg.edges.emplace_back(i, t);
  }
  return rg;
}

RelevancyGraph relevancy_proxy(const Pbes& p, const Bounds& bounds) {
  return relevancy_graph(instantiate(p, nullptr, bounds));
}

// ---------------------------------------------------------------------------
// Evidence graphs

std::optional<std::uint32_t> EvidenceGraph::index_of(const Instance& i) const {
  for (std::uint32_t k = 0; k < vertices.size(); ++k) {
    if (vertices[k] == i) return k;
  }
  return std::nullopt;
}

std::vector<std::vector<std::uint32_t>> EvidenceGraph::successor_lists() const {
  std::vector<std::vector<std::uint32_t>> out(vertices.size());
  for (auto [a, b] : edges) out.at(a).push_back(b);
  return out;
}

namespace {

// Iterative Tarjan restricted to vertices with `keep[v]`. Calls `emit` with
// each strongly connected component.
template <typename Emit>
void strongly_connected(const std::vector<std::vector<std::uint32_t>>& succ, const std::vector<bool>& keep,
                        Emit emit) {
  const std::uint32_t n = static_cast<std::uint32_t>(succ.size());
  const std::uint32_t unset = UINT32_MAX;
  std::vector<std::uint32_t> index(n, unset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> work;  // (vertex, next successor position)
  std::uint32_t counter = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (!keep[root] || index[root] != unset) continue;
    work.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto& [v, pos] = work.back();
      if (pos < succ[v].size()) {
        std::uint32_t w = succ[v][pos++];
        if (!keep[w]) continue;
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::uint32_t done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<std::uint32_t> component;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != done);
        emit(component);
      }
    }
  }
}

}  // namespace

std::vector<Violation> validate_evidence_graph(const EvidenceGraph& g, const Pbes& p, const Bounds& bounds,
                                               ExecPolicy policy) {
  std::vector<Violation> out;
  const bool proof = g.polarity == Polarity::Proof;
  const auto n = static_cast<std::uint32_t>(g.vertices.size());
  for (auto [a, b] : g.edges) {
    if (a >= n || b >= n) return {{Violation::Kind::Unknown, "edge refers to a missing vertex"}};
  }
  for (const Instance& i : g.vertices) {
    bool fits = i.var < p.equations.size() && p.equations[i.var].params.size() == i.args.size();
    for (std::size_t k = 0; fits && k < i.args.size(); ++k) fits = p.equations[i.var].params[k].sort == i.args[k].sort();
    if (!fits) out.push_back({Violation::Kind::Unknown, "vertex " + to_string(p, i) + " is not in the signature"});
  }
  if (!out.empty()) return out;

  const auto succ = g.successor_lists();

  // Local condition: one evaluation per vertex suffices because the only free
  // data variables of a right-hand side are its parameters.
  std::vector<std::string> local(n);
#pragma omp parallel for schedule(dynamic, 8) if (policy == ExecPolicy::Parallel)
  for (std::uint32_t v = 0; v < n; ++v) {
    const Instance& x = g.vertices[v];
    const Equation& eq = p.equations[x.var];
    PredicateEnvironment eta(!proof);
    for (std::uint32_t w : succ[v]) eta.set(g.vertices[w], proof);
    try {
      if (eval_predicate_formula(p, eq.rhs, eta, bind_parameters(eq, x.args), bounds) != proof) {
        local[v] = std::string("successors of ") + to_string(p, x) + (proof ? " do not satisfy" : " do not falsify") +
                   " its right-hand side";
      }
    } catch (const Error& e) {
      local[v] = to_string(p, x) + ": " + e.what();
    }
  }
  for (auto& m : local) {
    if (!m.empty()) out.push_back({Violation::Kind::Local, std::move(m)});
  }

  // Parity: for every rank r of the losing parity, a cycle among vertices of
  // rank >= r that passes through rank r is a violation.
  const auto rank_of = ranks(p);
  std::set<std::uint32_t> bad;
  for (const Instance& x : g.vertices) {
    if ((rank_of[x.var] % 2 == 1) == proof) bad.insert(rank_of[x.var]);
  }
  for (std::uint32_t r : bad) {
    std::vector<bool> keep(n);
    for (std::uint32_t v = 0; v < n; ++v) keep[v] = rank_of[g.vertices[v].var] >= r;
    strongly_connected(succ, keep, [&](const std::vector<std::uint32_t>& comp) {
      bool cyclic = comp.size() > 1 ||
                    std::find(succ[comp[0]].begin(), succ[comp[0]].end(), comp[0]) != succ[comp[0]].end();
      if (!cyclic) return;
      for (std::uint32_t v : comp) {
        if (rank_of[g.vertices[v].var] == r) {
          out.push_back({Violation::Kind::Parity, "cycle through " + to_string(p, g.vertices[v]) +
                                                      " has least rank " + std::to_string(r)});
          return;
        }
      }
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string style_for(const Equation& eq) {
  switch (eq.role) {
    case EquationRole::ZPlus: return ", style=filled, fillcolor=palegreen";
    case EquationRole::ZMinus: return ", style=filled, fillcolor=lightpink";
    case EquationRole::Plain: break;
  }
  return "";
}

}  // namespace

void write_game_dot(std::ostream& out, const ParityGame& g, const Pbes& p) {
  out << "digraph game {\n";
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    std::string label;
    std::string extra;
    if (v == ParityGame::true_sink) label = "true";
    else if (v == ParityGame::false_sink) label = "false";
    else if (g.synthetic[v]) label = g.owner[v] == Player::Even ? "or" : "and";
    else {
      const Instance& i = g.instances[g.origin[v]];
      label = to_string(p, i);
      extra = style_for(p.equations[i.var]);
    }
    out << "  v" << v << " [label=\"" << label << " / " << g.priority[v] << "\", shape="
        << (g.owner[v] == Player::Even ? "diamond" : "box") << extra << "];\n";
  }
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    for (std::uint32_t w : g.successors(v)) out << "  v" << v << " -> v" << w << ";\n";
  }
  out << "}\n";
}

void write_relevancy_dot(std::ostream& out, const RelevancyGraph& g, const Pbes& p) {
  const auto r = ranks(p);
  out << "digraph relevancy {\n";
  for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
    const Instance& i = g.vertices[v];
    out << "  v" << v << " [label=\"" << to_string(p, i) << " / " << r[i.var] << "\""
        << style_for(p.equations[i.var]) << "];\n";
  }
  for (auto [a, b] : g.edges) out << "  v" << a << " -> v" << b << ";\n";
  out << "}\n";
}

void write_evidence_dot(std::ostream& out, const EvidenceGraph& g, const Pbes& p) {
  const auto r = ranks(p);
  out << "digraph " << (g.polarity == Polarity::Proof ? "proof" : "refutation") << " {\n";
  for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
    const Instance& i = g.vertices[v];
    out << "  v" << v << " [label=\"" << to_string(p, i) << " / " << r[i.var] << "\""
        << style_for(p.equations[i.var]) << (v == g.root ? ", peripheries=2" : "") << "];\n";
  }
  for (auto [a, b] : g.edges) out << "  v" << a << " -> v" << b << ";\n";
  out << "}\n";
}

}  // namespace evcheck
