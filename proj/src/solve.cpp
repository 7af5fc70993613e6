#include "evcheck/solve.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "evcheck/error.hpp"

namespace evcheck {

namespace {

constexpr std::uint32_t kNone = ParityGame::none;

inline Player parity_player(std::uint32_t priority) { return priority % 2 == 0 ? Player::Even : Player::Odd; }

class Zielonka {
 public:
  explicit Zielonka(const ParityGame& g)
      : g_(g),
        pred_(predecessors(g)),
        n_(static_cast<std::uint32_t>(g.vertex_count())),
        depth_(n_, 0),
        attr_mark_(n_, 0),
        count_mark_(n_, 0),
        count_(n_, 0),
        a_mark_(n_, 0) {
    sol_.winner.assign(n_, Player::Even);
    sol_.strategy.assign(n_, kNone);
  }

  GameSolution run() {
    struct Frame {
      std::int32_t depth;
      std::vector<std::uint32_t> verts;
      int stage = 0;
      Player alpha = Player::Even;
      std::uint64_t a_token = 0;
      std::uint32_t min_priority = 0;
    };
    std::vector<Frame> stack;
    {
      Frame root{0, {}};
      root.verts.resize(n_);
      for (std::uint32_t v = 0; v < n_; ++v) root.verts[v] = v;
      stack.push_back(std::move(root));
    }
    while (!stack.empty()) {
      Frame& f = stack.back();
      const std::int32_t d = f.depth;
      if (f.stage == 0) {
        if (f.verts.empty()) {
          stack.pop_back();
          continue;
        }
        std::uint32_t p = std::numeric_limits<std::uint32_t>::max();
        for (std::uint32_t v : f.verts) p = std::min(p, g_.priority[v]);
        f.min_priority = p;
        f.alpha = parity_player(p);
        std::vector<std::uint32_t> target;
        for (std::uint32_t v : f.verts) {
          if (g_.priority[v] == p) target.push_back(v);
        }
        std::vector<std::uint32_t> attr = attractor(d, f.alpha, target);
        f.a_token = ++token_;
        for (std::uint32_t v : attr) a_mark_[v] = f.a_token;
        std::vector<std::uint32_t> rest;
        for (std::uint32_t v : f.verts) {
          if (a_mark_[v] == f.a_token) {
            depth_[v] = d;
          } else {
            depth_[v] = d + 1;
            rest.push_back(v);
          }
        }
        f.stage = 1;
        if (!rest.empty()) {
          Frame child{d + 1, std::move(rest)};
          stack.push_back(std::move(child));  // invalidates f
        }
        continue;
      }

      // stage 1: the subgame without the attractor has been solved.
      const Player alpha = f.alpha;
      const Player beta = opponent(alpha);
      std::vector<std::uint32_t> lost;
      for (std::uint32_t v : f.verts) {
        if (a_mark_[v] != f.a_token && sol_.winner[v] == beta) lost.push_back(v);
      }
      if (lost.empty()) {
        for (std::uint32_t v : f.verts) {
          if (a_mark_[v] != f.a_token) continue;
          sol_.winner[v] = alpha;
          if (g_.priority[v] == f.min_priority && g_.owner[v] == alpha) {
            sol_.strategy[v] = min_successor_in_frame(v, d);
          }
        }
        stack.pop_back();
        continue;
      }
      std::vector<std::uint32_t> b = attractor(d, beta, lost);
      for (std::uint32_t v : b) {
        sol_.winner[v] = beta;
        depth_[v] = d - 1;
      }
      std::erase_if(f.verts, [&](std::uint32_t v) { return depth_[v] < d; });
      f.stage = 0;
    }
    for (std::uint32_t v = 0; v < n_; ++v) {
      if (sol_.winner[v] != g_.owner[v]) sol_.strategy[v] = kNone;
    }
    return std::move(sol_);
  }

 private:
  bool in_frame(std::uint32_t v, std::int32_t d) const { return depth_[v] >= d; }

  std::uint32_t min_successor_in_frame(std::uint32_t v, std::int32_t d) const {
    std::uint32_t best = kNone;
    for (std::uint32_t w : g_.successors(v)) {
      if (in_frame(w, d)) best = std::min(best, w);
    }
    return best;
  }

  // Attractor for `player` to `target` inside frame d. Newly attracted
  // vertices of `player` get a strategy into the attractor.
  std::vector<std::uint32_t> attractor(std::int32_t d, Player player, const std::vector<std::uint32_t>& target) {
    const std::uint64_t epoch = ++epoch_;
    std::vector<std::uint32_t> out(target);
    for (std::uint32_t v : target) attr_mark_[v] = epoch;
    for (std::size_t head = 0; head < out.size(); ++head) {
      std::uint32_t u = out[head];
      for (std::uint32_t v : pred_.of(u)) {
        if (attr_mark_[v] == epoch || !in_frame(v, d)) continue;
        if (g_.owner[v] == player) {
          std::uint32_t best = kNone;
          for (std::uint32_t w : g_.successors(v)) {
            if (attr_mark_[w] == epoch && in_frame(w, d)) best = std::min(best, w);
          }
          sol_.strategy[v] = best;
        } else {
          if (count_mark_[v] != epoch) {
            count_mark_[v] = epoch;
            std::uint32_t c = 0;
            for (std::uint32_t w : g_.successors(v)) c += in_frame(w, d) ? 1 : 0;
            count_[v] = c;
          }
          if (--count_[v] > 0) continue;
        }
        attr_mark_[v] = epoch;
        out.push_back(v);
      }
    }
    return out;
  }

  const ParityGame& g_;
  Predecessors pred_;
  std::uint32_t n_;
  std::vector<std::int32_t> depth_;
  std::vector<std::uint64_t> attr_mark_;
  std::vector<std::uint64_t> count_mark_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint64_t> a_mark_;
  std::uint64_t epoch_ = 0;
  std::uint64_t token_ = 0;
  GameSolution sol_;
};

}  // namespace

GameSolution zielonka(const ParityGame& g) { return Zielonka(g).run(); }

EvidenceGraph extract_evidence_graph(const ParityGame& g, const GameSolution& sol, Polarity polarity) {
  const Player me = player_of(polarity);
  if (g.initial == kNone || sol.winner[g.initial] != me) {
    throw Error(ErrorKind::WrongPolarity, std::string("initial vertex is not won by the ") +
                                              (me == Player::Even ? "proving" : "refuting") + " player");
  }
  auto moves = [&](std::uint32_t v) -> std::span<const std::uint32_t> {
    if (g.owner[v] == me) return {&sol.strategy[v], 1};
    return g.successors(v);
  };

  EvidenceGraph out;
  out.polarity = polarity;
  std::unordered_map<std::uint32_t, std::uint32_t> index;  // game vertex -> evidence vertex
  std::deque<std::uint32_t> queue;
  auto visit = [&](std::uint32_t v) {
    auto [it, fresh] = index.try_emplace(v, static_cast<std::uint32_t>(out.vertices.size()));
    if (fresh) {
      out.vertices.push_back(g.instances[g.origin[v]]);
      queue.push_back(v);
    }
    return it->second;
  };
  visit(g.initial);
  std::vector<std::uint32_t> stack;
  std::vector<std::uint32_t> targets;
  std::unordered_set<std::uint32_t> inner;  // synthetic vertices are shared within a right-hand side
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    std::uint32_t from = index.at(v);
    targets.clear();
    inner.clear();
    stack.assign(1, v);
    while (!stack.empty()) {
      std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t w : moves(u)) {
        if (w == kNone) throw Error(ErrorKind::Internal, "winner vertex without strategy");
        if (g.synthetic[w]) {
          if (inner.insert(w).second) stack.push_back(w);
        } else if (g.is_instance_vertex(w)) {
          targets.push_back(w);
        } else if (sol.winner[w] != me) {
          throw Error(ErrorKind::Internal, "strategy leaves the winning region");
        }
      }
    }
    for (std::uint32_t w : targets) {
      if (sol.winner[w] != me) throw Error(ErrorKind::Internal, "strategy leaves the winning region");
      out.edges.emplace_back(from, visit(w));
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  out.root = 0;
  return out;
}

}  // namespace evcheck
