#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evcheck/pbes.hpp"

namespace evcheck {

enum class Player : std::uint8_t { Even, Odd };

inline Player opponent(Player p) { return p == Player::Even ? Player::Odd : Player::Even; }

/// Right-hand side of one instance after grounding: quantifiers expanded,
/// data folded, calls evaluated to instances. Nodes are stored flat; the
/// root is the last node.
struct GroundFormula {
  enum class Kind : std::uint8_t { True, False, Call, And, Or };
  struct Node {
    Kind kind;
    std::uint32_t begin = 0;  // Call: index into calls; And/Or: range into kids
    std::uint32_t end = 0;
  };
  std::vector<Node> nodes;
  std::vector<std::uint32_t> kids;
  std::vector<Instance> calls;

  const Node& root() const { return nodes.back(); }
};

/// What to do with a call while grounding the right-hand side of `owner`.
enum class CallDecision : std::uint8_t { Keep, True, False };
using CallFilter = std::function<CallDecision(const Instance& owner, const Instance& callee)>;

GroundFormula ground(const Pbes& p, const Instance& owner, const Bounds& bounds,
                     const CallFilter* filter = nullptr);

enum class ExecPolicy : std::uint8_t { Serial, Parallel };

/// Parity game under the min convention: the least priority seen infinitely
/// often decides, and even priorities are won by Even. Vertex 0 is the true sink (Even, 0,
/// self-loop), vertex 1 the false sink (Odd, 1, self-loop). Every other
/// vertex is either an instance vertex or a synthetic And/Or node owned by
/// the instance whose right-hand side it came from.
struct ParityGame {
  static constexpr std::uint32_t true_sink = 0;
  static constexpr std::uint32_t false_sink = 1;
  static constexpr std::uint32_t none = UINT32_MAX;

  std::vector<Player> owner;
  std::vector<std::uint32_t> priority;
  std::vector<std::uint32_t> edge_begin;  // size vertex_count() + 1
  std::vector<std::uint32_t> edges;
  /// Instance index per vertex, `none` for sinks. For synthetic vertices this
  /// is the owning instance.
  std::vector<std::uint32_t> origin;
  std::vector<bool> synthetic;
  /// Instances in discovery order and their vertices.
  std::vector<Instance> instances;
  std::vector<std::uint32_t> instance_vertex;
  std::uint32_t initial = none;

  std::size_t vertex_count() const { return owner.size(); }
  std::size_t instance_count() const { return instances.size(); }
  std::span<const std::uint32_t> successors(std::uint32_t v) const {
    return {edges.data() + edge_begin[v], edges.data() + edge_begin[v + 1]};
  }
  bool is_instance_vertex(std::uint32_t v) const { return v > false_sink && !synthetic[v]; }
};

/// Breadth-first instantiation from p.initial. With ExecPolicy::Parallel the
/// right-hand sides of a frontier are grounded concurrently; numbering is the
/// same as for a serial run.
ParityGame instantiate(const Pbes& p, const CallFilter* filter = nullptr, const Bounds& bounds = {},
                       ExecPolicy policy = ExecPolicy::Serial);

/// Predecessor lists in CSR form.
struct Predecessors {
  std::vector<std::uint32_t> begin;
  std::vector<std::uint32_t> list;
  std::span<const std::uint32_t> of(std::uint32_t v) const {
    return {list.data() + begin[v], list.data() + begin[v + 1]};
  }
};
Predecessors predecessors(const ParityGame& g);

/// Instance-level dependency graph (after folding).
struct RelevancyGraph {
  std::vector<Instance> vertices;  // discovery order, vertices[0] is the root
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // sorted, unique
};

RelevancyGraph relevancy_graph(const ParityGame& g);
RelevancyGraph relevancy_proxy(const Pbes& p, const Bounds& bounds = {});

enum class Polarity : std::uint8_t { Proof, Refutation };

inline Player player_of(Polarity p) { return p == Polarity::Proof ? Player::Even : Player::Odd; }

/// Proof graph (certifies true instances) or refutation graph (false ones).
/// Instances refer to equations of the PBES the graph is checked against.
struct EvidenceGraph {
  Polarity polarity = Polarity::Proof;
  std::vector<Instance> vertices;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // indices into vertices
  std::uint32_t root = 0;

  std::optional<std::uint32_t> index_of(const Instance& i) const;
  std::vector<std::vector<std::uint32_t>> successor_lists() const;
};

struct Violation {
  enum class Kind { Local, Parity, Unknown } kind;
  std::string message;
};

/// Checks the local condition (the successor set, read as eta, satisfies the
/// right-hand side for proofs and falsifies it for refutations) and the
/// parity condition (no cycle whose least rank has the wrong parity).
std::vector<Violation> validate_evidence_graph(const EvidenceGraph& g, const Pbes& p, const Bounds& bounds = {},
                                               ExecPolicy policy = ExecPolicy::Serial);

void write_game_dot(std::ostream& out, const ParityGame& g, const Pbes& p);
void write_relevancy_dot(std::ostream& out, const RelevancyGraph& g, const Pbes& p);
void write_evidence_dot(std::ostream& out, const EvidenceGraph& g, const Pbes& p);

}  // namespace evcheck
