#pragma once

#include <cstdint>
#include <vector>

#include "evcheck/graphs.hpp"

namespace evcheck {

struct GameSolution {
  std::vector<Player> winner;
  /// Chosen successor for vertices won by their owner; ParityGame::none
  /// otherwise.
  std::vector<std::uint32_t> strategy;
};

/// Zielonka's recursive algorithm, run on an explicit frame stack so deep
/// priority nestings cannot overflow the native stack. Strategies prefer the
/// lowest-numbered qualifying successor.
GameSolution zielonka(const ParityGame& g);

/// Instance-level evidence graph: from the initial vertex, follow the
/// winner's strategy at its own vertices and every edge at the opponent's,
/// then collapse synthetic vertices and drop sinks. Vertices are numbered in
/// breadth-first order, so the root is vertex 0.
/// Throws WrongPolarity when the initial vertex belongs to the other player.
EvidenceGraph extract_evidence_graph(const ParityGame& g, const GameSolution& sol, Polarity polarity);

}  // namespace evcheck
