#pragma once

#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "evcheck/graphs.hpp"
#include "evcheck/model.hpp"
#include "evcheck/solve.hpp"

namespace evcheck {

/// The guiding graph of the combine step, indexed for membership tests.
class CombineContext {
 public:
  CombineContext(const Pbes& p, const EvidenceGraph& guide);

  Polarity polarity() const { return polarity_; }
  bool is_evidence_var(std::uint32_t var) const { return evidence_[var]; }
  bool has_vertex(const Instance& i) const { return vertices_.count(i) != 0; }
  /// w in E_{X(v),Y} for callee = Y(w).
  bool has_edge(const Instance& owner, const Instance& callee) const;
  /// V_X.
  std::vector<Args> vertex_args(std::uint32_t var) const;
  /// E_{X(v),Y}.
  std::vector<Args> edge_args(const Instance& owner, std::uint32_t target_var) const;

  /// On-the-fly restriction for instantiate(). Calls to evidence variables
  /// are kept; other calls are kept when the guiding graph has the edge and
  /// replaced by false (proof) or true (refutation) otherwise. Expanding an
  /// owner outside the guiding graph throws UnknownInstance.
  CallFilter filter() const;

 private:
  Polarity polarity_;
  std::vector<bool> evidence_;
  std::unordered_set<Instance, InstanceHash> vertices_;
  std::unordered_map<Instance, std::unordered_set<Instance, InstanceHash>, InstanceHash> edges_;
};

/// Right-hand side of X(v) after the combine substitution, with d_X := v and
/// constant folding. Throws UnknownInstance when v is not in V_X.
PredicateFormula combine_rhs(const CombineContext& ctx, const Pbes& p, const Instance& owner);

/// The combined system written out literally: every non-evidence call Y(e)
/// in phi_X becomes the conjunction over v in V_X of
/// (d_X == v => e in E_{X(v),Y} && Y(e)); refutations use the dual
/// disjunction of (d_X == v && (e notin E_{X(v),Y} || Y(e))). Meant for
/// small inputs and tests.
Pbes materialize_combine(const CombineContext& ctx, const Pbes& p);

enum class Mode : std::uint8_t { Plain, Direct, TwoStep };

const char* to_string(Mode m);

struct CheckOptions {
  Bounds bounds;
  ExecPolicy policy = ExecPolicy::Serial;
  /// Re-validate the final evidence graph against the full evidence system.
  bool validate = true;
};

struct CheckStats {
  std::size_t phase1_vertices = 0;  // instance vertices
  std::size_t phase2_vertices = 0;
  std::optional<std::size_t> direct_vertices;
  std::size_t phase1_game_vertices = 0;
  std::size_t phase2_game_vertices = 0;
  double phase1_ms = 0;
  double phase2_ms = 0;
  double direct_ms = 0;
};

struct CheckResult {
  bool verdict = false;
  Mode mode = Mode::TwoStep;
  /// The evidence system E; evidence graph instances index its equations.
  Pbes evidence_pbes;
  /// Absent in plain mode.
  std::optional<EvidenceGraph> evidence;
  /// Phase-1 proof or refutation graph of core(E) (two-step mode only).
  std::optional<EvidenceGraph> guide;
  CheckStats stats;
};

/// Model checks `lpe, init |= phi`. Plain solves core(E); direct solves E;
/// two-step solves core(E), then the stripped system restricted to the
/// phase-1 graph. Throws Error(Internal) if validation of the evidence graph
/// against E fails.
CheckResult check(const Lpe& lpe, const MuFormula& phi, const Value& init, Mode mode,
                  const CheckOptions& options = {});

/// check() in two-step mode.
CheckResult run_pipeline(const Lpe& lpe, const MuFormula& phi, const Value& init, const CheckOptions& options = {});

/// Solve a PBES and return the verdict for its initial instance together with
/// the evidence graph of the matching polarity.
struct Solved {
  bool verdict;
  EvidenceGraph graph;
  std::size_t instance_vertices;
  std::size_t game_vertices;
};
Solved solve_pbes(const Pbes& p, const CallFilter* filter, const CheckOptions& options);

}  // namespace evcheck
