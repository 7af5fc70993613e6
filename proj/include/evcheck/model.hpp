#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evcheck/kernel.hpp"

namespace evcheck {

struct LocalVar {
  std::string name;
  Sort sort;
};

/// One condition-action-effect rule: `sum e:E . c(d,e) -> a . L(g(d,e))`.
struct Summand {
  std::string action;
  std::optional<LocalVar> local;
  Term condition;
  Term next_state;
};

/// Linear process equation with a single process parameter.
struct Lpe {
  std::string process_name = "L";
  std::string parameter;
  Sort parameter_sort = Sort::Nat;
  std::vector<Summand> summands;
  /// Action labels in first-declaration order (an `act` line, then summands).
  std::vector<std::string> alphabet;
  /// Value from the `init` line, if present.
  std::optional<Value> initial;

  bool has_action(std::string_view label) const;
};

/// Reads the textual LPE format:
///
///   act a, b;                       % optional
///   proc L(s : Nat) =
///       sum n : Nat . (s == 1 && 0 < n < 3) -> a . L(s + n)
///     + (s == 3) -> c . L(s);
///   init L(1);
///
/// `delta` stands for the empty sum.
Lpe parse_lpe(std::string_view text);

/// Checks the structural invariants of an Lpe built in code; throws
/// ErrorKind::IllFormed or SortMismatch.
void check_lpe(const Lpe& lpe);

struct Transition {
  std::uint32_t source;
  std::string label;
  std::uint32_t target;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Explicit labelled transition system. States are indexed by position in
/// `states`; index 0 need not be the initial state.
struct Lts {
  std::vector<Value> states;
  std::uint32_t initial = 0;
  std::vector<Transition> transitions;

  std::optional<std::uint32_t> index_of(const Value& state) const;
};

/// Reachable LTS of `lpe` from `init`. States are numbered in breadth-first
/// discovery order; transitions are sorted by (source, label, target) and
/// deduplicated. Throws BoundExceeded for unbounded sum variables and
/// StateExplosion when more than bounds.max_vertices states are found.
Lts explore_lts(const Lpe& lpe, const Value& init, const Bounds& bounds = {});

/// All successors of `state`: (summand index, local value or none, target).
struct Step {
  std::size_t summand;
  std::optional<Value> local;
  Value target;
};
std::vector<Step> successors(const Lpe& lpe, const Value& state, const Bounds& bounds);

/// Aldebaran format. States are renumbered in breadth-first order from the
/// initial state (so the initial state is 0); unreachable states follow in
/// their original order.
void write_aut(std::ostream& out, const Lts& lts);
std::string to_aut(const Lts& lts);

/// Graphviz rendering with the initial state marked.
void write_lts_dot(std::ostream& out, const Lts& lts);

/// Degenerate LPE whose behaviour is exactly `lts`: one summand per
/// transition, guarded by `parameter == source`. `alphabet` lists extra
/// labels to declare, so formulas over the original model still apply.
Lpe lts_to_lpe(const Lts& lts, std::string parameter, Sort sort, const std::vector<std::string>& alphabet = {});

}  // namespace evcheck
