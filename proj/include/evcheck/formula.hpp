#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace evcheck {

enum class Fixpoint : std::uint8_t { Mu, Nu };

inline const char* to_string(Fixpoint f) { return f == Fixpoint::Mu ? "mu" : "nu"; }

enum class MuOp : std::uint8_t { True, False, Var, And, Or, Box, Diamond, Fix };

struct MuNode;
using MuFormula = std::shared_ptr<const MuNode>;

/// Modal mu-calculus formula with single-action modalities.
struct MuNode {
  MuOp op;
  std::string name;  // Var: variable; Box/Diamond: action; Fix: bound variable
  Fixpoint fixpoint = Fixpoint::Mu;
  MuFormula left;   // And/Or: left operand; Box/Diamond/Fix: body
  MuFormula right;  // And/Or only
};

namespace mu {
MuFormula truth(bool b);
MuFormula var(std::string name);
MuFormula conj(MuFormula a, MuFormula b);
MuFormula disj(MuFormula a, MuFormula b);
MuFormula box(std::string action, MuFormula body);
MuFormula diamond(std::string action, MuFormula body);
MuFormula fix(Fixpoint sigma, std::string var, MuFormula body);
}  // namespace mu

/// Parses `mu X . (<a> X || [b] false)`-style text. Fixpoints bind weakest,
/// then `||`, then `&&`; modalities bind strongest. Binders are renamed so
/// that every fixpoint variable is bound exactly once in the whole formula.
/// Throws SyntaxError, or Error(OpenFormula) naming the first free variable.
MuFormula parse_formula(std::string_view text);

/// Same closedness check and renaming for formulas built in code.
MuFormula close_and_rename(const MuFormula& f);

std::string to_string(const MuFormula& f);

/// Binders in pre-order (outermost first, left to right).
std::vector<std::pair<Fixpoint, std::string>> bound_vars_in_order(const MuFormula& f);

/// Action labels mentioned in modalities, in order of first occurrence.
std::vector<std::string> actions_of(const MuFormula& f);

/// Wraps a formula that is not a fixpoint in `nu <fresh> . f`; identity
/// otherwise.
MuFormula ensure_fixpoint_root(const MuFormula& f);

bool alpha_equivalent(const MuFormula& a, const MuFormula& b);

}  // namespace evcheck
