#pragma once

#include <map>
#include <string>

#include "evcheck/formula.hpp"
#include "evcheck/model.hpp"
#include "evcheck/pbes.hpp"

namespace evcheck {

/// Z-variable names per action label.
struct EvidenceVariables {
  std::map<std::string, std::string> plus;
  std::map<std::string, std::string> minus;
};

/// Encodes `lpe, init |= phi` with evidence bookkeeping: one equation per
/// fixpoint binder (outermost first), then nu Zp_<a>(d, d1) = true for every
/// action, then mu Zm_<a>(d, d1) = false. The initial instance is the
/// outermost binder at `init`.
///
/// Throws InvalidFormula if phi is not a fixpoint and ActionNotInAlphabet if
/// a modality names an action the LPE does not have.
Pbes encode_with_evidence(const Lpe& lpe, const MuFormula& phi, const Value& init);

EvidenceVariables evidence_variables(const Pbes& p);

/// Z-equations kept; every Zp call in the main block becomes true and every
/// Zm call false. Throws Shape if the Z-blocks are malformed.
Pbes core_of(const Pbes& p);

/// For a true verdict eliminate Zm (:= false); for a false verdict eliminate
/// Zp (:= true).
Pbes strip_for_polarity(const Pbes& p, bool solution_is_true);

/// Throws Shape unless equations are plain*, Zp^k, Zm^k with matching actions.
void check_evidence_shape(const Pbes& p);

}  // namespace evcheck
