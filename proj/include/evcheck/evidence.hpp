#pragma once

#include <iosfwd>
#include <string>

#include "evcheck/graphs.hpp"
#include "evcheck/model.hpp"
#include "evcheck/transform.hpp"

namespace evcheck {

/// Witness (proof) or counterexample (refutation) LTS: one transition
/// d -a-> d1 per Zp_a(d, d1) (proof) or Zm_a(d, d1) (refutation) vertex of
/// `g`. States are the endpoints plus `init`, in order of first appearance.
///
/// Throws DanglingEvidence if a transition is not a step of `lpe` or a state
/// cannot be reached from `init` within the evidence itself.
Lts evidence_lts(const EvidenceGraph& g, const Pbes& p, const Lpe& lpe, const Value& init,
                 const Bounds& bounds = {});

void export_aut(std::ostream& out, const Lts& lts);
void export_dot(std::ostream& out, const Lts& lts);

/// Re-checks `phi` on the evidence LTS viewed as an LPE. Returns true when
/// the verdict there equals `expected`.
bool self_verify(const Lts& evidence, const Lpe& lpe, const MuFormula& phi, bool expected,
                 const CheckOptions& options = {});

}  // namespace evcheck
