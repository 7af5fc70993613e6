#include "evcheck/evidence.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include "evcheck/error.hpp"

namespace evcheck {

Lts evidence_lts(const EvidenceGraph& g, const Pbes& p, const Lpe& lpe, const Value& init, const Bounds& bounds) {
  const EquationRole wanted = g.polarity == Polarity::Proof ? EquationRole::ZPlus : EquationRole::ZMinus;
  Lts lts;
  auto state = [&](const Value& v) {
    if (auto i = lts.index_of(v)) return *i;
    lts.states.push_back(v);
    return static_cast<std::uint32_t>(lts.states.size() - 1);
  };
  lts.initial = state(init);
  std::set<std::tuple<std::uint32_t, std::string, std::uint32_t>> seen;
  for (const Instance& i : g.vertices) {
    const Equation& eq = p.equations.at(i.var);
    if (eq.role != wanted) continue;
    const Value& from = i.args.at(0);
    const Value& to = i.args.at(1);
    bool is_step = false;
    for (const Step& s : successors(lpe, from, bounds)) {
      if (lpe.summands[s.summand].action == eq.action && s.target == to) {
        is_step = true;
        break;
      }
    }
    if (!is_step) {
      throw Error(ErrorKind::DanglingEvidence,
                  from.to_string() + " -" + eq.action + "-> " + to.to_string() + " is not a transition of the model");
    }
    std::uint32_t a = state(from);
    std::uint32_t b = state(to);
    if (seen.emplace(a, eq.action, b).second) lts.transitions.push_back({a, eq.action, b});
  }
  std::sort(lts.transitions.begin(), lts.transitions.end(), [](const Transition& x, const Transition& y) {
    return std::tie(x.source, x.label, x.target) < std::tie(y.source, y.label, y.target);
  });

  std::vector<bool> reached(lts.states.size(), false);
  std::deque<std::uint32_t> queue{lts.initial};
  reached[lts.initial] = true;
  while (!queue.empty()) {
    std::uint32_t s = queue.front();
    queue.pop_front();
    for (const Transition& t : lts.transitions) {
      if (t.source == s && !reached[t.target]) {
        reached[t.target] = true;
        queue.push_back(t.target);
      }
    }
  }
  for (std::uint32_t s = 0; s < lts.states.size(); ++s) {
    if (!reached[s]) {
      throw Error(ErrorKind::DanglingEvidence, "evidence state " + lts.states[s].to_string() + " is unreachable");
    }
  }
  return lts;
}

void export_aut(std::ostream& out, const Lts& lts) { write_aut(out, lts); }

void export_dot(std::ostream& out, const Lts& lts) { write_lts_dot(out, lts); }

bool self_verify(const Lts& evidence, const Lpe& lpe, const MuFormula& phi, bool expected,
                 const CheckOptions& options) {
  Lpe small = lts_to_lpe(evidence, lpe.parameter, lpe.parameter_sort, lpe.alphabet);
  CheckOptions plain = options;
  plain.validate = false;
  CheckResult r = check(small, phi, evidence.states.at(evidence.initial), Mode::Plain, plain);
  return r.verdict == expected;
}

}  // namespace evcheck
