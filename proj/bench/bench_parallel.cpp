// Serial reference vs OpenMP: game instantiation and evidence validation.

#include <benchmark/benchmark.h>
#include <spdlog/spdlog.h>

#include "evcheck/encode.hpp"
#include "evcheck/graphs.hpp"
#include "evcheck/solve.hpp"

using namespace evcheck;

namespace {

Lpe running(unsigned m) {
  const std::string M = std::to_string(m);
  return parse_lpe("proc L(s : Nat) =\n"
                   "    sum n : Nat . (s == 1 && 0 < n < " + M + ") -> a . L(s + n)\n"
                   "  + sum n : Nat . (0 < n < s < " + M + ") -> b . L(s - n)\n"
                   "  + (s == " + M + ") -> c . L(s);");
}

Value nat(std::uint64_t n) { return Value::natural(Natural(n)); }

const Pbes& evidence_system(unsigned m) {
  static std::map<unsigned, Pbes> cache;
  auto it = cache.find(m);
  if (it == cache.end()) {
    it = cache.emplace(m, encode_with_evidence(running(m), parse_formula("mu X . (<a> X || <b> X || nu Y . <c> Y)"),
                                               nat(1))).first;
  }
  return it->second;
}

// Every state can take a step and only the last one loops: the proof graph of
// "always some step" covers every instance.
const Pbes& chain_system(unsigned m) {
  static std::map<unsigned, Pbes> cache;
  auto it = cache.find(m);
  if (it == cache.end()) {
    const std::string M = std::to_string(m);
    Lpe lpe = parse_lpe("proc L(s : Nat) = sum n : Nat . (n < 4 && s + n < " + M + ") -> a . L(s + n)" +
                        " + (s + 1 == " + M + ") -> a . L(s);");
    it = cache.emplace(m, core_of(encode_with_evidence(lpe, parse_formula("nu X . <a> true && [a] X"), nat(0))))
             .first;
  }
  return it->second;
}

void instantiate_direct(benchmark::State& state, ExecPolicy policy) {
  const Pbes& e = evidence_system(static_cast<unsigned>(state.range(0)));
  std::size_t vertices = 0;
  for (auto _ : state) {
    ParityGame g = instantiate(e, nullptr, {}, policy);
    vertices = g.vertex_count();
    benchmark::DoNotOptimize(g.edges.data());
  }
  state.counters["vertices"] = static_cast<double>(vertices);
}

void validate_chain(benchmark::State& state, ExecPolicy policy) {
  const Pbes& p = chain_system(static_cast<unsigned>(state.range(0)));
  ParityGame g = instantiate(p);
  EvidenceGraph pg = extract_evidence_graph(g, zielonka(g), Polarity::Proof);
  for (auto _ : state) {
    auto violations = validate_evidence_graph(pg, p, {}, policy);
    if (!violations.empty()) state.SkipWithError("evidence rejected");
    benchmark::DoNotOptimize(violations.data());
  }
  state.counters["evidence_vertices"] = static_cast<double>(pg.vertices.size());
}

}  // namespace

BENCHMARK_CAPTURE(instantiate_direct, serial, ExecPolicy::Serial)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(instantiate_direct, parallel, ExecPolicy::Parallel)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(validate_chain, serial, ExecPolicy::Serial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(validate_chain, parallel, ExecPolicy::Parallel)->Arg(20000)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
