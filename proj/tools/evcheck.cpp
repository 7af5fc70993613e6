// evcheck: model check mu-calculus properties of linear processes and emit
// witnesses or counterexamples.

#include <cstdlib>
#include <functional>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "evcheck/encode.hpp"
#include "evcheck/error.hpp"
#include "evcheck/evidence.hpp"
#include "evcheck/syntax.hpp"
#include "evcheck/transform.hpp"

namespace {

using namespace evcheck;

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Syntax, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A formula argument is a file name when such a file exists, else the text.
std::string formula_text(const std::string& arg) {
  std::error_code ec;
  return std::filesystem::is_regular_file(arg, ec) ? slurp(arg) : arg;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("evcheck");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("CHECK_LOG")) {
    std::string level = env;
    if (level == "debug") spdlog::set_level(spdlog::level::debug);
    else if (level == "info") spdlog::set_level(spdlog::level::info);
  }
}

struct Inputs {
  Lpe lpe;
  MuFormula phi;
  Value init;
};

Inputs load(const std::string& model_path, const std::string& formula_arg, const std::string& init_override) {
  Inputs in;
  in.lpe = parse_lpe(slurp(model_path));
  check_lpe(in.lpe);
  if (!formula_arg.empty()) {
    MuFormula f = parse_formula(formula_text(formula_arg));
    in.phi = ensure_fixpoint_root(f);
    if (in.phi != f) spdlog::info("wrapped formula as {}", to_string(in.phi));
  }
  if (!init_override.empty()) {
    syntax::TokenStream ts(syntax::tokenize(init_override));
    in.init = eval_term(syntax::to_term(*syntax::parse_expr(ts), {}), {});
  } else if (in.lpe.initial) {
    in.init = *in.lpe.initial;
  } else {
    throw Error(ErrorKind::Syntax, "model has no init line; pass --init");
  }
  return in;
}

void write_stats(const std::string& path, const CheckResult& r) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(r.mode);
  j["verdict"] = r.verdict;
  if (r.mode != Mode::Direct) j["phase1_vertices"] = r.stats.phase1_vertices;
  if (r.mode == Mode::TwoStep) j["phase2_vertices"] = r.stats.phase2_vertices;
  if (r.stats.direct_vertices) j["direct_vertices"] = *r.stats.direct_vertices;
  nlohmann::ordered_json t;
  if (r.mode != Mode::Direct) t["phase1"] = r.stats.phase1_ms;
  if (r.mode == Mode::TwoStep) t["phase2"] = r.stats.phase2_ms;
  if (r.mode == Mode::Direct) t["direct"] = r.stats.direct_ms;
  j["wall_times_ms"] = t;
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Syntax, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Syntax, "cannot write '" + path + "'");
  body(out);
}

struct CheckArgs {
  std::string model;
  std::string formula;
  std::string mode = "two-step";
  std::string stats;
  std::string evidence;
  std::string graph;
  std::string init;
  std::uint64_t quantifier_cap = 10'000;
  std::uint64_t max_vertices = 10'000'000;
  bool parallel = false;
  bool verify = false;
};

int run_check(const CheckArgs& a) {
  Mode mode = a.mode == "plain" ? Mode::Plain : a.mode == "direct" ? Mode::Direct : Mode::TwoStep;
  Inputs in = load(a.model, a.formula, a.init);
  CheckOptions opt;
  opt.bounds.quantifier_cap = a.quantifier_cap;
  opt.bounds.max_vertices = a.max_vertices;
  opt.policy = a.parallel ? ExecPolicy::Parallel : ExecPolicy::Serial;

  CheckResult r = check(in.lpe, in.phi, in.init, mode, opt);
  std::cout << (r.verdict ? "true" : "false") << "\n";
  if (!a.stats.empty()) write_stats(a.stats, r);
  if (r.evidence) {
    Lts lts = evidence_lts(*r.evidence, r.evidence_pbes, in.lpe, in.init, opt.bounds);
    if (!a.evidence.empty()) {
      bool dot = std::filesystem::path(a.evidence).extension() == ".dot";
      write_file(a.evidence, [&](std::ostream& out) { dot ? export_dot(out, lts) : export_aut(out, lts); });
    }
    if (!a.graph.empty()) {
      write_file(a.graph, [&](std::ostream& out) { write_evidence_dot(out, *r.evidence, r.evidence_pbes); });
    }
    if (a.verify && !self_verify(lts, in.lpe, in.phi, r.verdict, opt)) {
      throw Error(ErrorKind::Internal, "evidence does not reproduce the verdict");
    }
    spdlog::info("evidence: {} states, {} transitions", lts.states.size(), lts.transitions.size());
  } else if (!a.evidence.empty() || !a.graph.empty()) {
    spdlog::warn("plain mode produces no evidence; nothing written");
  }
  return r.verdict ? kHolds : kFails;
}

int run_lts(const std::string& model, const std::string& init, const std::string& output, std::uint64_t cap,
            std::uint64_t max_states) {
  Inputs in = load(model, "", init);
  Bounds b{cap, max_states};
  Lts lts = explore_lts(in.lpe, in.init, b);
  bool dot = std::filesystem::path(output).extension() == ".dot";
  if (output.empty()) {
    export_aut(std::cout, lts);
  } else {
    write_file(output, [&](std::ostream& out) { dot ? export_dot(out, lts) : export_aut(out, lts); });
  }
  return 0;
}

int run_pbes(const std::string& model, const std::string& formula, const std::string& init, const std::string& form) {
  Inputs in = load(model, formula, init);
  Pbes e = encode_with_evidence(in.lpe, in.phi, in.init);
  if (form == "core") e = core_of(e);
  else if (form == "true") e = strip_for_polarity(e, true);
  else if (form == "false") e = strip_for_polarity(e, false);
  std::cout << dump_pbes(e);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Model check mu-calculus formulas on linear processes, with witnesses and counterexamples"};
  app.require_subcommand(1);

  CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check", "Decide whether the model satisfies the formula");
  check_cmd->add_option("model", ca.model, "Process file (.lpe)")->required();
  check_cmd->add_option("formula", ca.formula, "Formula file (.mcf) or formula text")->required();
  check_cmd->add_option("--mode", ca.mode, "plain, direct or two-step")
      ->check(CLI::IsMember({"plain", "direct", "two-step"}));
  check_cmd->add_option("--stats", ca.stats, "Write statistics as JSON");
  check_cmd->add_option("--evidence", ca.evidence, "Write witness/counterexample (.aut or .dot)");
  check_cmd->add_option("--graph", ca.graph, "Write the proof or refutation graph (.dot)");
  check_cmd->add_option("--init", ca.init, "Initial value, overriding the model's init line");
  check_cmd->add_option("--quantifier-cap", ca.quantifier_cap, "Largest enumerated quantifier range");
  check_cmd->add_option("--max-vertices", ca.max_vertices, "Largest game or state space");
  check_cmd->add_flag("--parallel", ca.parallel, "Ground right-hand sides with OpenMP");
  check_cmd->add_flag("--verify", ca.verify, "Re-check the formula on the emitted evidence");

  std::string lts_model, lts_init, lts_out;
  std::uint64_t lts_cap = 10'000, lts_max = 10'000'000;
  auto* lts_cmd = app.add_subcommand("lts", "Explore the state space");
  lts_cmd->add_option("model", lts_model, "Process file (.lpe)")->required();
  lts_cmd->add_option("-o,--output", lts_out, "Output file (.aut or .dot); stdout when omitted");
  lts_cmd->add_option("--init", lts_init, "Initial value");
  lts_cmd->add_option("--quantifier-cap", lts_cap);
  lts_cmd->add_option("--max-vertices", lts_max);

  std::string pb_model, pb_formula, pb_init, pb_form = "full";
  auto* pbes_cmd = app.add_subcommand("pbes", "Print the equation system with evidence variables");
  pbes_cmd->add_option("model", pb_model)->required();
  pbes_cmd->add_option("formula", pb_formula)->required();
  pbes_cmd->add_option("--init", pb_init);
  pbes_cmd->add_option("--form", pb_form, "full, core, true or false")
      ->check(CLI::IsMember({"full", "core", "true", "false"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*check_cmd) return run_check(ca);
    if (*lts_cmd) return run_lts(lts_model, lts_init, lts_out, lts_cap, lts_max);
    if (*pbes_cmd) return run_pbes(pb_model, pb_formula, pb_init, pb_form);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_resource_error(e.kind()) ? kResource : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
