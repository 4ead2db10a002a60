// homsim: two-photon beam-splitter and Mach-Zehnder interference calculator.
// Subcommands: run, sweep, classify, ensemble, parse-check.

#include "homsim/harness.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace homsim;

double parse_angle_flag(const std::string& text, const char* flag) {
  const auto v = parse_angle_token(text);
  if (!v)
    throw ConfigError(std::string("bad angle for ") + flag + ": '" + text +
                      "' (use radians or pi forms like pi/2, -pi/2, 2pi)");
  return *v;
}

CircuitRef load_circuit(const std::string& name_or_path) {
  if (is_builtin(name_or_path)) return CircuitRef::builtin_ref(name_or_path);
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open circuit file '" + name_or_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return CircuitRef::from_source(buf.str(), name_or_path);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("HOMSIM_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("HOMSIM_SEED is not a valid 64-bit seed: '") + env + "'");
  }
  return 1;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("unknown format '" + name + "' (csv|json)");
}

struct CommonOpts {
  std::string circuit = "hom";
  std::string engine = "wave";
  std::string theta;
  std::string zeta;
  std::string format = "csv";
  std::string out;
};

void add_output_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "Output format: csv|json")->capture_default_str();
  cmd->add_option("--out", o.out, "Output path (default: stdout)");
}

RunConfig make_config(const CommonOpts& o) {
  RunConfig cfg;
  cfg.circuit = load_circuit(o.circuit);
  cfg.engine = engine_from_name(o.engine);
  if (!o.theta.empty()) cfg.theta = parse_angle_flag(o.theta, "--theta");
  if (!o.zeta.empty()) cfg.zeta = parse_angle_flag(o.zeta, "--zeta");
  cfg.format = parse_format(o.format);
  if (!o.out.empty()) cfg.out_path = o.out;
  return cfg;
}

int run_parse_check(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open circuit file '" << path << "'\n";
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const ParseResult res = parse(buf.str());
  if (const auto* err = std::get_if<ParseError>(&res)) {
    std::cerr << "parse error: " << path << ":" << err->line << ":" << err->column << ": "
              << err->message << "\n";
    if (!err->snippet.empty()) std::cerr << "  | " << err->snippet << "\n";
    return 1;
  }
  const Circuit& c = std::get<Circuit>(res);
  if (const auto v = validate(c)) {
    std::cerr << "validation error: " << path << ": " << v->message;
    if (v->element_index >= 0) std::cerr << " (element " << v->element_index << ")";
    std::cerr << "\n";
    return 1;
  }
  std::cout << "ok: circuit '" << c.name << "' (" << c.elements.size()
            << (c.elements.size() == 1 ? " element)\n" : " elements)\n");
  std::cout << render(c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homsim: beam-splitter / Mach-Zehnder interference calculator with classical-wave,"
               " Fock, and phase-basis-superposition engines"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "Evaluate a circuit once");
  run_cmd->add_option("--circuit", run_opts.circuit, "Builtin (hom|mzi|one_input_bs) or .circ file")
      ->capture_default_str();
  run_cmd->add_option("--engine", run_opts.engine, "wave|fock|phase_basis|all")
      ->capture_default_str();
  run_cmd->add_option("--theta", run_opts.theta, "Input phase theta (radians or pi forms)");
  run_cmd->add_option("--zeta", run_opts.zeta, "MZI path phase zeta (radians or pi forms)");
  add_output_opts(run_cmd, run_opts);

  CommonOpts sweep_opts;
  std::string sweep_param;
  std::string sweep_from;
  std::string sweep_to;
  int sweep_steps = 0;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Evaluate over a parameter grid");
  sweep_cmd->add_option("--circuit", sweep_opts.circuit, "Builtin or .circ file")
      ->capture_default_str();
  sweep_cmd->add_option("--engine", sweep_opts.engine, "wave|fock|phase_basis|all")
      ->capture_default_str();
  sweep_cmd->add_option("--param", sweep_param, "theta|zeta")->required();
  sweep_cmd->add_option("--from", sweep_from, "Grid start (radians or pi forms)")->required();
  sweep_cmd->add_option("--to", sweep_to, "Grid end, inclusive")->required();
  sweep_cmd->add_option("--steps", sweep_steps, "Grid points (>= 2)")->required();
  sweep_cmd->add_option("--theta", sweep_opts.theta, "Fixed theta when sweeping zeta");
  sweep_cmd->add_option("--zeta", sweep_opts.zeta, "Fixed zeta when sweeping theta");
  add_output_opts(sweep_cmd, sweep_opts);

  CommonOpts classify_opts;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "Verdict table for every phase-basis superposition case");
  add_output_opts(classify_cmd, classify_opts);

  CommonOpts ensemble_opts;
  std::int64_t ensemble_n = 100000;
  std::uint64_t ensemble_seed = 0;
  bool seed_given = false;
  CLI::App* ensemble_cmd =
      app.add_subcommand("ensemble", "Monte Carlo HOM ensemble over the input phase theta");
  ensemble_cmd->add_option("--n", ensemble_n, "Sample count")->capture_default_str();
  CLI::Option* seed_opt = ensemble_cmd->add_option(
      "--seed", ensemble_seed, "RNG seed (default: HOMSIM_SEED env or 1)");
  ensemble_cmd->add_option("--theta", ensemble_opts.theta,
                           "Fix theta instead of drawing it uniformly");
  add_output_opts(ensemble_cmd, ensemble_opts);

  std::string check_path;
  CLI::App* check_cmd = app.add_subcommand("parse-check", "Parse and validate a .circ file");
  check_cmd->add_option("file", check_path, "Circuit file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run_cmd)) {
      const RunConfig cfg = make_config(run_opts);
      emit(cmd_run(cfg), cfg.format, cfg.out_path);
    } else if (app.got_subcommand(sweep_cmd)) {
      const RunConfig cfg = make_config(sweep_opts);
      SweepParam param;
      if (sweep_param == "theta") param = SweepParam::Theta;
      else if (sweep_param == "zeta") param = SweepParam::Zeta;
      else throw ConfigError("unknown sweep parameter '" + sweep_param + "' (theta|zeta)");
      const double from = parse_angle_flag(sweep_from, "--from");
      const double to = parse_angle_flag(sweep_to, "--to");
      emit(cmd_sweep(cfg, param, from, to, sweep_steps), cfg.format, cfg.out_path);
    } else if (app.got_subcommand(classify_cmd)) {
      const RunConfig cfg = make_config(classify_opts);
      emit(cmd_classify(), cfg.format, cfg.out_path);
    } else if (app.got_subcommand(ensemble_cmd)) {
      const RunConfig cfg = make_config(ensemble_opts);
      seed_given = seed_opt->count() > 0;
      const std::uint64_t seed = seed_given ? ensemble_seed : default_seed();
      const PhaseDistribution dist = cfg.theta ? PhaseDistribution::fixed(*cfg.theta)
                                               : PhaseDistribution::uniform();
      emit({cmd_ensemble(ensemble_n, seed, dist)}, cfg.format, cfg.out_path);
    } else if (app.got_subcommand(check_cmd)) {
      return run_parse_check(check_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
