#pragma once

// Scenario runner behind the CLI: evaluates circuits on the selected engines,
// sweeps parameters, classifies superposition cases, runs ensembles, and
// serializes result rows as CSV or JSON.

#include "homsim/circuit.hpp"
#include "homsim/wave.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace homsim {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CrossEngineMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Engine { Wave, Fock, PhaseBasis, All };
enum class OutputFormat { Csv, Json };

Engine engine_from_name(std::string_view name);  // wave|fock|phase_basis|all
const char* to_string(Engine e);

struct CircuitRef {
  Circuit circuit;
  std::string id;          // builtin name or the circuit's declared name
  bool is_builtin = true;  // builtins use the closed-form scenario evaluators

  static CircuitRef builtin_ref(std::string_view name);
  // Parses and validates; throws ConfigError with a formatted message.
  static CircuitRef from_source(std::string_view source, std::string_view display_name);
};

struct EnsembleRequest {
  std::int64_t n = 1;
  std::uint64_t seed = 0;
  PhaseDistribution dist = PhaseDistribution::uniform();
};

struct RunConfig {
  CircuitRef circuit = CircuitRef::builtin_ref("hom");
  Engine engine = Engine::Wave;
  std::optional<double> theta;  // raw radians as given; engines reduce
  std::optional<double> zeta;
  std::optional<EnsembleRequest> ensemble;  // requires engine == Wave
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> out_path;  // nullopt -> stdout
};

struct ResultRow {
  std::string scenario;
  std::string engine;
  std::optional<double> theta;
  std::optional<double> zeta;
  double i_port1 = 0.0;
  double i_port2 = 0.0;
  double r_norm = 0.0;
  std::map<std::string, std::string> extra;

  bool operator==(const ResultRow&) const = default;
};

// One evaluation per selected engine; engine All also cross-checks the rows
// that must agree (wave vs phase-basis everywhere, wave vs fock on
// single-photon scenarios) to 1e-12 and throws CrossEngineMismatchError
// otherwise.
std::vector<ResultRow> cmd_run(const RunConfig& config);

enum class SweepParam { Theta, Zeta };

// Inclusive linear grid over [from, to]; one row per grid point per engine,
// ordered by grid index. steps >= 2; reversed ranges are rejected.
std::vector<ResultRow> cmd_sweep(const RunConfig& config, SweepParam param, double from,
                                 double to, int steps);

// Verdict table of classify_all(), one row per basis case.
std::vector<ResultRow> cmd_classify();

// Uniform-theta (or fixed-theta) HOM ensemble via the wave engine.
ResultRow cmd_ensemble(std::int64_t n, std::uint64_t seed, const PhaseDistribution& dist);

std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json(const std::vector<ResultRow>& rows);

// Writes CSV/JSON to the path (or stdout when nullopt). Nothing is created on
// error: empty rows or an unwritable path throw EmitError.
void emit(const std::vector<ResultRow>& rows, OutputFormat format,
          const std::optional<std::string>& path);

}  // namespace homsim
