#include "homsim/harness.hpp"

#include "homsim/fock.hpp"
#include "homsim/phase_basis.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace homsim {

Engine engine_from_name(std::string_view name) {
  if (name == "wave") return Engine::Wave;
  if (name == "fock") return Engine::Fock;
  if (name == "phase_basis") return Engine::PhaseBasis;
  if (name == "all") return Engine::All;
  throw ConfigError("unknown engine '" + std::string(name) + "' (wave|fock|phase_basis|all)");
}

const char* to_string(Engine e) {
  switch (e) {
    case Engine::Wave: return "wave";
    case Engine::Fock: return "fock";
    case Engine::PhaseBasis: return "phase_basis";
    case Engine::All: return "all";
  }
  return "?";
}

CircuitRef CircuitRef::builtin_ref(std::string_view name) {
  return {builtin(name), std::string(name), true};
}

CircuitRef CircuitRef::from_source(std::string_view source, std::string_view display_name) {
  ParseResult res = parse(source);
  if (const auto* err = std::get_if<ParseError>(&res)) {
    std::ostringstream os;
    os << display_name << ":" << err->line << ":" << err->column << ": " << err->message;
    throw ConfigError(os.str());
  }
  Circuit c = std::get<Circuit>(std::move(res));
  if (const auto v = validate(c)) {
    std::ostringstream os;
    os << display_name << ": " << v->message;
    if (v->element_index >= 0) os << " (element " << v->element_index << ")";
    throw ConfigError(os.str());
  }
  std::string id = c.name;
  return {std::move(c), std::move(id), false};
}

namespace {

constexpr double kCrossTol = 1e-12;

double bind_phase(const PhaseExpr& e, const RunConfig& cfg) {
  if (e.kind == PhaseExpr::Kind::Literal) return e.value;
  if (e.name == "theta") return cfg.theta.value_or(0.0);
  if (e.name == "zeta") return cfg.zeta.value_or(0.0);
  throw ConfigError("unbound parameter '" + e.name + "'");
}

bool references_param(const Circuit& c, std::string_view name) {
  const auto match = [&](const PhaseExpr& e) {
    return e.kind == PhaseExpr::Kind::Parameter && e.name == name;
  };
  for (const InputSpec& in : c.inputs)
    if (match(in.amp.phase)) return true;
  for (const Element& el : c.elements)
    if (const auto* ph = std::get_if<PhaseElement>(&el))
      if (match(ph->phi)) return true;
  return false;
}

int port_index(char port, int layer) { return (port - 'a') - 2 * layer; }

ResultRow base_row(const RunConfig& cfg, const char* engine) {
  ResultRow r;
  r.scenario = cfg.circuit.id;
  r.engine = engine;
  const Circuit& c = cfg.circuit.circuit;
  if (references_param(c, "theta")) r.theta = cfg.theta.value_or(0.0);
  if (references_param(c, "zeta")) r.zeta = cfg.zeta.value_or(0.0);
  return r;
}

// ---- wave engine ------------------------------------------------------

ResultRow wave_row(const RunConfig& cfg) {
  ResultRow row = base_row(cfg, "wave");
  const std::string& id = cfg.circuit.id;
  Eigen::Vector2d det;

  if (cfg.circuit.is_builtin && id == "hom") {
    det = hom_outputs(cfg.theta.value_or(0.0), BasisSign::Plus);
  } else if (cfg.circuit.is_builtin && id == "mzi") {
    const FieldVector in{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    det = intensities(apply_element(mzi_transfer(cfg.zeta.value_or(0.0)), in));
  } else if (cfg.circuit.is_builtin && id == "one_input_bs") {
    const FieldVector in{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    det = intensities(apply_element(bs_matrix(BasisSign::Plus), in));
  } else {
    const Circuit& c = cfg.circuit.circuit;
    FieldVector v{Complex{0.0, 0.0}, Complex{0.0, 0.0}};
    for (const InputSpec& in : c.inputs)
      v[in.port - 'a'] += in.amp.coefficient * std::polar(1.0, bind_phase(in.amp.phase, cfg));
    int layer = 0;
    for (const Element& el : c.elements) {
      if (const auto* bs = std::get_if<BsElement>(&el)) {
        v = apply_element(bs->superposed ? superposed_matrix(bs->basis_case) : bs_matrix(bs->sign), v);
        ++layer;
      } else {
        const auto& ph = std::get<PhaseElement>(el);
        v = apply_element(phase_matrix(port_index(ph.port, layer), bind_phase(ph.phi, cfg)), v);
      }
    }
    const Eigen::Vector2d inten = intensities(v);
    det = {inten[port_index(c.detectors[0], layer)], inten[port_index(c.detectors[1], layer)]};
  }

  row.i_port1 = det[0];
  row.i_port2 = det[1];
  row.r_norm = coincidence_normalized(det[0], det[1]).r_value;
  return row;
}

// ---- fock engine ------------------------------------------------------

bool fock_applicable(const Circuit& c) {
  for (const InputSpec& in : c.inputs)
    if (std::abs(std::abs(in.amp.coefficient) - 1.0) > 1e-9) return false;
  for (const Element& el : c.elements)
    if (const auto* bs = std::get_if<BsElement>(&el))
      if (bs->superposed) return false;
  return true;
}

FockState fock_walk(const Circuit& c, const RunConfig& cfg, int final_layer_out[1]) {
  int counts[2] = {0, 0};
  double phases[2] = {0.0, 0.0};
  for (const InputSpec& in : c.inputs) {
    const Complex amp = in.amp.coefficient * std::polar(1.0, bind_phase(in.amp.phase, cfg));
    if (std::abs(std::abs(amp) - 1.0) > 1e-9)
      throw ConfigError("fock engine requires unit-magnitude (single-photon) inputs");
    const int mode = in.port - 'a';
    counts[mode] = 1;
    phases[mode] = std::arg(amp);
  }
  FockState s = FockState::basis(counts[0], counts[1]);
  for (int mode = 0; mode < 2; ++mode)
    if (counts[mode] == 1 && phases[mode] != 0.0) s = phase_transform(s, mode, phases[mode]);

  int layer = 0;
  for (const Element& el : c.elements) {
    if (const auto* bs = std::get_if<BsElement>(&el)) {
      if (bs->superposed)
        throw ConfigError(
            "superposed beam splitters have no Fock-space form; use the wave engine");
      s = bs_transform(s, bs->sign);
      ++layer;
    } else {
      const auto& ph = std::get<PhaseElement>(el);
      s = phase_transform(s, port_index(ph.port, layer), bind_phase(ph.phi, cfg));
    }
  }
  final_layer_out[0] = layer;
  return s;
}

ResultRow fock_row(const RunConfig& cfg) {
  ResultRow row = base_row(cfg, "fock");
  const std::string& id = cfg.circuit.id;

  if (cfg.circuit.is_builtin && id == "mzi") {
    const auto [pe, pf] = single_photon_mzi(cfg.zeta.value_or(0.0));
    row.i_port1 = pe;
    row.i_port2 = pf;
    row.r_norm = 0.0;  // one photon cannot coincide
    return row;
  }

  int layer = 0;
  FockState s = fock_walk(cfg.circuit.circuit, cfg, &layer);
  const Circuit& c = cfg.circuit.circuit;
  const Eigen::Vector2d occ = mean_occupations(s);
  const int d0 = port_index(c.detectors[0], layer);
  const int d1 = port_index(c.detectors[1], layer);
  row.i_port1 = occ[d0];
  row.i_port2 = occ[d1];
  row.r_norm = coincidence_prob(s);
  if (s.max_total() == 2) {
    const auto [p20, p02] = bunching_probs(s);
    row.extra["p_20"] = format_g17(d0 == 0 ? p20 : p02);
    row.extra["p_02"] = format_g17(d0 == 0 ? p02 : p20);
  }
  return row;
}

// ---- phase-basis engine ------------------------------------------------

ResultRow phase_basis_row(const RunConfig& cfg) {
  ResultRow row = base_row(cfg, "phase_basis");
  const std::string& id = cfg.circuit.id;
  const BasisCase same_plus{BasisRelation::Same, BasisCombination::Symmetric, BasisSign::Plus};

  if (!cfg.circuit.is_builtin)
    throw ConfigError("phase_basis engine evaluates the builtin scenarios (hom, mzi, one_input_bs)");

  if (id == "hom") {
    const HomCaseResult res = evaluate_hom_case(same_plus, cfg.theta.value_or(0.0));
    row.i_port1 = res.i_c;
    row.i_port2 = res.i_d;
    row.r_norm = res.r;
    row.extra["case"] = case_token(same_plus);
  } else if (id == "mzi") {
    const Bs1Rule bs1 = Bs1Rule::plain(BasisSign::Plus);
    const MziCaseResult res = evaluate_mzi_case(bs1, same_plus, cfg.zeta.value_or(0.0));
    row.i_port1 = res.i_e;
    row.i_port2 = res.i_f;
    row.r_norm = res.r_ef;
    row.extra["case"] = case_token(same_plus);
    row.extra["bs1"] = rule_label(bs1);
  } else if (id == "one_input_bs") {
    const Eigen::Vector2d i = intensities(one_input_bs_case(BasisSign::Plus));
    row.i_port1 = i[0];
    row.i_port2 = i[1];
    row.r_norm = coincidence_normalized(i[0], i[1]).r_value;
    row.extra["superposition"] = "+";
  } else {
    throw ConfigError("phase_basis engine: unknown builtin '" + id + "'");
  }
  return row;
}

// ---- cross-engine consistency -----------------------------------------

void require_close(const std::string& what, double a, double b) {
  if (std::abs(a - b) > kCrossTol) {
    std::ostringstream os;
    os << "cross-engine mismatch: " << what << " differs (" << format_g17(a) << " vs "
       << format_g17(b) << ")";
    throw CrossEngineMismatchError(os.str());
  }
}

const ResultRow* find_engine(const std::vector<ResultRow>& rows, std::string_view engine) {
  for (const ResultRow& r : rows)
    if (r.engine == engine) return &r;
  return nullptr;
}

// Wave and phase-basis agree wherever both run (same/symmetric superposition
// is the plain BS); wave and fock agree on single-photon scenarios. Two-photon
// fock coincidences are expected to differ from the classical R.
void cross_check(const RunConfig& cfg, const std::vector<ResultRow>& rows) {
  const ResultRow* wave = find_engine(rows, "wave");
  const ResultRow* fock = find_engine(rows, "fock");
  const ResultRow* pb = find_engine(rows, "phase_basis");
  if (!wave) return;
  const std::string& id = cfg.circuit.id;

  if (pb && cfg.circuit.is_builtin && (id == "hom" || id == "mzi")) {
    require_close(id + " wave/phase_basis i_port1", wave->i_port1, pb->i_port1);
    require_close(id + " wave/phase_basis i_port2", wave->i_port2, pb->i_port2);
    require_close(id + " wave/phase_basis r_norm", wave->r_norm, pb->r_norm);
  }

  bool single_photon = false;
  if (cfg.circuit.is_builtin) {
    single_photon = id == "mzi" || id == "one_input_bs";
  } else {
    single_photon = cfg.circuit.circuit.inputs.size() == 1;
  }
  if (fock && single_photon) {
    require_close(id + " wave/fock i_port1", wave->i_port1, fock->i_port1);
    require_close(id + " wave/fock i_port2", wave->i_port2, fock->i_port2);
  }
}

std::vector<ResultRow> run_engines(const RunConfig& cfg) {
  std::vector<ResultRow> rows;
  switch (cfg.engine) {
    case Engine::Wave:
      rows.push_back(wave_row(cfg));
      break;
    case Engine::Fock:
      rows.push_back(fock_row(cfg));
      break;
    case Engine::PhaseBasis:
      rows.push_back(phase_basis_row(cfg));
      break;
    case Engine::All:
      rows.push_back(wave_row(cfg));
      if (fock_applicable(cfg.circuit.circuit)) rows.push_back(fock_row(cfg));
      if (cfg.circuit.is_builtin) rows.push_back(phase_basis_row(cfg));
      cross_check(cfg, rows);
      break;
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> cmd_run(const RunConfig& config) {
  if (!config.circuit.is_builtin)
    if (const auto v = validate(config.circuit.circuit))
      throw ConfigError("invalid circuit: " + v->message);

  if (config.ensemble) {
    if (config.engine != Engine::Wave)
      throw ConfigError("ensemble statistics require the wave engine");
    if (config.circuit.id != "hom")
      throw ConfigError("ensemble averaging is defined for the hom scenario");
    return {cmd_ensemble(config.ensemble->n, config.ensemble->seed, config.ensemble->dist)};
  }
  return run_engines(config);
}

std::vector<ResultRow> cmd_sweep(const RunConfig& config, SweepParam param, double from,
                                 double to, int steps) {
  if (steps < 2) throw ConfigError("sweep needs at least 2 steps");
  if (!std::isfinite(from) || !std::isfinite(to))
    throw ConfigError("sweep range must be finite");
  if (from > to) throw ConfigError("reversed sweep range (from > to)");
  if (config.ensemble) throw ConfigError("sweep does not take ensemble settings");

  std::vector<ResultRow> rows;
  for (int i = 0; i < steps; ++i) {
    const double x =
        i + 1 == steps ? to : from + (to - from) * (static_cast<double>(i) / (steps - 1));
    RunConfig point = config;
    (param == SweepParam::Theta ? point.theta : point.zeta) = x;
    std::vector<ResultRow> point_rows = cmd_run(point);
    rows.insert(rows.end(), point_rows.begin(), point_rows.end());
  }
  return rows;
}

std::vector<ResultRow> cmd_classify() {
  std::vector<ResultRow> rows;
  for (const CaseVerdict& v : classify_all()) {
    ResultRow r;
    r.scenario = "classify";
    r.engine = "phase_basis";
    if (!v.degenerate) {
      const HomCaseResult h = evaluate_hom_case(v.basis_case, kPi / 2.0);
      r.i_port1 = h.i_c;
      r.i_port2 = h.i_d;
      r.r_norm = v.hom_r_at_quadrature;
    }
    r.extra["case"] = case_token(v.basis_case);
    r.extra["relation"] = v.basis_case.relation == BasisRelation::Same ? "same" : "opposite";
    r.extra["combination"] =
        v.basis_case.combination == BasisCombination::Symmetric ? "symmetric" : "antisymmetric";
    r.extra["sign"] = to_string(v.basis_case.primary_sign);
    r.extra["allowed"] = v.allowed ? "true" : "false";
    r.extra["degenerate"] = v.degenerate ? "true" : "false";
    r.extra["mzi_directional"] = v.mzi_directional ? "true" : "false";
    r.extra["notes"] = v.notes;
    rows.push_back(std::move(r));
  }
  return rows;
}

ResultRow cmd_ensemble(std::int64_t n, std::uint64_t seed, const PhaseDistribution& dist) {
  const EnsembleStats st = ensemble_average("hom", dist, n, seed);
  ResultRow r;
  r.scenario = "hom";
  r.engine = "wave";
  if (dist.kind == PhaseDistKind::FixedTheta) r.theta = dist.fixed_theta;
  r.i_port1 = st.mean_intensity[0];
  r.i_port2 = st.mean_intensity[1];
  r.r_norm = st.mean_r;
  r.extra["dist"] = dist.kind == PhaseDistKind::UniformTheta ? "uniform" : "fixed";
  r.extra["n"] = std::to_string(st.n_samples);
  r.extra["seed"] = std::to_string(st.seed);
  r.extra["var_r"] = format_g17(st.var_r);
  r.extra["std_err"] = format_g17(std::sqrt(st.var_r / static_cast<double>(st.n_samples)));
  return r;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

std::string extra_to_string(const std::map<std::string, std::string>& extra) {
  std::string out;
  for (const auto& [k, v] : extra) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

}  // namespace

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = "scenario,engine,theta,zeta,i_port1,i_port2,r_norm,extra\n";
  for (const ResultRow& r : rows) {
    out += csv_escape(r.scenario) + ',' + csv_escape(r.engine) + ',';
    out += (r.theta ? format_g17(*r.theta) : std::string()) + ',';
    out += (r.zeta ? format_g17(*r.zeta) : std::string()) + ',';
    out += format_g17(r.i_port1) + ',' + format_g17(r.i_port2) + ',' + format_g17(r.r_norm) + ',';
    out += csv_escape(extra_to_string(r.extra));
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<ResultRow>& rows) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ResultRow& r = rows[i];
    out += "  {\"scenario\":\"" + json_escape(r.scenario) + "\",";
    out += "\"engine\":\"" + json_escape(r.engine) + "\",";
    out += "\"theta\":" + (r.theta ? format_g17(*r.theta) : std::string("null")) + ",";
    out += "\"zeta\":" + (r.zeta ? format_g17(*r.zeta) : std::string("null")) + ",";
    out += "\"i_port1\":" + format_g17(r.i_port1) + ",";
    out += "\"i_port2\":" + format_g17(r.i_port2) + ",";
    out += "\"r_norm\":" + format_g17(r.r_norm) + ",";
    out += "\"extra\":{";
    bool first = true;
    for (const auto& [k, v] : r.extra) {
      if (!first) out += ",";
      first = false;
      out += "\"" + json_escape(k) + "\":\"" + json_escape(v) + "\"";
    }
    out += "}}";
    out += i + 1 < rows.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

void emit(const std::vector<ResultRow>& rows, OutputFormat format,
          const std::optional<std::string>& path) {
  if (rows.empty()) throw EmitError("no rows to emit");
  const std::string text = format == OutputFormat::Csv ? to_csv(rows) : to_json(rows);
  if (!path) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) throw EmitError("cannot open '" + *path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw EmitError("write failed for '" + *path + "'");
}

}  // namespace homsim
