// squidmodes: command-line front end.
//
//   squidmodes [--config FILE] [--out DIR] [--format csv|json] <command> [options]
//
// Exit codes: 0 ok, 1 bad input, 2 solver failure, 3 calibration failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "squidmodes/config.hpp"
#include "squidmodes/coupling.hpp"
#include "squidmodes/dynamics.hpp"
#include "squidmodes/errors.hpp"
#include "squidmodes/modesolver.hpp"
#include "squidmodes/output.hpp"
#include "squidmodes/quantizer.hpp"

namespace {

using namespace squidmodes;
using nlohmann::json;

enum Exit { kOk = 0, kBadInput = 1, kSolverFailure = 2, kCalibrationFailure = 3 };

struct CalibrationFailure : Error {
  using Error::Error;
};

struct Globals {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
};

struct ModesArgs {
  int branch = 1;
  int M = 1;
  int points = 401;
  bool eliminated = false;
};

struct SweepArgs {
  double omega_d_GHz = std::numeric_limits<double>::quiet_NaN();
  double amp_min = 0.0;
  double amp_max = 0.4;
  int steps = 41;
  std::vector<int> branches{1, 3, 5};
};

struct CouplingArgs {
  std::vector<double> omega_d_GHz{0.5, 6.0};
  double amp_max = 0.3;
  int steps = 31;
  int transmon = 0;
};

struct GateArgs {
  bool lossless = false;
  bool no_kerr = false;
  double T1_us = std::numeric_limits<double>::quiet_NaN();
  double T2_us = std::numeric_limits<double>::quiet_NaN();
  double kappa_MHz = std::numeric_limits<double>::quiet_NaN();
  double G_MHz = std::numeric_limits<double>::quiet_NaN();
  double delta_MHz = std::numeric_limits<double>::quiet_NaN();
  int N = 0;
  double dt_ns = 0.0;
  bool serial = false;
};

std::string path_in(const Globals& g, const std::string& name) {
  return (std::filesystem::path(g.out_dir) / name).string();
}

// Tables go out as CSV or as a JSON object of columns.
std::string write_table(const Globals& g, const std::string& stem, const std::vector<std::string>& header,
                        const std::vector<std::vector<double>>& columns) {
  if (g.format == "json") {
    json doc = json::object();
    for (std::size_t j = 0; j < header.size(); ++j) {
      json col = json::array();
      for (double v : columns[j]) col.push_back(std::isfinite(v) ? json(v) : json(nullptr));
      doc[header[j]] = col;
    }
    const std::string path = path_in(g, stem + ".json");
    write_json(path, doc);
    return path;
  }
  const std::string path = path_in(g, stem + ".csv");
  write_csv(path, header, columns);
  return path;
}

void print_warnings(const std::vector<Issue>& issues) {
  for (const auto& i : issues)
    if (i.severity == Issue::Severity::kWarning) std::cerr << "warning: " << i.field << ": " << i.message << "\n";
}

DriveTone first_tone(const RunConfig& cfg) { return cfg.tones.empty() ? DriveTone{} : cfg.tones.front(); }

json mode_record(const FloquetMode& m, const QuantizedMode& q) {
  return json{{"branch", m.branch},
              {"kd", m.kd},
              {"omega_GHz", rad_to_ghz(m.omega)},
              {"omega_plus_GHz", rad_to_ghz(m.omega_plus())},
              {"omega_minus_GHz", rad_to_ghz(m.omega_minus())},
              {"A_plus", m.A_plus},
              {"A_minus", m.A_minus},
              {"C_omega_fF", q.C_omega * 1e15},
              {"phi_zpf_Wb", q.phi_zpf},
              {"kerr_kHz", rad_to_khz(q.kerr)},
              {"residual", m.residual}};
}

int cmd_modes(const Globals& g, const RunConfig& cfg, const ModesArgs& a, RunManifest& man) {
  print_warnings(validate(cfg.circuit, cfg.tones));
  SolveOptions opt;
  if (a.eliminated) opt.convention = SidebandConvention::kEliminated;
  const DriveTone tone = first_tone(cfg);
  const bool driven = !cfg.tones.empty();
  FloquetMode m;
  if (driven) {
    m = floquet_mode(cfg.circuit, tone, a.branch, opt);
  } else {
    // no modulation: the static root, with both sidebands collapsed onto the carrier
    m.branch = a.branch;
    m.kd = static_root(gamma_of(cfg.circuit), a.branch);
    m.omega = omega_of_kd(cfg.circuit, m.kd);
    m.half_length = cfg.circuit.d;
  }
  const QuantizedMode q = quantize(m, cfg.circuit);
  json rec = mode_record(m, q);
  rec["M"] = a.M;
  rec["convention"] = a.eliminated ? "eliminated" : "printed";
  if (a.M > 1 && driven) {
    const GeneralFloquetMode gm = floquet_mode_general(cfg.circuit, tone, a.branch, a.M, opt);
    rec["kd_general"] = gm.mode.kd;
    rec["kd_difference"] = gm.mode.kd - m.kd;
    rec["amplitudes"] = gm.amplitudes;
  }

  std::vector<double> x(static_cast<std::size_t>(a.points));
  for (int i = 0; i < a.points; ++i)
    x[static_cast<std::size_t>(i)] = -cfg.circuit.d + 2.0 * cfg.circuit.d * i / (a.points - 1);
  const ModeProfile prof = mode_profile(m, x);

  const std::string json_path = path_in(g, "mode.json");
  write_json(json_path, rec);
  man.outputs.push_back(json_path);
  man.outputs.push_back(
      write_table(g, "profile", {"x_m", "u_omega", "u_plus", "u_minus"}, {prof.x, prof.u_omega, prof.u_plus, prof.u_minus}));
  return kOk;
}

int cmd_sweep(const Globals& g, const RunConfig& cfg, const SweepArgs& a, RunManifest& man) {
  if (a.steps < 2) throw ParameterError("steps", "need at least 2 steps");
  double omega_d = std::isnan(a.omega_d_GHz) ? first_tone(cfg).omega_d : ghz_to_rad(a.omega_d_GHz);
  if (std::isnan(a.omega_d_GHz) && cfg.tones.empty()) omega_d = ghz_to_rad(2.0);
  std::vector<double> ratios(static_cast<std::size_t>(a.steps));
  for (int i = 0; i < a.steps; ++i)
    ratios[static_cast<std::size_t>(i)] = a.amp_min + (a.amp_max - a.amp_min) * i / (a.steps - 1);
  for (double r : ratios)
    if (std::abs(r) >= 1.0) throw ParameterError("amp", "modulation exceeds static Josephson energy");

  std::size_t good = 0;
  for (int b : a.branches) {
    const auto pts = drive_sweep(cfg.circuit, omega_d, ratios, b, {}, false);
    std::vector<double> amp, f;
    for (const auto& p : pts) {
      amp.push_back(p.ratio);
      f.push_back(p.ok() ? rad_to_ghz(p.omega) : std::numeric_limits<double>::quiet_NaN());
      if (p.ok())
        ++good;
      else
        man.errors.push_back("branch " + std::to_string(b) + " at dEJ/EJ0=" + format_number(p.ratio) + ": " + p.error);
    }
    man.outputs.push_back(write_table(g, "sweep_branch" + std::to_string(b), {"dEJ_over_EJ0", "omega_GHz"}, {amp, f}));
  }
  for (const auto& e : man.errors) std::cerr << "error: " << e << "\n";
  return good == 0 ? kSolverFailure : kOk;
}

int cmd_coupling(const Globals& g, const RunConfig& cfg, const CouplingArgs& a, RunManifest& man) {
  if (a.steps < 2) throw ParameterError("steps", "need at least 2 steps");
  if (cfg.transmons.empty()) throw ParameterError("transmons", "the coupling command needs a transmon");
  if (a.transmon < 0 || a.transmon >= static_cast<int>(cfg.transmons.size()))
    throw ParameterError("transmon", "no transmon with that index");
  const TransmonParams base = cfg.transmons[static_cast<std::size_t>(a.transmon)];
  print_warnings(validate(base));

  const double omega_static = omega_of_kd(cfg.circuit, static_root(gamma_of(cfg.circuit), 1));
  json summary = json::array();
  for (double wd_ghz : a.omega_d_GHz) {
    const double wd = ghz_to_rad(wd_ghz);
    TransmonParams t = base;
    // the transmon sits on the lower sideband of the undriven first mode
    if (std::abs(t.Omega - (omega_static - wd)) > mhz_to_rad(50.0))
      std::cerr << "warning: transmon frequency " << rad_to_ghz(t.Omega) << " GHz retuned to the lower sideband "
                << rad_to_ghz(omega_static - wd) << " GHz for omega_d = " << wd_ghz << " GHz\n";
    t.Omega = omega_static - wd;
    t.E_C = TransmonParams::charging_energy_for(t.Omega, t.ratio);

    std::vector<double> amp, gm, gqs;
    for (int i = 0; i < a.steps; ++i) {
      const double r = a.amp_max * i / (a.steps - 1);
      const DriveTone tone{wd, r * cfg.circuit.E_J0};
      const FloquetMode m = floquet_mode(cfg.circuit, tone, 1);
      const QuantizedMode q = quantize(m, cfg.circuit);
      amp.push_back(r);
      gm.push_back(rad_to_mhz(sideband_coupling(q, t, Sideband::kMinus).G));
      gqs.push_back(rad_to_mhz(quasi_static_coupling(cfg.circuit, tone, t, 1).G));
    }
    std::ostringstream stem;
    stem << "coupling_wd" << format_number(wd_ghz) << "GHz";
    man.outputs.push_back(write_table(g, stem.str(), {"dEJ_over_EJ0", "G_minus_MHz", "G_qs_MHz"}, {amp, gm, gqs}));

    const FloquetMode m0 = floquet_mode(cfg.circuit, DriveTone{wd, 0.0}, 1);
    const double G_omega = sideband_coupling(quantize(m0, cfg.circuit), t, Sideband::kCarrier).G;
    const double chi = cross_kerr(G_omega, t.Omega - m0.omega, t.alpha());
    summary.push_back({{"omega_d_GHz", wd_ghz},
                       {"Omega_GHz", rad_to_ghz(t.Omega)},
                       {"EC_GHz", energy_to_ghz(t.E_C)},
                       {"G_omega_MHz", rad_to_mhz(G_omega)},
                       {"chi_MHz", rad_to_mhz(chi)}});
  }
  const std::string path = path_in(g, "coupling.json");
  write_json(path, summary);
  man.outputs.push_back(path);
  return kOk;
}

int cmd_gate(const Globals& g, const RunConfig& cfg, const GateArgs& a, RunManifest& man) {
  if (cfg.transmons.size() != 2) throw ParameterError("transmons", "the gate command needs exactly two transmons");
  const GateSettings& s = cfg.gate;
  const double G = std::isnan(a.G_MHz) ? s.G : mhz_to_rad(a.G_MHz);
  const double delta = std::isnan(a.delta_MHz) ? s.delta : mhz_to_rad(a.delta_MHz);
  std::array<TransmonParams, 2> q{cfg.transmons[0], cfg.transmons[1]};
  for (const auto& t : q) print_warnings(validate(t));

  CalibrationOptions copt;
  copt.branch = s.branch;
  GateCalibration cal;
  try {
    cal = calibrate_gate(cfg.circuit, q, G, delta, copt);
  } catch (const SolverError& e) {
    throw CalibrationFailure(std::string("calibration failed: ") + e.what());
  }

  GateConfig gc;
  gc.G = cal.G;
  gc.delta = cal.delta;
  gc.chi = cal.chi;
  gc.include_kerr = s.include_kerr && !a.no_kerr;
  gc.kappa = std::isnan(a.kappa_MHz) ? s.kappa : mhz_to_rad(a.kappa_MHz);
  for (std::size_t i = 0; i < 2; ++i) {
    gc.T1[i] = std::isnan(a.T1_us) ? q[i].T1 : a.T1_us * 1e-6;
    gc.T2[i] = std::isnan(a.T2_us) ? q[i].T2 : a.T2_us * 1e-6;
  }
  if (a.lossless) {
    gc.kappa = 0.0;
    gc.T1 = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    gc.T2 = gc.T1;
  }
  gc.N = a.N > 0 ? a.N : s.N;
  gc.dt = a.dt_ns > 0.0 ? a.dt_ns * 1e-9 : s.dt;
  gc.t_final = s.t_final;
  gc.sample_every = s.sample_every;
  gc.initial = s.initial;
  gc.backend = a.serial ? Backend::kSerial : Backend::kOpenMP;

  const GateResult r = run_gate(gc);
  const Trajectory& tr = r.trajectory;
  std::vector<double> t_ns;
  for (double t : tr.t) t_ns.push_back(t * 1e9);
  man.outputs.push_back(write_table(
      g, "trajectory", {"t_ns", "rho_gggg", "rho_eeee", "im_rho_eegg", "concurrence", "fidelity", "n_photon"},
      {t_ns, tr.rho_gggg, tr.rho_eeee, tr.im_rho_eegg, tr.concurrence, tr.fidelity, tr.n_photon}));

  json tones = json::array();
  json amps = json::array();
  for (const auto& qa : cal.qubits) {
    tones.push_back(rad_to_ghz(qa.omega_t));
    tones.push_back(rad_to_ghz(qa.omega_p));
    amps.push_back(qa.dEJ_t / cfg.circuit.E_J0);
    amps.push_back(qa.dEJ_p / cfg.circuit.E_J0);
  }
  auto lifetime = [](double T) { return std::isinf(T) ? json(nullptr) : json(T * 1e6); };
  json metrics{
      {"fidelity", r.fidelity},
      {"fidelity_fixed_phase", r.fidelity_fixed},
      {"concurrence_wootters", r.concurrence},
      {"concurrence_shortcut", r.concurrence_shortcut},
      {"n_photon_final", r.n_photon},
      {"achieved_G_MHz", rad_to_mhz(cal.G)},
      {"tones_GHz", tones},
      {"dEJ_over_EJ0", amps},
      {"omega_shifted_GHz", rad_to_ghz(cal.omega_shifted)},
      {"omega_static_GHz", rad_to_ghz(cal.omega_static)},
      {"calibration_iterations", cal.iterations},
      {"gate",
       {{"G_MHz", rad_to_mhz(gc.G)},
        {"delta_MHz", rad_to_mhz(gc.delta)},
        {"chi_MHz", {rad_to_mhz(gc.chi[0]), rad_to_mhz(gc.chi[1])}},
        {"include_kerr", gc.include_kerr},
        {"kappa_MHz", rad_to_mhz(gc.kappa)},
        {"T1_us", {lifetime(gc.T1[0]), lifetime(gc.T1[1])}},
        {"T2_us", {lifetime(gc.T2[0]), lifetime(gc.T2[1])}},
        {"N", gc.N},
        {"initial", gc.initial}}},
      {"integrator",
       {{"method", "RK4"},
        {"dt_ns", gc.dt * 1e9},
        {"t_final_ns", gc.gate_time() * 1e9},
        {"sample_every", gc.sample_every}}},
      {"invariants",
       {{"max_trace_error", tr.max_trace_error},
        {"max_hermiticity_error", tr.max_hermiticity_error},
        {"min_eigenvalue", tr.min_eigenvalue},
        {"hold", tr.invariants_hold()}}}};
  const std::string path = path_in(g, "metrics.json");
  write_json(path, metrics);
  man.outputs.push_back(path);
  return kOk;
}

int run(std::vector<std::string> args, const json* embedded_config);

int rerun(const std::string& manifest_path, const std::string& out_override) {
  std::ifstream in(manifest_path);
  if (!in) throw ParameterError("manifest", "cannot open " + manifest_path);
  json man;
  try {
    man = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError("manifest", std::string("malformed JSON: ") + e.what());
  }
  if (!man.contains("arguments") || !man["arguments"].contains("argv") || !man.contains("config"))
    throw ParameterError("manifest", "manifest lacks arguments or config");
  std::vector<std::string> args = man["arguments"]["argv"].get<std::vector<std::string>>();
  if (!out_override.empty()) {
    args.insert(args.begin() + 1, out_override);
    args.insert(args.begin() + 1, "--out");
  }
  const json cfg = man["config"];
  return run(args, &cfg);
}

int run(std::vector<std::string> args, const json* embedded_config) {
  CLI::App app{"Floquet modes, couplings and gate dynamics of a flux-modulated SQUID resonator", "squidmodes"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--format", g.format, "table format")->check(CLI::IsMember({"csv", "json"}));

  ModesArgs ma;
  auto* modes = app.add_subcommand("modes", "solve one Floquet mode and write its profile");
  modes->add_option("--branch", ma.branch, "odd mode branch 1, 3, 5, ...");
  modes->add_option("--M", ma.M, "sideband ladder half-width")->check(CLI::PositiveNumber);
  modes->add_option("--points", ma.points, "profile grid points")->check(CLI::Range(2, 1000000));
  modes->add_flag("--eliminated", ma.eliminated, "use the directly eliminated sideband denominators");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "carrier frequency against modulation amplitude");
  sweep->add_option("--omega-d", sa.omega_d_GHz, "modulation frequency, GHz");
  sweep->add_option("--amp-min", sa.amp_min, "first dEJ/EJ0");
  sweep->add_option("--amp-max", sa.amp_max, "last dEJ/EJ0");
  sweep->add_option("--steps", sa.steps, "number of amplitudes");
  sweep->add_option("--branches", sa.branches, "odd branches")->delimiter(',');

  CouplingArgs ca;
  auto* coupling = app.add_subcommand("coupling", "sideband and quasi-static coupling curves");
  coupling->add_option("--omega-d", ca.omega_d_GHz, "modulation frequencies, GHz")->delimiter(',');
  coupling->add_option("--amp-max", ca.amp_max, "largest dEJ/EJ0");
  coupling->add_option("--steps", ca.steps, "number of amplitudes");
  coupling->add_option("--transmon", ca.transmon, "index into the transmon list");

  GateArgs ga;
  auto* gate = app.add_subcommand("gate", "calibrate the bichromatic gate and integrate it");
  gate->add_flag("--lossless", ga.lossless, "no resonator or qubit loss");
  gate->add_flag("--no-kerr", ga.no_kerr, "drop the cross-Kerr term");
  gate->add_option("--T1", ga.T1_us, "qubit T1, us");
  gate->add_option("--T2", ga.T2_us, "qubit T2, us");
  gate->add_option("--kappa", ga.kappa_MHz, "resonator decay rate / 2 pi, MHz");
  gate->add_option("--G", ga.G_MHz, "target coupling / 2 pi, MHz");
  gate->add_option("--delta", ga.delta_MHz, "detuning / 2 pi, MHz");
  gate->add_option("--N", ga.N, "Fock cutoff");
  gate->add_option("--dt", ga.dt_ns, "time step, ns");
  gate->add_flag("--serial", ga.serial, "use the serial reference kernel");

  std::string manifest_path;
  std::string rerun_out;
  auto* rr = app.add_subcommand("rerun", "repeat the run recorded in a manifest");
  rr->add_option("--manifest", manifest_path, "manifest written by an earlier run")->required()->check(CLI::ExistingFile);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  if (rr->parsed()) return rerun(manifest_path, g.out_dir == "." ? std::string() : g.out_dir);

  const auto start = std::chrono::steady_clock::now();
  RunConfig cfg;
  if (embedded_config)
    cfg = parse_config(*embedded_config);
  else if (!g.config_path.empty())
    cfg = load_config(g.config_path);
  else
    cfg = parse_config(default_config_json());

  RunManifest man;
  man.config = cfg.source;
  std::vector<std::string> argv_record{args.front()};
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" || args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0 || args[i].rfind("--out=", 0) == 0) continue;
    argv_record.push_back(args[i]);
  }
  man.arguments = json{{"argv", argv_record}, {"out", g.out_dir}, {"format", g.format}};

  int code = kOk;
  if (modes->parsed()) {
    man.command = "modes";
    code = cmd_modes(g, cfg, ma, man);
  } else if (sweep->parsed()) {
    man.command = "sweep";
    code = cmd_sweep(g, cfg, sa, man);
  } else if (coupling->parsed()) {
    man.command = "coupling";
    code = cmd_coupling(g, cfg, ca, man);
  } else if (gate->parsed()) {
    man.command = "gate";
    code = cmd_gate(g, cfg, ga, man);
  }
  man.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string mpath = path_in(g, man.command + "_manifest.json");
  write_json(mpath, man.to_json());
  for (const auto& o : man.outputs) std::cout << o << "\n";
  std::cout << mpath << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_limit_from_env();
  std::vector<std::string> args(argv, argv + argc);
  try {
    return run(args, nullptr);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.field() << ": " << e.what() << "\n";
    return kBadInput;
  } catch (const CalibrationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCalibrationFailure;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
}
