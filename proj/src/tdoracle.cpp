#include "squidmodes/tdoracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "squidmodes/errors.hpp"
#include "squidmodes/spectrum.hpp"
#include "squidmodes/units.hpp"

namespace squidmodes {

double ChainSpec::time_step() const { return dt > 0.0 ? dt : 0.4 * dx() / params.v; }

ChainSystem build_chain(const ChainSpec& spec) {
  const CircuitParams& p = spec.params;
  if (!(p.d > 0.0)) throw ParameterError("d", "d must be positive");
  if (!(p.v > 0.0)) throw ParameterError("v", "v must be positive");
  if (!(p.Z > 0.0)) throw ParameterError("Z", "Z must be positive");
  if (p.E_J0 < 0.0) throw ParameterError("E_J0", "E_J0 must be non-negative");
  if (p.C < 0.0) throw ParameterError("C", "C must be non-negative");
  if (spec.cells_per_half < 100) throw ParameterError("cells_per_half", "need at least 100 cells per half");
  for (const auto& t : spec.tones)
    if (std::abs(t.delta_EJ) > p.E_J0) throw ParameterError("delta_EJ", "modulation exceeds static Josephson energy");

  const double dx = spec.dx();
  const double dt = spec.time_step();
  if (!(dt < dx / p.v))
    throw SolverError(SolverErrorKind::kCflViolation,
                      "dt=" + std::to_string(dt) + " s is not below dx/v=" + std::to_string(dx / p.v) + " s");

  const double L_T = p.Z / p.v;
  const double C_T = 1.0 / (p.Z * p.v);
  ChainSystem sys;
  sys.cells_per_half = spec.cells_per_half;
  sys.dt = dt;
  sys.line_stiffness = 1.0 / (L_T * dx);
  sys.mass.assign(static_cast<std::size_t>(sys.nodes()), C_T * dx);
  for (int i : {0, sys.junction_left(), sys.junction_right(), sys.nodes() - 1})
    sys.mass[static_cast<std::size_t>(i)] = 0.5 * C_T * dx;
  sys.junction_capacitance = p.C;
  sys.junction_scale = (kTwoPi / p.phi0) * (kTwoPi / p.phi0);
  sys.E_J0 = p.E_J0;
  for (const auto& t : spec.tones) {
    sys.tone_omega.push_back(t.omega_d);
    sys.tone_dEJ.push_back(t.delta_EJ);
  }
  return sys;
}

std::vector<double> chain_positions(const ChainSpec& spec) {
  const int n = spec.cells_per_half;
  const double dx = spec.dx();
  std::vector<double> x(static_cast<std::size_t>(2 * (n + 1)));
  for (int i = 0; i <= n; ++i) {
    x[static_cast<std::size_t>(i)] = -spec.params.d + i * dx;
    x[static_cast<std::size_t>(n + 1 + i)] = i * dx;
  }
  x[static_cast<std::size_t>(n)] = 0.0;
  return x;
}

ChainState chain_state_from_mode(const ChainSpec& spec, const ChainSystem& sys, double k, double amplitude) {
  const std::vector<double> x = chain_positions(spec);
  const int n = sys.nodes();
  ChainState s;
  s.phi.resize(static_cast<std::size_t>(n));
  s.vel.assign(static_cast<std::size_t>(n), 0.0);
  s.acc.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    // left half, including the 0- junction node, mirrors the right half
    const double u = i <= sys.junction_left() ? -profile_value(k, spec.params.d, -xi) : profile_value(k, spec.params.d, xi);
    s.phi[static_cast<std::size_t>(i)] = amplitude * u;
  }
  chain_accelerations_serial(sys, s.phi, 0.0, s.acc);
  return s;
}

double chain_energy(const ChainSystem& sys, const ChainState& s, bool shadow) {
  const int n = sys.nodes();
  const int l = sys.junction_left();
  const int r = sys.junction_right();
  auto quad = [&](const std::vector<double>& v) {
    double e = 0.0;
    for (int i = 0; i < n; ++i) e += sys.mass[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    const double dv = v[static_cast<std::size_t>(r)] - v[static_cast<std::size_t>(l)];
    return 0.5 * (e + sys.junction_capacitance * dv * dv);
  };
  double u = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    if (i == l) continue;
    const double dphi = s.phi[static_cast<std::size_t>(i + 1)] - s.phi[static_cast<std::size_t>(i)];
    u += 0.5 * sys.line_stiffness * dphi * dphi;
  }
  const double dj = s.phi[static_cast<std::size_t>(r)] - s.phi[static_cast<std::size_t>(l)];
  u += 0.5 * sys.stiffness(s.t) * dj * dj;
  double e = quad(s.vel) + u;
  if (shadow) e -= 0.25 * sys.dt * sys.dt * quad(s.acc);
  return e;
}

std::vector<double> chain_normal_frequencies(const ChainSystem& sys) {
  const int n = sys.nodes();
  const int l = sys.junction_left();
  const int r = sys.junction_right();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const double s = i == l ? sys.junction_scale * sys.E_J0 : sys.line_stiffness;
    K(i, i) += s;
    K(i + 1, i + 1) += s;
    K(i, i + 1) -= s;
    K(i + 1, i) -= s;
  }
  for (int i = 0; i < n; ++i) M(i, i) = sys.mass[static_cast<std::size_t>(i)];
  M(l, l) += sys.junction_capacitance;
  M(r, r) += sys.junction_capacitance;
  M(l, r) -= sys.junction_capacitance;
  M(r, l) -= sys.junction_capacitance;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M, Eigen::EigenvaluesOnly);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  std::sort(w.begin(), w.end());
  return w;
}

ChainRun simulate_chain(const ChainSpec& spec, const ChainState& init, std::size_t n_samples, int sample_every,
                        double probe_x) {
  const ChainSystem sys = build_chain(spec);
  if (init.phi.size() != static_cast<std::size_t>(sys.nodes()))
    throw SolverError(SolverErrorKind::kDimensionMismatch, "initial state does not match the chain");
  if (sample_every < 1) throw ParameterError("sample_every", "sample interval must be at least one step");
  if (std::abs(probe_x) > spec.params.d) throw SolverError(SolverErrorKind::kDomain, "probe outside [-d, d]");

  ChainRun run;
  const int n = spec.cells_per_half;
  const int offset = static_cast<int>(std::lround(std::abs(probe_x) / spec.dx()));
  run.probe = probe_x >= 0.0 ? n + 1 + offset : n - offset;
  run.sample_interval = sys.dt * sample_every;
  run.final_state = init;
  run.samples.reserve(n_samples);

  double initial_norm = 0.0;
  for (double v : init.phi) initial_norm = std::max(initial_norm, std::abs(v));

  // advance in blocks so that blow-up is caught early
  const std::size_t block = 1024;
  while (run.samples.size() < n_samples) {
    const std::size_t count = std::min(block, n_samples - run.samples.size());
    leapfrog_advance(spec.backend, sys, run.final_state, static_cast<long>(count) * sample_every, sample_every,
                     run.probe, &run.samples);
    double norm = 0.0;
    for (double v : run.final_state.phi) norm = std::max(norm, std::abs(v));
    if (!std::isfinite(norm) || (initial_norm > 0.0 && norm > 1e3 * initial_norm))
      throw SolverError(SolverErrorKind::kInstability,
                        "flux norm grew to " + std::to_string(norm / initial_norm) + " times its initial value");
  }
  return run;
}

VerifyReport verify_mode(const CircuitParams& params, const DriveTone& tone, int branch, const OracleOptions& opt) {
  VerifyReport rep;
  rep.mode = floquet_mode(params, tone, branch, opt.solve);
  const FloquetMode& m = rep.mode;

  ChainSpec spec;
  spec.params = params;
  if (tone.delta_EJ != 0.0) spec.tones.push_back(tone);
  spec.cells_per_half = opt.cells_per_half;
  spec.dt = opt.dt_factor * spec.dx() / params.v;
  spec.backend = opt.backend;

  const ChainSystem sys = build_chain(spec);
  const ChainState init = chain_state_from_mode(spec, sys, m.k(), 1e-3 * params.phi0);
  const double xp = opt.probe_fraction * params.d;
  const ChainRun run = simulate_chain(spec, init, opt.n_samples, opt.sample_every, xp);

  const double bin = kTwoPi / (run.sample_interval * static_cast<double>(run.samples.size()));
  const Peak carrier = peak_near(run.samples, run.sample_interval, m.omega, std::max(20.0 * bin, 0.02 * m.omega));
  rep.oracle_omega = carrier.omega;
  rep.freq_error = carrier.omega - m.omega;

  const double k0 = carrier.omega / params.v;
  const double u0 = profile_value(k0, params.d, xp);
  auto ratio = [&](double omega_side) {
    if (omega_side <= 0.0) return 0.0;
    const Peak side = peak_near(run.samples, run.sample_interval, omega_side, std::max(10.0 * bin, 0.01 * omega_side));
    if (std::abs(side.amplitude) < opt.noise_floor * std::abs(carrier.amplitude)) return 0.0;
    const double us = profile_value(side.omega / params.v, params.d, xp);
    return (side.amplitude / carrier.amplitude).real() * u0 / us;
  };
  if (tone.delta_EJ != 0.0) {
    rep.oracle_A_plus = ratio(carrier.omega + tone.omega_d);
    rep.oracle_A_minus = ratio(carrier.omega - tone.omega_d);
  }

  auto rel = [](double oracle, double model) {
    if (oracle == 0.0 && model == 0.0) return 0.0;
    if (model == 0.0) return std::abs(oracle);
    return std::abs(std::abs(oracle) - std::abs(model)) / std::abs(model);
  };
  rep.A_plus_error = rel(rep.oracle_A_plus, m.A_plus);
  rep.A_minus_error = rel(rep.oracle_A_minus, m.A_minus);
  rep.sign_plus_matches = (rep.oracle_A_plus >= 0.0) == (m.A_plus >= 0.0);
  rep.sign_minus_matches = (rep.oracle_A_minus >= 0.0) == (m.A_minus >= 0.0);
  return rep;
}

}  // namespace squidmodes
