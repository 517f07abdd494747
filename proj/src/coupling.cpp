#include "squidmodes/coupling.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "squidmodes/errors.hpp"

namespace squidmodes {

double TransmonParams::charging_energy_for(double Omega, double ratio) {
  return kHbar * Omega / (std::sqrt(8.0 * ratio) - 1.0);
}

std::vector<Issue> validate(const TransmonParams& t) {
  std::vector<Issue> issues;
  auto add = [&](Issue::Severity s, std::string field, std::string msg) {
    issues.push_back({s, std::move(field), std::move(msg)});
  };
  if (!(t.ratio > 0.0)) add(Issue::Severity::kError, "ratio", "E_J/E_C ratio must be positive");
  else if (t.ratio < 20.0) add(Issue::Severity::kWarning, "ratio", "E_J/E_C below 20: outside the transmon regime");
  if (!(t.beta > 0.0 && t.beta < 1.0) && t.beta != 0.0) add(Issue::Severity::kError, "beta", "beta must lie in (0, 1)");
  if (!(t.E_C >= 0.0)) add(Issue::Severity::kError, "E_C", "E_C must be non-negative");
  if (!(t.Omega > 0.0)) add(Issue::Severity::kError, "Omega", "Omega must be positive");
  if (!(t.T1 > 0.0)) add(Issue::Severity::kError, "T1", "T1 must be positive");
  if (!(t.T2 > 0.0)) add(Issue::Severity::kError, "T2", "T2 must be positive");
  if (t.T1 > 0.0 && t.T2 > 2.0 * t.T1 * (1.0 + 1e-12)) add(Issue::Severity::kError, "T2", "T2 must not exceed 2 T1");
  return issues;
}

double charge_matrix_element(const TransmonParams& t) {
  return std::sqrt(2.0) * kElementaryCharge * t.beta * std::pow(t.ratio / 8.0, 0.25);
}

CouplingResult sideband_coupling(const QuantizedMode& qmode, const TransmonParams& t, Sideband which) {
  const auto& m = qmode.mode;
  const double d = m.half_length;
  if (!(t.x_t >= -d && t.x_t <= d))
    throw SolverError(SolverErrorKind::kDomain, "transmon position " + std::to_string(t.x_t) + " outside resonator");
  double omega_j = m.omega;
  double amplitude = 1.0;
  double k_j = m.k();
  switch (which) {
    case Sideband::kCarrier: break;
    case Sideband::kPlus:
      omega_j = m.omega_plus();
      amplitude = m.A_plus;
      k_j = m.k_plus();
      break;
    case Sideband::kMinus:
      omega_j = m.omega_minus();
      amplitude = m.A_minus;
      k_j = m.k_minus();
      break;
  }
  CouplingResult out;
  out.sideband = which;
  out.mode = m;
  out.G = charge_matrix_element(t) * omega_j * amplitude * profile_value(k_j, d, t.x_t) /
          (4.0 * std::sqrt(kHbar * qmode.C_omega * m.omega));
  return out;
}

CouplingResult quasi_static_coupling(const CircuitParams& params, const DriveTone& tone, const TransmonParams& t,
                                     int branch) {
  require_valid(params, std::span<const DriveTone>(&tone, 1));
  const double gamma = gamma_of(params);
  const double r = tone.delta_EJ / params.E_J0;
  const double kd0 = static_root(gamma, branch);
  const double omega0 = omega_of_kd(params, kd0);
  double shift = 0.0;
  if (r != 0.0) {
    const double up = omega_of_kd(params, static_root(gamma * (1.0 + r), branch));
    const double down = omega_of_kd(params, static_root(gamma * (1.0 - r), branch));
    shift = 0.5 * (up - down);
  }
  FloquetMode mode;
  mode.branch = branch;
  mode.kd = kd0;
  mode.omega = omega0;
  mode.tone = tone;
  mode.half_length = params.d;
  const auto q = quantize(mode, params);
  auto carrier = sideband_coupling(q, t, Sideband::kCarrier);
  carrier.G *= shift / (2.0 * omega0);
  carrier.sideband = Sideband::kMinus;
  return carrier;
}

double cross_kerr(double G_omega, double Delta, double alpha) {
  const double scale = std::max(std::abs(Delta), std::abs(alpha));
  if (Delta == 0.0 || std::abs(Delta) < 0.01 * scale || std::abs(Delta + alpha) < 0.01 * scale) {
    std::ostringstream msg;
    msg << "dispersive denominator near zero: Delta=" << Delta << " alpha=" << alpha;
    throw SolverError(SolverErrorKind::kResonance, msg.str());
  }
  return G_omega * G_omega * alpha / (Delta * (Delta + alpha));
}

DriveSet GateCalibration::tones() const {
  DriveSet out;
  for (const auto& q : qubits) {
    out.push_back({q.omega_t, q.dEJ_t});
    out.push_back({q.omega_p, q.dEJ_p});
  }
  return out;
}

namespace {

// Secant on a scalar map; exact in one step when g is linear.
double secant_solve(const std::function<double(double)>& g, double target, double x0, double x1) {
  double f0 = g(x0) - target;
  double f1 = g(x1) - target;
  for (int i = 0; i < 50; ++i) {
    if (f1 == f0) break;
    const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = g(x1) - target;
    if (std::abs(f1) <= 1e-10 * std::abs(target) || std::abs(x1 - x0) < 1e-14) break;
  }
  return x1;
}

}  // namespace

GateCalibration calibrate_gate(const CircuitParams& params, const std::array<TransmonParams, 2>& qubits,
                               double target_G, double delta, const CalibrationOptions& options) {
  require_valid(params);
  if (!(target_G >= 0.0)) throw ParameterError("target_G", "target coupling must be non-negative");
  for (const auto& q : qubits)
    for (const auto& issue : validate(q))
      if (issue.severity == Issue::Severity::kError) throw ParameterError(issue.field, issue.message);

  const int branch = options.branch;
  const auto convention = options.solve.convention;
  const double gamma = gamma_of(params);

  GateCalibration cal;
  cal.delta = delta;
  cal.omega_static = omega_of_kd(params, static_root(gamma, branch));
  double omega_s = cal.omega_static;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const double kd_s = kd_of_omega(params, omega_s);

    auto coupling_for = [&](const TransmonParams& t, double omega_tone, double ratio) {
      const DriveTone tone{omega_tone, ratio * params.E_J0};
      const auto amps = sideband_amplitudes(gamma, gamma_d_of(params, tone), kd_s, drive_kd(params, tone), convention);
      if (std::abs(amps.denom_minus) < options.solve.pole_threshold)
        throw SolverError(SolverErrorKind::kPoleProximity, "lower sideband of a gate tone is resonant with another mode");
      const auto q = quantize(mode_at_carrier(params, tone, branch, kd_s, convention), params);
      return sideband_coupling(q, t, Sideband::kMinus).G;
    };

    for (std::size_t n = 0; n < 2; ++n) {
      const auto& t = qubits[n];
      auto& a = cal.qubits[n];
      a.omega_t = omega_s - delta - t.Omega;
      a.omega_p = omega_s - delta + t.Omega;
      if (!(a.omega_t > 0.0))
        throw ParameterError("Omega", "qubit frequency must lie below the shifted carrier minus delta");
      if (target_G == 0.0) {
        a.dEJ_t = a.dEJ_p = 0.0;
        a.G_t = a.G_p = 0.0;
        continue;
      }
      auto g_t = [&](double r) { return coupling_for(t, a.omega_t, r); };
      auto g_p = [&](double r) { return coupling_for(t, a.omega_p, r); };
      const double sign = g_t(0.1) >= 0.0 ? 1.0 : -1.0;
      const double r_t = secant_solve(g_t, sign * target_G, 0.0, 0.1);
      const double r_p = secant_solve(g_p, sign * target_G, 0.0, -0.1);
      for (double r : {r_t, r_p}) {
        if (!(std::abs(r) <= options.max_ratio)) {
          std::ostringstream msg;
          msg << "required dEJ/EJ0 = " << r << " exceeds " << options.max_ratio;
          throw SolverError(SolverErrorKind::kAmplitudeOutOfRange, msg.str());
        }
      }
      a.dEJ_t = r_t * params.E_J0;
      a.dEJ_p = r_p * params.E_J0;
      a.G_t = g_t(r_t);
      a.G_p = g_p(r_p);
    }

    const auto tones = cal.tones();
    const double next = multi_tone_carrier(params, tones, branch, options.solve);
    cal.iterations = iter;
    if (std::abs(next - omega_s) < options.carrier_tolerance) {
      cal.omega_shifted = omega_s;
      double sum = 0.0;
      for (const auto& a : cal.qubits) sum += std::abs(a.G_t) + std::abs(a.G_p);
      cal.G = sum / 4.0;

      FloquetMode carrier_mode = mode_at_carrier(params, DriveTone{1.0, 0.0}, branch, kd_s, convention);
      const auto q = quantize(carrier_mode, params);
      for (std::size_t n = 0; n < 2; ++n) {
        const auto& t = qubits[n];
        if (t.E_C == 0.0) continue;
        const double G_omega = sideband_coupling(q, t, Sideband::kCarrier).G;
        cal.chi[n] = cross_kerr(G_omega, t.Omega - omega_s, t.alpha());
      }
      return cal;
    }
    omega_s = next;
  }
  throw SolverError(SolverErrorKind::kNonConvergence,
                    "shifted carrier did not settle within " + std::to_string(options.max_iterations) + " iterations");
}

}  // namespace squidmodes
