#include "squidmodes/quantizer.hpp"

#include <cmath>

#include "squidmodes/errors.hpp"

namespace squidmodes {

double effective_capacitance(const FloquetMode& mode, const CircuitParams& params) {
  const double C_T = 1.0 / (params.Z * params.v);
  const double kd = mode.kd;
  const double c = std::cos(kd);
  return C_T * params.d * (1.0 + std::sin(2.0 * kd) / (2.0 * kd)) + params.C * c * c;
}

double kerr_coefficient(const QuantizedMode& qmode, const CircuitParams& params) {
  const double phase = kTwoPi * qmode.phi_zpf / kFluxQuantum;
  const double c2 = std::cos(qmode.mode.kd) * std::cos(qmode.mode.kd);
  return -(params.E_J0 / (4.0 * kHbar)) * std::pow(phase, 4) * c2 * c2;
}

QuantizedMode quantize(const FloquetMode& mode, const CircuitParams& params) {
  QuantizedMode q;
  q.mode = mode;
  q.C_omega = effective_capacitance(mode, params);
  const double w = mode.omega;
  q.L_omega = 1.0 / (q.C_omega * w * w);
  q.phi_zpf = std::sqrt(kHbar / (2.0 * q.C_omega * w));
  q.q_zpf = std::sqrt(kHbar * q.C_omega * w / 2.0);
  q.kerr = kerr_coefficient(q, params);
  return q;
}

VoltagePrefactors voltage_prefactors(const QuantizedMode& qmode, double x) {
  const auto& m = qmode.mode;
  const double d = m.half_length;
  if (!(x >= -d && x <= d)) throw SolverError(SolverErrorKind::kDomain, "x = " + std::to_string(x) + " outside [-d, d]");
  const double scale = 0.5 * qmode.phi_zpf;
  VoltagePrefactors v;
  v.omega = scale * m.omega * profile_value(m.k(), d, x);
  v.plus = scale * m.omega_plus() * m.A_plus * profile_value(m.k_plus(), d, x);
  v.minus = scale * m.omega_minus() * m.A_minus * profile_value(m.k_minus(), d, x);
  return v;
}

}  // namespace squidmodes
