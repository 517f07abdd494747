#pragma once

#include "squidmodes/circuit.hpp"
#include "squidmodes/modesolver.hpp"

namespace squidmodes {

/// Effective single-oscillator description of a FloquetMode's carrier.
struct QuantizedMode {
  double C_omega = 0.0;  ///< F
  double L_omega = 0.0;  ///< H, 1 / (C_omega omega^2)
  double phi_zpf = 0.0;  ///< Wb, sqrt(hbar / 2 C_omega omega)
  double q_zpf = 0.0;    ///< C, sqrt(hbar C_omega omega / 2)
  double kerr = 0.0;     ///< rad/s, prefactor of a+ a+ a a
  FloquetMode mode;
};

/// C_T d (1 + sin 2kd / 2kd) + C cos^2 kd; the sideband parts are dropped.
double effective_capacitance(const FloquetMode& mode, const CircuitParams& params);

QuantizedMode quantize(const FloquetMode& mode, const CircuitParams& params);

/// -(E_J0 / 4 hbar) (2 pi phi_zpf / Phi_0)^4 cos^4 kd.
double kerr_coefficient(const QuantizedMode& qmode, const CircuitParams& params);

/// Per-photon voltage amplitudes (V) of the three frequency components at x.
struct VoltagePrefactors {
  double omega = 0.0;
  double plus = 0.0;
  double minus = 0.0;
};

VoltagePrefactors voltage_prefactors(const QuantizedMode& qmode, double x);

}  // namespace squidmodes
