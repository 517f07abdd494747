#pragma once

#include <array>

#include "squidmodes/circuit.hpp"
#include "squidmodes/coupling.hpp"
#include "squidmodes/units.hpp"

namespace squidmodes::testing {

// 1.2 cm half-length resonator, modulated at 2 GHz with dEJ/EJ0 = 0.4.
inline CircuitParams long_resonator() { return {0.012, 1.2e8, 50.0, energy_from_ghz(715.0), 0.0}; }
inline DriveTone strong_tone(const CircuitParams& p) { return {ghz_to_rad(2.0), 0.4 * p.E_J0}; }

// 0.25 cm half-length resonator used for the qubit couplings.
inline CircuitParams short_resonator() { return {0.0025, 1.2e8, 50.0, energy_from_ghz(715.0), 0.0}; }

inline TransmonParams transmon(double omega_ghz, double x_over_d, const CircuitParams& p) {
  TransmonParams t;
  t.Omega = ghz_to_rad(omega_ghz);
  t.x_t = x_over_d * p.d;
  t.beta = 2.0 / 3.0;
  t.ratio = 80.0;
  t.E_C = TransmonParams::charging_energy_for(t.Omega, t.ratio);
  t.T1 = 10e-6;
  t.T2 = 5e-6;
  return t;
}

inline std::array<TransmonParams, 2> gate_qubits(const CircuitParams& p) {
  return {transmon(6.0, 0.1, p), transmon(6.5, -0.1, p)};
}

}  // namespace squidmodes::testing
