#pragma once

#include <array>
#include <vector>

#include "squidmodes/circuit.hpp"
#include "squidmodes/modesolver.hpp"
#include "squidmodes/quantizer.hpp"

namespace squidmodes {

/// Two-level transmon capacitively coupled to the resonator at x_t.
struct TransmonParams {
  double ratio = 80.0;  ///< E_J,t / E_C
  double E_C = 0.0;     ///< J
  double beta = 0.0;    ///< C_c / C_Sigma
  double Omega = 0.0;   ///< qubit transition, rad/s
  double x_t = 0.0;     ///< m
  double T1 = 0.0;      ///< s
  double T2 = 0.0;      ///< s
  double n_g = 0.0;     ///< offset charge; irrelevant for the two-level reduction

  /// Anharmonicity alpha = -E_C, as an angular frequency.
  double alpha() const { return -E_C / kHbar; }

  /// E_C from the transition frequency via Omega = sqrt(8 E_J E_C) - E_C.
  static double charging_energy_for(double Omega, double ratio);
};

enum class Sideband { kMinus, kCarrier, kPlus };

struct CouplingResult {
  double G = 0.0;  ///< rad/s, signed
  Sideband sideband = Sideband::kMinus;
  FloquetMode mode;
};

/// Issues for a transmon record (warnings for a weak E_J/E_C ratio).
std::vector<Issue> validate(const TransmonParams& t);

/// |<1| 2 e beta n |0>| = sqrt(2) e beta (E_J,t / 8 E_C)^(1/4), in coulomb.
double charge_matrix_element(const TransmonParams& t);

/// G_j = g omega_j A_j u_j(x_t) / (4 sqrt(hbar C_omega omega)), with A = 1 on the carrier.
CouplingResult sideband_coupling(const QuantizedMode& qmode, const TransmonParams& t, Sideband which);

/// Coupling predicted by the quasi-static ansatz (frequency-independent).
CouplingResult quasi_static_coupling(const CircuitParams& params, const DriveTone& tone, const TransmonParams& t,
                                     int branch = 1);

/// Dispersive cross-Kerr shift, all arguments and result in rad/s.
double cross_kerr(double G_omega, double Delta, double alpha);

struct ToneAssignment {
  double omega_t = 0.0;  ///< red tone, rad/s
  double omega_p = 0.0;  ///< blue tone, rad/s
  double dEJ_t = 0.0;    ///< J
  double dEJ_p = 0.0;    ///< J
  double G_t = 0.0;      ///< achieved coupling on the red tone, rad/s
  double G_p = 0.0;
};

struct GateCalibration {
  std::array<ToneAssignment, 2> qubits;
  double G = 0.0;               ///< mean achieved |G|, rad/s
  double delta = 0.0;           ///< rad/s
  double omega_shifted = 0.0;   ///< self-consistent carrier, rad/s
  double omega_static = 0.0;
  int iterations = 0;
  std::array<double, 2> chi{};  ///< cross-Kerr per qubit, rad/s

  DriveSet tones() const;
};

struct CalibrationOptions {
  int branch = 1;
  int max_iterations = 50;
  double carrier_tolerance = kTwoPi * 1e4;
  double max_ratio = 0.5;
  SolveOptions solve;
};

/// Tone frequencies and amplitudes for the bichromatic gate at coupling target_G.
GateCalibration calibrate_gate(const CircuitParams& params, const std::array<TransmonParams, 2>& qubits,
                               double target_G, double delta, const CalibrationOptions& options = {});

}  // namespace squidmodes
