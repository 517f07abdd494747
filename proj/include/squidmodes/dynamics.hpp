#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "squidmodes/circuit.hpp"
#include "squidmodes/kernels.hpp"
#include "squidmodes/operators.hpp"

namespace squidmodes {

// All Hamiltonians here are H/hbar in rad/s, in the interaction picture.

struct GateConfig {
  int n_qubits = 2;
  double G = 0.0;
  double delta = 0.0;
  std::array<double, 2> chi{};
  double kappa = 0.0;
  std::array<double, 2> T1{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  std::array<double, 2> T2{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  int N = 10;
  bool include_kerr = true;
  bool beam_splitter_only = false;
  double t_final = 0.0;  ///< 0 means one gate period 2 pi / delta
  double dt = 0.05e-9;
  int sample_every = 20;
  std::string initial = "gg0";
  Backend backend = Backend::kOpenMP;

  double gate_time() const;
};

std::vector<Issue> validate(const GateConfig& cfg);

/// H(t) = exp(-i delta t) B + exp(i delta t) B^dagger + K.
struct RotatingHamiltonian {
  Matrix B;
  Matrix K;
  double delta = 0.0;

  Matrix at(double t) const;
};

/// G sum_n (a e^{-i delta t} + a^dagger e^{i delta t})(sigma+_n + sigma-_n), plus
/// sum_n chi_n a^dagger a |e><e|_n. With beam_splitter_only the counter-rotating
/// a sigma-_n and a^dagger sigma+_n terms are dropped, leaving the exchange form.
RotatingHamiltonian build_ms_hamiltonian(const QubitOscillatorSpace& space, double G, double delta,
                                         const std::vector<double>& chi, bool beam_splitter_only = false);
RotatingHamiltonian build_ms_hamiltonian(const GateConfig& cfg);

/// sqrt(kappa) a, sqrt(1/T1) sigma-_n, sqrt(gamma_phi/2) sigma_z,n. Channels with
/// rate <= 1e-30 s^-1 are omitted.
std::vector<SparseOperator> collapse_operators(const QubitOscillatorSpace& space, const GateConfig& cfg);

/// Product state from a label such as "gg0" or "e3": qubit letters then a photon number.
Matrix initial_state(const QubitOscillatorSpace& space, const std::string& label);

struct Trajectory {
  int n_qubits = 2;
  int N = 0;
  std::vector<double> t;
  std::vector<Matrix> rho;
  std::vector<double> n_photon;
  std::vector<double> excitations;  ///< <a^dagger a + sum_n sigma+_n sigma-_n>
  // two-qubit series, filled only when n_qubits == 2
  std::vector<double> rho_gggg;
  std::vector<double> rho_eeee;
  std::vector<double> im_rho_eegg;
  std::vector<double> concurrence;
  std::vector<double> concurrence_shortcut;
  std::vector<double> fidelity;
  std::vector<double> fidelity_fixed;

  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  double max_photon = 0.0;  ///< over every step, not just snapshots

  bool invariants_hold() const;
  const Matrix& final_state() const { return rho.back(); }
};

struct EvolveOptions {
  double t_final = 0.0;
  double dt = 0.05e-9;
  int sample_every = 20;
  Backend backend = Backend::kOpenMP;
  /// Throws FockOverflow if <a^dagger a> exceeds this at any step.
  double photon_limit = std::numeric_limits<double>::infinity();
};

/// Fixed-step RK4 on the master equation. The step is shrunk slightly when
/// needed so that an integer number of steps lands exactly on t_final.
Trajectory lindblad_evolve(const QubitOscillatorSpace& space, const RotatingHamiltonian& H,
                           const std::vector<SparseOperator>& collapse, const Matrix& rho0, const EvolveOptions& opt);

struct GateResult {
  Trajectory trajectory;
  double fidelity = 0.0;
  double fidelity_fixed = 0.0;
  double concurrence = 0.0;
  double concurrence_shortcut = 0.0;
  double n_photon = 0.0;
  Matrix rho_2q;
};

GateResult run_gate(const GateConfig& cfg);

}  // namespace squidmodes
