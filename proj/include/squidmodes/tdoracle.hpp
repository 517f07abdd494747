#pragma once

#include <vector>

#include "squidmodes/circuit.hpp"
#include "squidmodes/kernels.hpp"
#include "squidmodes/modesolver.hpp"

namespace squidmodes {

/// Discretisation of the two resonator halves joined by the linearised SQUID.
struct ChainSpec {
  CircuitParams params;  ///< E_J0 = 0 decouples the halves
  DriveSet tones;
  int cells_per_half = 400;
  double dt = 0.0;  ///< 0 means 0.4 dx / v
  Backend backend = Backend::kSerial;

  double dx() const { return params.d / cells_per_half; }
  double time_step() const;
};

ChainSystem build_chain(const ChainSpec& spec);

/// Node positions in metres; the two junction nodes both sit at x = 0.
std::vector<double> chain_positions(const ChainSpec& spec);

/// Nodes set to amplitude * u(x) of the mode's carrier, at rest.
ChainState chain_state_from_mode(const ChainSpec& spec, const ChainSystem& sys, double k, double amplitude);

/// Total energy at state.t. With shadow set, the kick-drift-kick invariant
/// 1/2 v_{n-1/2}^T M v_{n+1/2} + U is returned instead of the plain sum.
double chain_energy(const ChainSystem& sys, const ChainState& state, bool shadow = false);

/// Normal-mode angular frequencies of the undriven chain, ascending.
std::vector<double> chain_normal_frequencies(const ChainSystem& sys);

struct ChainRun {
  std::vector<double> samples;  ///< phi at the probe node
  double sample_interval = 0.0;
  int probe = 0;
  ChainState final_state;
};

/// Advances the chain, sampling the node nearest probe_x every sample_every steps.
ChainRun simulate_chain(const ChainSpec& spec, const ChainState& init, std::size_t n_samples, int sample_every,
                        double probe_x);

struct OracleOptions {
  int cells_per_half = 400;
  double dt_factor = 0.4;
  double probe_fraction = 0.5;
  std::size_t n_samples = std::size_t{1} << 15;
  int sample_every = 100;
  double noise_floor = 1e-6;
  SolveOptions solve;
  Backend backend = Backend::kSerial;
};

struct VerifyReport {
  FloquetMode mode;
  double oracle_omega = 0.0;
  double oracle_A_plus = 0.0;
  double oracle_A_minus = 0.0;
  double freq_error = 0.0;     ///< oracle minus solver, rad/s
  double A_plus_error = 0.0;   ///< relative magnitude error; 0 when both vanish
  double A_minus_error = 0.0;
  bool sign_plus_matches = true;
  bool sign_minus_matches = true;
};

/// Runs the chain from the solver's carrier profile and compares the measured
/// carrier and sideband ratios against the frequency-domain mode.
VerifyReport verify_mode(const CircuitParams& params, const DriveTone& tone, int branch,
                         const OracleOptions& options = {});

}  // namespace squidmodes
