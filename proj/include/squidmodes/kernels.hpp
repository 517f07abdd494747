#pragma once

// Hot loops of the library, each in a serial reference form and an OpenMP
// form. Both forms run the same per-element arithmetic in the same order, so
// their results are bit-identical; tests rely on that.

#include <span>
#include <vector>

#include "squidmodes/operators.hpp"

namespace squidmodes {

enum class Backend { kSerial, kOpenMP };

/// drho/dt = -i (H_eff rho - rho H_eff^dagger) + sum_c c rho c^dagger, with
/// H_eff = H - (i/2) sum_c c^dagger c already folded in by the caller.
void lindblad_rhs_serial(const Matrix& H_eff, std::span<const SparseOperator> jumps, const Matrix& rho, Matrix& out);
void lindblad_rhs_omp(const Matrix& H_eff, std::span<const SparseOperator> jumps, const Matrix& rho, Matrix& out);

inline void lindblad_rhs(Backend b, const Matrix& H_eff, std::span<const SparseOperator> jumps, const Matrix& rho,
                         Matrix& out) {
  if (b == Backend::kOpenMP)
    lindblad_rhs_omp(H_eff, jumps, rho, out);
  else
    lindblad_rhs_serial(H_eff, jumps, rho, out);
}

/// Lumped LC chain: two open-ended halves joined by a (possibly modulated)
/// junction spring K(t) = junction_scale * (E_J0 + sum_i dE_J,i cos(w_i t)).
struct ChainSystem {
  int cells_per_half = 0;
  double dt = 0.0;
  double line_stiffness = 0.0;        ///< 1 / (L_T dx)
  std::vector<double> mass;           ///< node capacitances C_T dx (half at the ends)
  double junction_capacitance = 0.0;  ///< C, couples the two junction nodes
  double junction_scale = 0.0;        ///< (2 pi / Phi_0)^2
  double E_J0 = 0.0;
  std::vector<double> tone_omega;
  std::vector<double> tone_dEJ;

  int nodes() const { return 2 * (cells_per_half + 1); }
  int junction_left() const { return cells_per_half; }
  int junction_right() const { return cells_per_half + 1; }
  double stiffness(double t) const;
};

struct ChainState {
  std::vector<double> phi;
  std::vector<double> vel;
  std::vector<double> acc;
  double t = 0.0;
};

/// Accelerations for the current fluxes at time t.
void chain_accelerations_serial(const ChainSystem& sys, std::span<const double> phi, double t, std::span<double> acc);
void chain_accelerations_omp(const ChainSystem& sys, std::span<const double> phi, double t, std::span<double> acc);

/// Kick-drift-kick leapfrog. state.acc must hold the accelerations at state.t.
/// When samples is non-null, phi[probe] is appended every sample_every steps,
/// starting with the state on entry.
void leapfrog_advance_serial(const ChainSystem& sys, ChainState& state, long steps, int sample_every, int probe,
                             std::vector<double>* samples);
void leapfrog_advance_omp(const ChainSystem& sys, ChainState& state, long steps, int sample_every, int probe,
                          std::vector<double>* samples);

inline void leapfrog_advance(Backend b, const ChainSystem& sys, ChainState& state, long steps, int sample_every,
                             int probe, std::vector<double>* samples) {
  if (b == Backend::kOpenMP)
    leapfrog_advance_omp(sys, state, steps, sample_every, probe, samples);
  else
    leapfrog_advance_serial(sys, state, steps, sample_every, probe, samples);
}

/// Number of OpenMP threads the library may use (honours SQUIDMODES_THREADS).
int worker_threads();
/// Applies SQUIDMODES_THREADS to the OpenMP runtime; returns the resulting cap.
int apply_thread_limit_from_env();

}  // namespace squidmodes
