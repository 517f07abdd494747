#pragma once

#include "squidmodes/operators.hpp"

namespace squidmodes {

struct Concurrence {
  double wootters = 0.0;
  double shortcut = 0.0;  ///< 2 Im rho_{ee,gg}; exact only for states on {gg, ee}
};

/// Two-qubit basis order gg, ge, eg, ee. Throws on non-density-matrix input.
Concurrence concurrence(const Matrix& rho_2q);

/// Fidelity with (|gg> + i|ee>)/sqrt(2).
double bell_fidelity_fixed(const Matrix& rho_2q);
/// Same target maximised over local z rotations: (rho_gg,gg + rho_ee,ee)/2 + |rho_ee,gg|.
double bell_fidelity_optimized(const Matrix& rho_2q);

/// Traces out the trailing oscillator factor of a (2^n_qubits * N)-dimensional state.
Matrix partial_trace_oscillator(const Matrix& rho, int n_qubits = 2);

/// Throws unless rho is Hermitian, unit trace and positive within tolerance.
void require_density_matrix(const Matrix& rho, double tol = 1e-6);

double min_eigenvalue(const Matrix& hermitian);

}  // namespace squidmodes
