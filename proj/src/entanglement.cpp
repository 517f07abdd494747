#include "squidmodes/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "squidmodes/errors.hpp"

namespace squidmodes {

double min_eigenvalue(const Matrix& hermitian) {
  const Matrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void require_density_matrix(const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols()) throw ParameterError("rho", "density matrix must be square");
  if (rho.size() == 0) throw ParameterError("rho", "density matrix is empty");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) throw ParameterError("rho", "density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > tol) throw ParameterError("rho", "density matrix trace is not 1");
  if (min_eigenvalue(rho) < -tol) throw ParameterError("rho", "density matrix has a negative eigenvalue");
}

Concurrence concurrence(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw SolverError(SolverErrorKind::kDimensionMismatch, "concurrence needs a 4x4 two-qubit state");
  require_density_matrix(rho);

  const Matrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_rho = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();

  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix flipped = yy * rho.conjugate() * yy;
  Matrix m = sqrt_rho * flipped * sqrt_rho;
  m = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> em(m, Eigen::EigenvaluesOnly);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) lam[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, em.eigenvalues()(i)));
  std::sort(lam.begin(), lam.end(), std::greater<>());

  Concurrence c;
  c.wootters = std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
  c.shortcut = 2.0 * rho(3, 0).imag();
  return c;
}

double bell_fidelity_fixed(const Matrix& rho) {
  return 0.5 * (rho(0, 0).real() + rho(3, 3).real()) + rho(3, 0).imag();
}

double bell_fidelity_optimized(const Matrix& rho) {
  return 0.5 * (rho(0, 0).real() + rho(3, 3).real()) + std::abs(rho(3, 0));
}

Matrix partial_trace_oscillator(const Matrix& rho, int n_qubits) {
  const Eigen::Index q = Eigen::Index{1} << n_qubits;
  if (rho.rows() != rho.cols() || rho.rows() == 0 || rho.rows() % q != 0)
    throw SolverError(SolverErrorKind::kDimensionMismatch,
                      "state dimension " + std::to_string(rho.rows()) + " is not a multiple of " + std::to_string(q));
  const Eigen::Index N = rho.rows() / q;
  Matrix out = Matrix::Zero(q, q);
  for (Eigen::Index a = 0; a < q; ++a)
    for (Eigen::Index b = 0; b < q; ++b) {
      Complex s = 0.0;
      for (Eigen::Index n = 0; n < N; ++n) s += rho(a * N + n, b * N + n);
      out(a, b) = s;
    }
  return out;
}

}  // namespace squidmodes
