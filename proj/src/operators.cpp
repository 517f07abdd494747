#include "squidmodes/operators.hpp"

#include <algorithm>
#include <cmath>

#include "squidmodes/errors.hpp"

namespace squidmodes {

SparseOperator SparseOperator::from_dense(const Matrix& m, std::string label, double drop) {
  SparseOperator out;
  out.dim = static_cast<int>(m.rows());
  out.label = std::move(label);
  out.row_begin.assign(static_cast<std::size_t>(out.dim) + 1, 0);
  for (int i = 0; i < out.dim; ++i) {
    out.row_begin[static_cast<std::size_t>(i)] = static_cast<int>(out.entries.size());
    for (int j = 0; j < out.dim; ++j)
      if (std::abs(m(i, j)) > drop) out.entries.push_back({i, j, m(i, j)});
  }
  out.row_begin.back() = static_cast<int>(out.entries.size());
  return out;
}

Matrix SparseOperator::dense() const {
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& e : entries) m(e.row, e.col) += e.value;
  return m;
}

Matrix identity(int n) { return Matrix::Identity(n, n); }

Matrix annihilation(int N) {
  Matrix a = Matrix::Zero(N, N);
  for (int n = 1; n < N; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix sigma_minus() {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 1) = 1.0;
  return s;
}

Matrix sigma_plus() { return sigma_minus().adjoint(); }

Matrix sigma_z() {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = -1.0;
  s(1, 1) = 1.0;
  return s;
}

Matrix excited_projector() {
  Matrix s = Matrix::Zero(2, 2);
  s(1, 1) = 1.0;
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix embed(const Matrix& op, int slot, const std::vector<int>& dims) {
  if (slot < 0 || slot >= static_cast<int>(dims.size()) || op.rows() != dims[static_cast<std::size_t>(slot)])
    throw SolverError(SolverErrorKind::kDimensionMismatch, "operator does not fit factor " + std::to_string(slot));
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    out = kron(out, k == slot ? op : identity(dims[static_cast<std::size_t>(k)]));
  return out;
}

QubitOscillatorSpace::QubitOscillatorSpace(int n_qubits_, int N_) : n_qubits(n_qubits_), N(N_) {
  if (n_qubits < 0) throw ParameterError("n_qubits", "qubit count must be non-negative");
  if (N < 2) throw ParameterError("N", "Fock cutoff must be at least 2");
  dims.assign(static_cast<std::size_t>(n_qubits), 2);
  dims.push_back(N);
  a = embed(annihilation(N), n_qubits, dims);
  for (int q = 0; q < n_qubits; ++q) {
    sigma_minus.push_back(embed(squidmodes::sigma_minus(), q, dims));
    sigma_z.push_back(embed(squidmodes::sigma_z(), q, dims));
    excited.push_back(embed(excited_projector(), q, dims));
  }
}

int QubitOscillatorSpace::dim() const { return static_cast<int>(a.rows()); }

double hermiticity_error(const Matrix& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace squidmodes
