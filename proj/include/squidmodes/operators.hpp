#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace squidmodes {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Nonzero entries of an operator, grouped by row. The Lindblad kernels work
/// on these because every collapse operator here has at most one entry per row.
struct SparseOperator {
  int dim = 0;
  struct Entry {
    int row;
    int col;
    Complex value;
  };
  std::vector<Entry> entries;           ///< sorted by row, then column
  std::vector<int> row_begin;           ///< dim + 1 offsets into entries
  std::string label;

  static SparseOperator from_dense(const Matrix& m, std::string label = {}, double drop = 0.0);
  Matrix dense() const;
};

Matrix identity(int n);
/// Truncated annihilation operator on Fock(N).
Matrix annihilation(int N);
/// Qubit basis order is |g> = 0, |e> = 1; sigma_minus = |g><e|.
Matrix sigma_minus();
Matrix sigma_plus();
Matrix sigma_z();
/// |e><e|
Matrix excited_projector();
Matrix kron(const Matrix& a, const Matrix& b);

/// Operator acting on factor `slot` of a product space with the given factor dimensions.
Matrix embed(const Matrix& op, int slot, const std::vector<int>& dims);

/// Qubits followed by one oscillator truncated at N photons.
struct QubitOscillatorSpace {
  int n_qubits = 2;
  int N = 10;
  std::vector<int> dims;
  Matrix a;
  std::vector<Matrix> sigma_minus;
  std::vector<Matrix> sigma_z;
  std::vector<Matrix> excited;

  QubitOscillatorSpace(int n_qubits, int N);
  int dim() const;
  Matrix number() const { return a.adjoint() * a; }
};

/// Largest |A - A^dagger| entry relative to the largest |A| entry.
double hermiticity_error(const Matrix& m);

}  // namespace squidmodes
