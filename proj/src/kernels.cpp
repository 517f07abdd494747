#include "squidmodes/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <string>

namespace squidmodes {

namespace {

// One output column of the Lindblad right-hand side. H is the effective
// Hamiltonian in row-grouped sparse form.
inline void lindblad_column(Eigen::Index k, const SparseOperator& H, std::span<const SparseOperator> jumps,
                            const Matrix& rho, Matrix& out) {
  const Complex minus_i(0.0, -1.0);
  const Complex plus_i(0.0, 1.0);
  auto col = out.col(k);
  col.setZero();
  for (const auto& h : H.entries) col(h.row) += minus_i * h.value * rho(h.col, k);
  for (int p = H.row_begin[static_cast<std::size_t>(k)]; p < H.row_begin[static_cast<std::size_t>(k) + 1]; ++p) {
    const auto& h = H.entries[static_cast<std::size_t>(p)];
    col += (plus_i * std::conj(h.value)) * rho.col(h.col);
  }
  for (const auto& c : jumps) {
    for (int p = c.row_begin[static_cast<std::size_t>(k)]; p < c.row_begin[static_cast<std::size_t>(k) + 1]; ++p) {
      const auto& w = c.entries[static_cast<std::size_t>(p)];
      const Complex wc = std::conj(w.value);
      for (const auto& v : c.entries) col(v.row) += v.value * rho(v.col, w.col) * wc;
    }
  }
}

inline double chain_force(const ChainSystem& sys, std::span<const double> phi, int i) {
  const int n = sys.cells_per_half;
  const int half_start = i <= n ? 0 : n + 1;
  const int half_end = half_start + n;
  double f = 0.0;
  if (i > half_start) f += sys.line_stiffness * (phi[static_cast<std::size_t>(i - 1)] - phi[static_cast<std::size_t>(i)]);
  if (i < half_end) f += sys.line_stiffness * (phi[static_cast<std::size_t>(i + 1)] - phi[static_cast<std::size_t>(i)]);
  return f;
}

// The two junction nodes share a 2x2 mass block when C > 0.
inline void junction_accelerations(const ChainSystem& sys, std::span<const double> phi, double t, std::span<double> acc) {
  const int l = sys.junction_left();
  const int r = sys.junction_right();
  const double dphi = phi[static_cast<std::size_t>(r)] - phi[static_cast<std::size_t>(l)];
  const double spring = sys.stiffness(t) * dphi;
  const double fl = chain_force(sys, phi, l) + spring;
  const double fr = chain_force(sys, phi, r) - spring;
  const double C = sys.junction_capacitance;
  const double ml = sys.mass[static_cast<std::size_t>(l)] + C;
  const double mr = sys.mass[static_cast<std::size_t>(r)] + C;
  const double det = ml * mr - C * C;
  acc[static_cast<std::size_t>(l)] = (mr * fl + C * fr) / det;
  acc[static_cast<std::size_t>(r)] = (C * fl + ml * fr) / det;
}

template <bool Parallel>
void advance(const ChainSystem& sys, ChainState& s, long steps, int sample_every, int probe,
             std::vector<double>* samples) {
  const int n = sys.nodes();
  const double dt = sys.dt;
  const double half = 0.5 * dt;
  double* phi = s.phi.data();
  double* vel = s.vel.data();
  double* acc = s.acc.data();
  const double* mass = sys.mass.data();
  const int jl = sys.junction_left();
  const int jr = sys.junction_right();
  double t = s.t;

#pragma omp parallel if (Parallel) default(shared)
  for (long step = 0; step < steps; ++step) {
#pragma omp single
    {
      if (samples && step % sample_every == 0) samples->push_back(phi[probe]);
    }
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      vel[i] += half * acc[i];
      phi[i] += dt * vel[i];
    }
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      if (i == jl || i == jr) continue;
      acc[i] = chain_force(sys, std::span<const double>(phi, static_cast<std::size_t>(n)), i) / mass[i];
    }
#pragma omp single
    {
      t = s.t + static_cast<double>(step + 1) * dt;
      junction_accelerations(sys, std::span<const double>(phi, static_cast<std::size_t>(n)), t,
                             std::span<double>(acc, static_cast<std::size_t>(n)));
    }
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) vel[i] += half * acc[i];
  }
  s.t += static_cast<double>(steps) * dt;
}

}  // namespace

void lindblad_rhs_serial(const Matrix& H_eff, std::span<const SparseOperator> jumps, const Matrix& rho, Matrix& out) {
  const SparseOperator H = SparseOperator::from_dense(H_eff);
  out.resize(rho.rows(), rho.cols());
  for (Eigen::Index k = 0; k < rho.cols(); ++k) lindblad_column(k, H, jumps, rho, out);
}

void lindblad_rhs_omp(const Matrix& H_eff, std::span<const SparseOperator> jumps, const Matrix& rho, Matrix& out) {
  const SparseOperator H = SparseOperator::from_dense(H_eff);
  out.resize(rho.rows(), rho.cols());
  const Eigen::Index n = rho.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < n; ++k) lindblad_column(k, H, jumps, rho, out);
}

double ChainSystem::stiffness(double t) const {
  double ej = E_J0;
  for (std::size_t i = 0; i < tone_omega.size(); ++i) ej += tone_dEJ[i] * std::cos(tone_omega[i] * t);
  return junction_scale * ej;
}

void chain_accelerations_serial(const ChainSystem& sys, std::span<const double> phi, double t, std::span<double> acc) {
  const int n = sys.nodes();
  for (int i = 0; i < n; ++i) {
    if (i == sys.junction_left() || i == sys.junction_right()) continue;
    acc[static_cast<std::size_t>(i)] = chain_force(sys, phi, i) / sys.mass[static_cast<std::size_t>(i)];
  }
  junction_accelerations(sys, phi, t, acc);
}

void chain_accelerations_omp(const ChainSystem& sys, std::span<const double> phi, double t, std::span<double> acc) {
  const int n = sys.nodes();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    if (i == sys.junction_left() || i == sys.junction_right()) continue;
    acc[static_cast<std::size_t>(i)] = chain_force(sys, phi, i) / sys.mass[static_cast<std::size_t>(i)];
  }
  junction_accelerations(sys, phi, t, acc);
}

void leapfrog_advance_serial(const ChainSystem& sys, ChainState& state, long steps, int sample_every, int probe,
                             std::vector<double>* samples) {
  advance<false>(sys, state, steps, sample_every, probe, samples);
}

void leapfrog_advance_omp(const ChainSystem& sys, ChainState& state, long steps, int sample_every, int probe,
                          std::vector<double>* samples) {
  advance<true>(sys, state, steps, sample_every, probe, samples);
}

int worker_threads() { return omp_get_max_threads(); }

int apply_thread_limit_from_env() {
  if (const char* env = std::getenv("SQUIDMODES_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0 && cap < omp_get_max_threads()) omp_set_num_threads(cap);
    } catch (const std::exception&) {
      // unparsable values leave the runtime default in place
    }
  }
  return omp_get_max_threads();
}

}  // namespace squidmodes
