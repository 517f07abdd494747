#include "squidmodes/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "squidmodes/entanglement.hpp"
#include "squidmodes/errors.hpp"
#include "squidmodes/units.hpp"

namespace squidmodes {

namespace {

constexpr double kRateFloor = 1e-30;

double inverse_time(double T) { return std::isinf(T) ? 0.0 : 1.0 / T; }

double photon_number(const Matrix& rho, const Eigen::VectorXd& n_diag) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) s += n_diag(i) * rho(i, i).real();
  return s;
}

}  // namespace

double GateConfig::gate_time() const {
  if (t_final > 0.0) return t_final;
  if (delta == 0.0) throw ParameterError("t_final", "t_final must be given when delta is 0");
  return kTwoPi / std::abs(delta);
}

std::vector<Issue> validate(const GateConfig& cfg) {
  std::vector<Issue> out;
  auto err = [&](std::string f, std::string m) { out.push_back({Issue::Severity::kError, std::move(f), std::move(m)}); };
  if (cfg.n_qubits < 0 || cfg.n_qubits > 2) err("n_qubits", "one or two qubits supported");
  if (cfg.N < 4) err("N", "Fock cutoff must be at least 4");
  if (!(cfg.dt > 0.0)) err("dt", "time step must be positive");
  if (cfg.sample_every < 1) err("sample_every", "sample interval must be at least one step");
  if (cfg.kappa < 0.0) err("kappa", "decay rate must be non-negative");
  for (int q = 0; q < 2; ++q) {
    const auto i = static_cast<std::size_t>(q);
    const std::string tag = "[" + std::to_string(q) + "]";
    if (!(cfg.T1[i] > 0.0)) err("T1" + tag, "T1 must be positive");
    if (!(cfg.T2[i] > 0.0)) err("T2" + tag, "T2 must be positive");
    if (cfg.T2[i] > 2.0 * cfg.T1[i]) err("T2" + tag, "T2 exceeds 2 T1");
  }
  if (cfg.t_final < 0.0) err("t_final", "final time must be non-negative");
  return out;
}

Matrix RotatingHamiltonian::at(double t) const {
  const Complex ph = std::polar(1.0, -delta * t);
  Matrix h = ph * B;
  h.noalias() += std::conj(ph) * B.adjoint();
  h += K;
  return h;
}

RotatingHamiltonian build_ms_hamiltonian(const QubitOscillatorSpace& space, double G, double delta,
                                         const std::vector<double>& chi, bool beam_splitter_only) {
  const int d = space.dim();
  RotatingHamiltonian h;
  h.delta = delta;
  h.B = Matrix::Zero(d, d);
  h.K = Matrix::Zero(d, d);
  const Matrix n = space.number();
  for (int q = 0; q < space.n_qubits; ++q) {
    const auto i = static_cast<std::size_t>(q);
    const Matrix& sm = space.sigma_minus[i];
    const Matrix sp = sm.adjoint();
    if (beam_splitter_only)
      h.B += G * space.a * sp;
    else
      h.B += G * space.a * (sp + sm);
    if (i < chi.size() && chi[i] != 0.0) h.K += chi[i] * n * space.excited[i];
  }
  return h;
}

RotatingHamiltonian build_ms_hamiltonian(const GateConfig& cfg) {
  const QubitOscillatorSpace space(cfg.n_qubits, cfg.N);
  std::vector<double> chi;
  if (cfg.include_kerr) chi.assign(cfg.chi.begin(), cfg.chi.begin() + cfg.n_qubits);
  return build_ms_hamiltonian(space, cfg.G, cfg.delta, chi, cfg.beam_splitter_only);
}

std::vector<SparseOperator> collapse_operators(const QubitOscillatorSpace& space, const GateConfig& cfg) {
  std::vector<SparseOperator> out;
  if (cfg.kappa > kRateFloor) out.push_back(SparseOperator::from_dense(std::sqrt(cfg.kappa) * space.a, "sqrt(kappa) a"));
  for (int q = 0; q < space.n_qubits; ++q) {
    const auto i = static_cast<std::size_t>(q);
    const double relax = inverse_time(cfg.T1[i]);
    const double dephase = inverse_time(cfg.T2[i]) - 0.5 * relax;
    if (relax > kRateFloor)
      out.push_back(SparseOperator::from_dense(std::sqrt(relax) * space.sigma_minus[i], "relax q" + std::to_string(q)));
    if (dephase > kRateFloor)
      out.push_back(
          SparseOperator::from_dense(std::sqrt(0.5 * dephase) * space.sigma_z[i], "dephase q" + std::to_string(q)));
  }
  return out;
}

Matrix initial_state(const QubitOscillatorSpace& space, const std::string& label) {
  const auto nq = static_cast<std::size_t>(space.n_qubits);
  if (label.size() <= nq) throw ParameterError("initial", "state label '" + label + "' is too short");
  int index = 0;
  for (std::size_t q = 0; q < nq; ++q) {
    const char c = label[q];
    if (c != 'g' && c != 'e') throw ParameterError("initial", "qubit letters must be g or e in '" + label + "'");
    index = 2 * index + (c == 'e' ? 1 : 0);
  }
  int photons = 0;
  for (std::size_t i = nq; i < label.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(label[i])))
      throw ParameterError("initial", "photon number must be digits in '" + label + "'");
    photons = 10 * photons + (label[i] - '0');
    if (photons >= space.N) throw ParameterError("initial", "photon number exceeds the Fock cutoff");
  }
  const int k = index * space.N + photons;
  Matrix rho = Matrix::Zero(space.dim(), space.dim());
  rho(k, k) = 1.0;
  return rho;
}

bool Trajectory::invariants_hold() const {
  return max_trace_error < 1e-6 && max_hermiticity_error < 1e-9 && min_eigenvalue > -1e-7;
}

Trajectory lindblad_evolve(const QubitOscillatorSpace& space, const RotatingHamiltonian& H,
                           const std::vector<SparseOperator>& collapse, const Matrix& rho0, const EvolveOptions& opt) {
  const int d = space.dim();
  if (rho0.rows() != d || rho0.cols() != d)
    throw SolverError(SolverErrorKind::kDimensionMismatch, "initial state does not match the Hilbert space");
  require_density_matrix(rho0);
  if (!(opt.dt > 0.0) || !(opt.t_final >= 0.0)) throw ParameterError("dt", "time step must be positive");

  double scale = std::abs(H.delta);
  scale = std::max(scale, H.B.cwiseAbs().maxCoeff());
  scale = std::max(scale, H.K.cwiseAbs().maxCoeff());
  if (opt.dt * scale >= 0.05)
    throw SolverError(SolverErrorKind::kStepResolution,
                      "dt*max(|delta|, G, chi) = " + std::to_string(opt.dt * scale) + " is not below 0.05");

  const long steps = std::max(1L, static_cast<long>(std::ceil(opt.t_final / opt.dt - 1e-9)));
  const double dt = opt.t_final > 0.0 ? opt.t_final / static_cast<double>(steps) : 0.0;

  Matrix decay = Matrix::Zero(d, d);
  for (const auto& c : collapse) {
    const Matrix cd = c.dense();
    decay.noalias() += cd.adjoint() * cd;
  }
  const Matrix anti = Complex(0.0, -0.5) * decay;

  Eigen::VectorXd n_diag = space.number().diagonal().real();
  Eigen::VectorXd exc_diag = n_diag;
  for (const auto& e : space.excited) exc_diag += e.diagonal().real();

  Trajectory tr;
  tr.n_qubits = space.n_qubits;
  tr.N = space.N;
  tr.min_eigenvalue = std::numeric_limits<double>::infinity();

  auto record = [&](double t, const Matrix& rho) {
    tr.t.push_back(t);
    tr.rho.push_back(rho);
    tr.max_trace_error = std::max(tr.max_trace_error, std::abs(rho.trace() - Complex(1.0)));
    tr.max_hermiticity_error = std::max(tr.max_hermiticity_error, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
    const double lo = squidmodes::min_eigenvalue(rho);
    tr.min_eigenvalue = std::min(tr.min_eigenvalue, lo);
    if (lo < -1e-5)
      throw SolverError(SolverErrorKind::kPositivityLoss,
                        "smallest eigenvalue " + std::to_string(lo) + " at t=" + std::to_string(t * 1e9) + " ns");
    tr.n_photon.push_back(photon_number(rho, n_diag));
    tr.excitations.push_back(photon_number(rho, exc_diag));
    if (space.n_qubits == 2) {
      const Matrix r2 = partial_trace_oscillator(rho, 2);
      tr.rho_gggg.push_back(r2(0, 0).real());
      tr.rho_eeee.push_back(r2(3, 3).real());
      tr.im_rho_eegg.push_back(r2(3, 0).imag());
      const Matrix r2n = r2 / r2.trace();
      const Concurrence c = concurrence(0.5 * (r2n + r2n.adjoint()));
      tr.concurrence.push_back(c.wootters);
      tr.concurrence_shortcut.push_back(c.shortcut);
      tr.fidelity.push_back(bell_fidelity_optimized(r2));
      tr.fidelity_fixed.push_back(bell_fidelity_fixed(r2));
    }
  };

  auto heff = [&](double t) {
    Matrix h = H.at(t);
    h += anti;
    return h;
  };

  Matrix rho = rho0;
  Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
  const std::span<const SparseOperator> jumps(collapse);
  record(0.0, rho);
  for (long s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) * dt;
    const Matrix h0 = heff(t);
    const Matrix hm = heff(t + 0.5 * dt);
    const Matrix h1 = heff(t + dt);
    lindblad_rhs(opt.backend, h0, jumps, rho, k1);
    tmp = rho + (0.5 * dt) * k1;
    lindblad_rhs(opt.backend, hm, jumps, tmp, k2);
    tmp = rho + (0.5 * dt) * k2;
    lindblad_rhs(opt.backend, hm, jumps, tmp, k3);
    tmp = rho + dt * k3;
    lindblad_rhs(opt.backend, h1, jumps, tmp, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double np = photon_number(rho, n_diag);
    tr.max_photon = std::max(tr.max_photon, np);
    if (np > opt.photon_limit)
      throw SolverError(SolverErrorKind::kFockOverflow, "mean photon number " + std::to_string(np) +
                                                            " exceeds " + std::to_string(opt.photon_limit));
    if (!std::isfinite(np)) throw SolverError(SolverErrorKind::kInstability, "state became non-finite");
    if ((s + 1) % opt.sample_every == 0 || s + 1 == steps) record(static_cast<double>(s + 1) * dt, rho);
  }
  return tr;
}

GateResult run_gate(const GateConfig& cfg) {
  std::vector<Issue> issues = validate(cfg);
  for (const auto& i : issues)
    if (i.severity == Issue::Severity::kError) throw ParameterError(i.field, i.message);
  if (cfg.n_qubits != 2) throw ParameterError("n_qubits", "the gate needs two qubits");

  const QubitOscillatorSpace space(cfg.n_qubits, cfg.N);
  std::vector<double> chi;
  if (cfg.include_kerr) chi.assign(cfg.chi.begin(), cfg.chi.end());
  const RotatingHamiltonian H = build_ms_hamiltonian(space, cfg.G, cfg.delta, chi, cfg.beam_splitter_only);
  const auto collapse = collapse_operators(space, cfg);

  EvolveOptions opt;
  opt.t_final = cfg.gate_time();
  opt.dt = cfg.dt;
  opt.sample_every = cfg.sample_every;
  opt.backend = cfg.backend;
  opt.photon_limit = 0.25 * cfg.N;

  GateResult r;
  r.trajectory = lindblad_evolve(space, H, collapse, initial_state(space, cfg.initial), opt);
  const Trajectory& tr = r.trajectory;
  r.rho_2q = partial_trace_oscillator(tr.final_state(), 2);
  r.fidelity = tr.fidelity.back();
  r.fidelity_fixed = tr.fidelity_fixed.back();
  r.concurrence = tr.concurrence.back();
  r.concurrence_shortcut = tr.concurrence_shortcut.back();
  r.n_photon = tr.n_photon.back();
  return r;
}

}  // namespace squidmodes
