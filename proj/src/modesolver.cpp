#include "squidmodes/modesolver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "squidmodes/errors.hpp"
#include "squidmodes/roots.hpp"

namespace squidmodes {

int root_index(int branch) {
  if (branch < 1 || branch % 2 == 0)
    throw ParameterError("branch", "branch must be a positive odd integer, got " + std::to_string(branch));
  return (branch + 1) / 2;
}

double static_root(double gamma, int branch) {
  if (!(gamma > 0.0)) throw ParameterError("gamma", "gamma must be positive");
  const int n = root_index(branch);
  const double lo = (n - 1) * kPi;
  const double hi = (n - 0.5) * kPi;
  auto f = [gamma](double kd) { return kd * std::sin(kd) - gamma * std::cos(kd); };
  return bisect_secant(f, lo, hi, 1e-15 * hi);
}

std::vector<double> static_odd_modes(double gamma, int n_roots) {
  if (n_roots < 1) throw ParameterError("n_roots", "n_roots must be at least 1");
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(n_roots));
  for (int n = 1; n <= n_roots; ++n) roots.push_back(static_root(gamma, 2 * n - 1));
  return roots;
}

double sideband_denominator(double gamma, double kd_m, SidebandConvention convention) {
  const double c = std::cos(kd_m);
  const double s = kd_m * std::sin(kd_m);
  return convention == SidebandConvention::kPrinted ? gamma * c + s : s - gamma * c;
}

SidebandAmplitudes sideband_amplitudes(double gamma, double gamma_d, double kd, double drive_kd,
                                       SidebandConvention convention) {
  SidebandAmplitudes out;
  out.denom_plus = sideband_denominator(gamma, kd + drive_kd, convention);
  out.denom_minus = sideband_denominator(gamma, kd - drive_kd, convention);
  const double numerator = gamma_d * std::cos(kd);
  out.plus = numerator / out.denom_plus;
  out.minus = numerator / out.denom_minus;
  return out;
}

double truncated_residual(double gamma, double gamma_d, double drive_kd, double kd, SidebandConvention convention) {
  const double cot = std::cos(kd) / std::sin(kd);
  const double kp = kd + drive_kd;
  const double km = kd - drive_kd;
  const double dp = sideband_denominator(gamma, kp, convention);
  const double dm = sideband_denominator(gamma, km, convention);
  const double g2 = gamma_d * gamma_d;
  return kd - gamma * cot - g2 * cot * std::cos(km) / dm - g2 * cot * std::cos(kp) / dp;
}

double truncated_regular(double gamma, double gamma_d, double drive_kd, double kd, SidebandConvention convention) {
  const double kp = kd + drive_kd;
  const double km = kd - drive_kd;
  const double dp = sideband_denominator(gamma, kp, convention);
  const double dm = sideband_denominator(gamma, km, convention);
  const double carrier = kd * std::sin(kd) - gamma * std::cos(kd);
  return carrier * dp * dm - gamma_d * gamma_d * std::cos(kd) * (std::cos(kp) * dm + std::cos(km) * dp);
}

namespace {

struct Window {
  double lo;
  double hi;
};

Window branch_window(int branch) {
  const int n = root_index(branch);
  return {(n - 1) * kPi + 1e-9, (n + 1) * kPi - 1e-9};
}

double find_carrier(const ScalarFn& f, double seed, int branch, const SolveOptions& options) {
  const auto w = branch_window(branch);
  const auto root = nearest_root(f, seed, options.bracket_step, w.lo, w.hi, options.tol);
  if (!root) {
    std::ostringstream msg;
    msg << "no carrier root for branch " << branch << " in (" << w.lo << ", " << w.hi << ")";
    throw SolverError(SolverErrorKind::kNoRootInBracket, msg.str());
  }
  return *root;
}

void check_pole(double denom, double threshold, const char* which, double kd) {
  if (std::abs(denom) < threshold) {
    std::ostringstream msg;
    msg << "sideband " << which << " denominator " << denom << " at kd=" << kd
        << " (sideband resonant with another mode)";
    throw SolverError(SolverErrorKind::kPoleProximity, msg.str());
  }
}

}  // namespace

DimensionlessMode solve_truncated(double gamma, double gamma_d, double drive_kd, int branch,
                                  const SolveOptions& options) {
  const double k0 = static_root(gamma, branch);
  DimensionlessMode out;
  if (gamma_d == 0.0) {
    out.kd = k0;
    out.residual = std::abs(truncated_residual(gamma, 0.0, drive_kd, k0, options.convention));
    return out;
  }
  auto f = [&](double kd) { return truncated_regular(gamma, gamma_d, drive_kd, kd, options.convention); };
  out.kd = find_carrier(f, options.seed_kd.value_or(k0), branch, options);
  const auto amps = sideband_amplitudes(gamma, gamma_d, out.kd, drive_kd, options.convention);
  check_pole(amps.denom_plus, options.pole_threshold, "+", out.kd);
  check_pole(amps.denom_minus, options.pole_threshold, "-", out.kd);
  out.A_plus = amps.plus;
  out.A_minus = amps.minus;
  out.residual = std::abs(truncated_residual(gamma, gamma_d, drive_kd, out.kd, options.convention));
  return out;
}

FloquetMode floquet_mode(const CircuitParams& params, const DriveTone& tone, int branch,
                         const SolveOptions& options) {
  require_valid(params, std::span<const DriveTone>(&tone, 1));
  const auto sol = solve_truncated(gamma_of(params), gamma_d_of(params, tone), drive_kd(params, tone), branch, options);
  FloquetMode mode;
  mode.branch = branch;
  mode.kd = sol.kd;
  mode.omega = omega_of_kd(params, sol.kd);
  mode.A_plus = sol.A_plus;
  mode.A_minus = sol.A_minus;
  mode.tone = tone;
  mode.half_length = params.d;
  mode.residual = sol.residual;
  return mode;
}

FloquetMode mode_at_carrier(const CircuitParams& params, const DriveTone& tone, int branch, double kd,
                            SidebandConvention convention) {
  root_index(branch);
  const double gamma = gamma_of(params);
  const double gd = gamma_d_of(params, tone);
  const double dkd = drive_kd(params, tone);
  const auto amps = sideband_amplitudes(gamma, gd, kd, dkd, convention);
  FloquetMode mode;
  mode.branch = branch;
  mode.kd = kd;
  mode.omega = omega_of_kd(params, kd);
  mode.A_plus = gd == 0.0 ? 0.0 : amps.plus;
  mode.A_minus = gd == 0.0 ? 0.0 : amps.minus;
  mode.tone = tone;
  mode.half_length = params.d;
  mode.residual = std::abs(truncated_residual(gamma, gd, dkd, kd, convention));
  return mode;
}

namespace {

// Row m of the ladder: diag(m) phi_m - gamma_d (cos k_{m-1} phi_{m-1} + cos k_{m+1} phi_{m+1}) = 0.
double ladder_diagonal(double gamma, double kd_m, int m, SidebandConvention convention) {
  if (m == 0) return kd_m * std::sin(kd_m) - gamma * std::cos(kd_m);
  return sideband_denominator(gamma, kd_m, convention);
}

}  // namespace

double general_determinant(double gamma, double gamma_d, double drive_kd, double kd, int M,
                           SidebandConvention convention) {
  if (M < 1) throw ParameterError("M", "M must be at least 1");
  // Continuant recursion over m = -M..M.
  double f_prev = 1.0;
  double f = ladder_diagonal(gamma, kd - M * drive_kd, -M, convention);
  for (int m = -M + 1; m <= M; ++m) {
    const double km = kd + m * drive_kd;
    const double coupling = gamma_d * gamma_d * std::cos(km) * std::cos(km - drive_kd);
    const double next = ladder_diagonal(gamma, km, m, convention) * f - coupling * f_prev;
    f_prev = f;
    f = next;
  }
  return f;
}

std::vector<double> general_amplitudes(double gamma, double gamma_d, double drive_kd, double kd, int M,
                                       SidebandConvention convention) {
  std::vector<double> amps(static_cast<std::size_t>(2 * M + 1), 0.0);
  amps[static_cast<std::size_t>(M)] = 1.0;
  if (gamma_d == 0.0) return amps;
  // The two chains m > 0 and m < 0 only talk to each other through the carrier.
  for (int dir : {+1, -1}) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M);
    for (int i = 0; i < M; ++i) {
      const int m = dir * (i + 1);
      A(i, i) = ladder_diagonal(gamma, kd + m * drive_kd, m, convention);
      if (i > 0) A(i, i - 1) = -gamma_d * std::cos(kd + (m - dir) * drive_kd);
      if (i + 1 < M) A(i, i + 1) = -gamma_d * std::cos(kd + (m + dir) * drive_kd);
    }
    rhs(0) = gamma_d * std::cos(kd);
    const Eigen::VectorXd phi = A.partialPivLu().solve(rhs);
    for (int i = 0; i < M; ++i) amps[static_cast<std::size_t>(M + dir * (i + 1))] = phi(i);
  }
  return amps;
}

DimensionlessGeneral solve_general(double gamma, double gamma_d, double drive_kd, int branch, int M,
                                   const SolveOptions& options) {
  if (M < 1) throw ParameterError("M", "M must be at least 1");
  const double k0 = static_root(gamma, branch);
  DimensionlessGeneral out;
  if (gamma_d == 0.0) {
    out.kd = k0;
    out.amplitudes = general_amplitudes(gamma, 0.0, drive_kd, k0, M, options.convention);
    return out;
  }
  auto f = [&](double kd) { return general_determinant(gamma, gamma_d, drive_kd, kd, M, options.convention); };
  out.kd = find_carrier(f, options.seed_kd.value_or(k0), branch, options);
  for (int m = -M; m <= M; ++m) {
    if (m == 0) continue;
    const double denom = sideband_denominator(gamma, out.kd + m * drive_kd, options.convention);
    check_pole(denom, options.pole_threshold, m > 0 ? "+" : "-", out.kd);
  }
  out.amplitudes = general_amplitudes(gamma, gamma_d, drive_kd, out.kd, M, options.convention);
  for (int edge : {0, 2 * M}) {
    const double a = std::abs(out.amplitudes[static_cast<std::size_t>(edge)]);
    if (M > 1 && a > 0.1) {
      std::ostringstream msg;
      msg << "outermost sideband amplitude " << a << " exceeds 0.1 of the carrier at M=" << M;
      throw SolverError(SolverErrorKind::kNonConvergedTruncation, msg.str());
    }
  }
  return out;
}

GeneralFloquetMode floquet_mode_general(const CircuitParams& params, const DriveTone& tone, int branch, int M,
                                        const SolveOptions& options) {
  require_valid(params, std::span<const DriveTone>(&tone, 1));
  const double gamma = gamma_of(params);
  const double gd = gamma_d_of(params, tone);
  const double dkd = drive_kd(params, tone);
  const auto sol = solve_general(gamma, gd, dkd, branch, M, options);
  GeneralFloquetMode out;
  out.M = M;
  out.amplitudes = sol.amplitudes;
  auto& mode = out.mode;
  mode.branch = branch;
  mode.kd = sol.kd;
  mode.omega = omega_of_kd(params, sol.kd);
  mode.A_plus = out.amplitude(1);
  mode.A_minus = out.amplitude(-1);
  mode.tone = tone;
  mode.half_length = params.d;
  mode.residual = std::abs(general_determinant(gamma, gd, dkd, sol.kd, M, options.convention));
  return out;
}

double profile_value(double k, double d, double x) {
  const double s = x < 0.0 ? -1.0 : 1.0;
  return s * std::cos(k * (s * d - x));
}

ModeProfile mode_profile(const FloquetMode& mode, std::span<const double> x_grid) {
  const double d = mode.half_length;
  ModeProfile out;
  out.x.assign(x_grid.begin(), x_grid.end());
  out.u_omega.reserve(x_grid.size());
  out.u_plus.reserve(x_grid.size());
  out.u_minus.reserve(x_grid.size());
  const double k = mode.k();
  const double kp = mode.k_plus();
  const double km = mode.k_minus();
  for (double x : x_grid) {
    if (!(x >= -d && x <= d))
      throw SolverError(SolverErrorKind::kDomain, "x = " + std::to_string(x) + " outside [-d, d]");
    out.u_omega.push_back(profile_value(k, d, x));
    out.u_plus.push_back(profile_value(kp, d, x));
    out.u_minus.push_back(profile_value(km, d, x));
  }
  return out;
}

std::vector<SweepPoint> drive_sweep(const CircuitParams& params, double omega_d, std::span<const double> ratios,
                                    int branch, const SolveOptions& options, bool stop_on_error) {
  std::vector<SweepPoint> out;
  out.reserve(ratios.size());
  SolveOptions opts = options;
  for (double r : ratios) {
    if (!(r >= 0.0 && r <= 0.5))
      throw ParameterError("amplitude", "sweep amplitude " + std::to_string(r) + " outside [0, 0.5]");
    SweepPoint p;
    p.ratio = r;
    try {
      const auto mode = floquet_mode(params, DriveTone{omega_d, r * params.E_J0}, branch, opts);
      p.kd = mode.kd;
      p.omega = mode.omega;
      opts.seed_kd = mode.kd;
    } catch (const Error& e) {
      if (stop_on_error) {
        if (const auto* se = dynamic_cast<const SolverError*>(&e)) {
          std::ostringstream msg;
          msg << "at dEJ/EJ0=" << r << ": " << se->detail();
          throw SolverError(se->kind(), msg.str());
        }
        throw;
      }
      p.error = e.what();
      p.kd = std::nan("");
      p.omega = std::nan("");
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<SweepPoint> drive_sweep_parallel(const CircuitParams& params, double omega_d,
                                             std::span<const double> ratios, int branch,
                                             const SolveOptions& options) {
  std::vector<SweepPoint> out(ratios.size());
  const auto n = static_cast<long>(ratios.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    auto& p = out[static_cast<std::size_t>(i)];
    p.ratio = ratios[static_cast<std::size_t>(i)];
    try {
      const auto mode = floquet_mode(params, DriveTone{omega_d, p.ratio * params.E_J0}, branch, options);
      p.kd = mode.kd;
      p.omega = mode.omega;
    } catch (const Error& e) {
      p.error = e.what();
      p.kd = std::nan("");
      p.omega = std::nan("");
    }
  }
  return out;
}

double multi_tone_carrier(const CircuitParams& params, std::span<const DriveTone> tones, int branch,
                          const SolveOptions& options) {
  const double omega_static = omega_of_kd(params, static_root(gamma_of(params), branch));
  double omega = omega_static;
  for (const auto& tone : tones) omega += floquet_mode(params, tone, branch, options).omega - omega_static;
  return omega;
}

}  // namespace squidmodes
