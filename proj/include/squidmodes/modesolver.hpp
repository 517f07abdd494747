#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "squidmodes/circuit.hpp"

namespace squidmodes {

/// Which denominator the sideband amplitudes use.
///   kPrinted:    gamma cos(k_m d) + k_m d sin(k_m d) on the sideband rows
///   kEliminated: k_m d sin(k_m d) - gamma cos(k_m d) on every row, the
///                direct elimination of the frequency-space boundary condition
enum class SidebandConvention { kPrinted, kEliminated };

struct SolveOptions {
  SidebandConvention convention = SidebandConvention::kPrinted;
  std::optional<double> seed_kd;  ///< default: the static root of the branch
  double pole_threshold = 1e-3;
  double tol = 1e-12;
  double bracket_step = 0.2;
};

/// A solved multi-frequency resonance (carrier plus first sidebands).
struct FloquetMode {
  int branch = 1;           ///< odd-mode index 1, 3, 5, ...
  double kd = 0.0;          ///< carrier wavenumber times d
  double omega = 0.0;       ///< carrier angular frequency, kd v / d
  double A_plus = 0.0;      ///< phi(omega + omega_d) / phi(omega)
  double A_minus = 0.0;     ///< phi(omega - omega_d) / phi(omega)
  DriveTone tone;
  double half_length = 0.0; ///< d, needed to turn kd into k
  double residual = 0.0;    ///< |truncated equation residual| at kd

  double omega_plus() const { return omega + tone.omega_d; }
  double omega_minus() const { return omega - tone.omega_d; }
  double k() const { return kd / half_length; }
  double k_plus() const { return k() * omega_plus() / omega; }
  double k_minus() const { return k() * omega_minus() / omega; }
};

struct SidebandAmplitudes {
  double plus = 0.0;
  double minus = 0.0;
  double denom_plus = 0.0;
  double denom_minus = 0.0;
};

/// Odd-branch number (1, 3, 5, ...) to root index n, with the static root in ((n-1)pi, (n-1/2)pi).
int root_index(int branch);

/// First n_roots solutions of kd tan(kd) = gamma, increasing.
std::vector<double> static_odd_modes(double gamma, int n_roots);
/// Static root for one odd branch.
double static_root(double gamma, int branch);

/// Sideband denominator for one sideband wavenumber.
double sideband_denominator(double gamma, double kd_m, SidebandConvention convention);

/// Sideband amplitude ratios evaluated at a fixed carrier root.
SidebandAmplitudes sideband_amplitudes(double gamma, double gamma_d, double kd, double drive_kd,
                                       SidebandConvention convention = SidebandConvention::kPrinted);

/// kd minus the right-hand side of the truncated carrier equation.
double truncated_residual(double gamma, double gamma_d, double drive_kd, double kd,
                          SidebandConvention convention = SidebandConvention::kPrinted);

/// truncated_residual * sin(kd) * D+ * D-: same roots, no poles.
double truncated_regular(double gamma, double gamma_d, double drive_kd, double kd,
                         SidebandConvention convention = SidebandConvention::kPrinted);

struct DimensionlessMode {
  double kd = 0.0;
  double A_plus = 0.0;
  double A_minus = 0.0;
  double residual = 0.0;
};

/// Carrier root and sideband amplitudes in dimensionless form.
DimensionlessMode solve_truncated(double gamma, double gamma_d, double drive_kd, int branch,
                                  const SolveOptions& options = {});

FloquetMode floquet_mode(const CircuitParams& params, const DriveTone& tone, int branch,
                         const SolveOptions& options = {});

/// A mode whose carrier is pinned at kd (for instance a carrier already shifted
/// by other tones); A+- follow from the sideband formula at that kd.
FloquetMode mode_at_carrier(const CircuitParams& params, const DriveTone& tone, int branch, double kd,
                            SidebandConvention convention = SidebandConvention::kPrinted);

/// Sideband ladder m = -M..M. Row m couples m-1, m, m+1 with weight gamma_d cos(k_{m+-1} d).
struct DimensionlessGeneral {
  double kd = 0.0;
  std::vector<double> amplitudes;  ///< index m + M, normalised to amplitudes[M] == 1
};

double general_determinant(double gamma, double gamma_d, double drive_kd, double kd, int M,
                           SidebandConvention convention = SidebandConvention::kPrinted);

/// Null vector of the ladder at kd, normalised to the carrier.
std::vector<double> general_amplitudes(double gamma, double gamma_d, double drive_kd, double kd, int M,
                                       SidebandConvention convention = SidebandConvention::kPrinted);

DimensionlessGeneral solve_general(double gamma, double gamma_d, double drive_kd, int branch, int M,
                                   const SolveOptions& options = {});

struct GeneralFloquetMode {
  FloquetMode mode;
  int M = 1;
  std::vector<double> amplitudes;
  double amplitude(int m) const { return amplitudes.at(static_cast<std::size_t>(m + M)); }
};

GeneralFloquetMode floquet_mode_general(const CircuitParams& params, const DriveTone& tone, int branch, int M,
                                        const SolveOptions& options = {});

/// Spatial mode functions on [-d, d], odd about the junction.
struct ModeProfile {
  std::vector<double> x;
  std::vector<double> u_omega;
  std::vector<double> u_plus;
  std::vector<double> u_minus;
};

/// sign(x) cos(k (sign(x) d - x)); x = 0 is taken as the right-hand side (0+).
double profile_value(double k, double d, double x);

ModeProfile mode_profile(const FloquetMode& mode, std::span<const double> x_grid);

struct SweepPoint {
  double ratio = 0.0;  ///< delta_EJ / E_J0
  double kd = 0.0;
  double omega = 0.0;
  std::string error;   ///< empty on success
  bool ok() const { return error.empty(); }
};

/// Carrier frequency against modulation amplitude, each solve seeded from the
/// previous root. With stop_on_error the first failure is rethrown with the
/// amplitude in its message; otherwise it is recorded on the point.
std::vector<SweepPoint> drive_sweep(const CircuitParams& params, double omega_d, std::span<const double> ratios,
                                    int branch, const SolveOptions& options = {}, bool stop_on_error = true);

/// Same curve with every point seeded from the static root, solved in parallel.
std::vector<SweepPoint> drive_sweep_parallel(const CircuitParams& params, double omega_d,
                                             std::span<const double> ratios, int branch,
                                             const SolveOptions& options = {});

/// Carrier under several simultaneous tones: the static root plus the sum of
/// the individual per-tone shifts.
double multi_tone_carrier(const CircuitParams& params, std::span<const DriveTone> tones, int branch,
                          const SolveOptions& options = {});

}  // namespace squidmodes
