#pragma once

#include <span>
#include <string>
#include <vector>

#include "squidmodes/units.hpp"

namespace squidmodes {

/// Geometry and electrical constants of the resonator and its inline SQUID.
struct CircuitParams {
  double d = 0.0;     ///< half-length of the resonator (m)
  double v = 0.0;     ///< wave speed (m/s)
  double Z = 0.0;     ///< characteristic impedance (Ohm)
  double E_J0 = 0.0;  ///< static Josephson energy (J)
  double C = 0.0;     ///< SQUID capacitance (F)
  static constexpr double phi0 = kFluxQuantum;
};

/// One harmonic flux-modulation tone, E_J(t) = E_J0 + delta_EJ cos(omega_d t).
struct DriveTone {
  double omega_d = 0.0;   ///< rad/s
  double delta_EJ = 0.0;  ///< J, signed
};

using DriveSet = std::vector<DriveTone>;

struct DerivedConstants {
  double L_T = 0.0;    ///< inductance per length (H/m)
  double C_T = 0.0;    ///< capacitance per length (F/m)
  double L_J = 0.0;    ///< static Josephson inductance (H)
  double gamma = 0.0;  ///< 2 L_T d / L_J
  std::vector<double> gamma_d;  ///< 2 L_T d / dL_J, one per tone, signed
};

DerivedConstants derive_constants(const CircuitParams& params, std::span<const DriveTone> tones = {});

double josephson_inductance(double E_J);
/// Dimensionless junction strength 2 L_T d / L_J.
double gamma_of(const CircuitParams& params);
/// Dimensionless modulation strength; gamma_d / gamma == delta_EJ / (2 E_J0).
double gamma_d_of(const CircuitParams& params, const DriveTone& tone);
/// omega_d d / v, the sideband wavenumber offset.
double drive_kd(const CircuitParams& params, const DriveTone& tone);

/// Carrier angular frequency for a dimensionless wavenumber.
inline double omega_of_kd(const CircuitParams& p, double kd) { return kd * p.v / p.d; }
inline double kd_of_omega(const CircuitParams& p, double omega) { return omega * p.d / p.v; }

struct Issue {
  enum class Severity { kWarning, kError };
  Severity severity = Severity::kError;
  std::string field;
  std::string message;
};

/// Reports every violated invariant. Never throws.
std::vector<Issue> validate(const CircuitParams& params, std::span<const DriveTone> tones = {});

bool has_errors(std::span<const Issue> issues);

/// Throws ParameterError naming the first offending field.
void require_valid(const CircuitParams& params, std::span<const DriveTone> tones = {});

}  // namespace squidmodes
