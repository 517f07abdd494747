#include "squidmodes/circuit.hpp"

#include <cmath>

#include "squidmodes/errors.hpp"
#include "squidmodes/modesolver.hpp"

namespace squidmodes {

std::string_view to_string(SolverErrorKind kind) {
  switch (kind) {
    case SolverErrorKind::kBracketFailure: return "BracketFailure";
    case SolverErrorKind::kPoleProximity: return "PoleProximity";
    case SolverErrorKind::kNoRootInBracket: return "NoRootInBracket";
    case SolverErrorKind::kNonConvergedTruncation: return "NonConvergedTruncation";
    case SolverErrorKind::kNonConvergence: return "NonConvergence";
    case SolverErrorKind::kAmplitudeOutOfRange: return "AmplitudeOutOfRange";
    case SolverErrorKind::kResonance: return "Resonance";
    case SolverErrorKind::kStepResolution: return "StepResolution";
    case SolverErrorKind::kPositivityLoss: return "PositivityLoss";
    case SolverErrorKind::kFockOverflow: return "FockOverflow";
    case SolverErrorKind::kCflViolation: return "CflViolation";
    case SolverErrorKind::kInstability: return "Instability";
    case SolverErrorKind::kInsufficientSamples: return "InsufficientSamples";
    case SolverErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case SolverErrorKind::kDomain: return "Domain";
  }
  return "Unknown";
}

double josephson_inductance(double E_J) {
  const double reduced = kFluxQuantum / kTwoPi;
  return reduced * reduced / E_J;
}

double gamma_of(const CircuitParams& p) {
  const double L_T = p.Z / p.v;
  return 2.0 * L_T * p.d / josephson_inductance(p.E_J0);
}

double gamma_d_of(const CircuitParams& p, const DriveTone& tone) {
  return gamma_of(p) * tone.delta_EJ / (2.0 * p.E_J0);
}

double drive_kd(const CircuitParams& p, const DriveTone& tone) { return tone.omega_d * p.d / p.v; }

DerivedConstants derive_constants(const CircuitParams& params, std::span<const DriveTone> tones) {
  require_valid(params);
  DerivedConstants out;
  out.L_T = params.Z / params.v;
  out.C_T = 1.0 / (params.Z * params.v);
  out.L_J = josephson_inductance(params.E_J0);
  out.gamma = 2.0 * out.L_T * params.d / out.L_J;
  out.gamma_d.reserve(tones.size());
  for (const auto& tone : tones) out.gamma_d.push_back(out.gamma * tone.delta_EJ / (2.0 * params.E_J0));
  return out;
}

std::vector<Issue> validate(const CircuitParams& p, std::span<const DriveTone> tones) {
  std::vector<Issue> issues;
  auto error = [&](std::string field, std::string msg) {
    issues.push_back({Issue::Severity::kError, std::move(field), std::move(msg)});
  };
  // Written so that NaN fails every check.
  if (!(p.d > 0.0)) error("d", "d must be positive");
  if (!(p.v > 0.0)) error("v", "v must be positive");
  if (!(p.Z > 0.0)) error("Z", "Z must be positive");
  if (!(p.E_J0 > 0.0)) error("E_J0", "E_J0 must be positive");
  if (!(p.C >= 0.0)) error("C", "C must be non-negative");

  for (std::size_t i = 0; i < tones.size(); ++i) {
    const auto& t = tones[i];
    const std::string field = "tones[" + std::to_string(i) + "]";
    if (!(t.omega_d > 0.0)) error(field + ".omega_d", "omega_d must be positive");
    if (!std::isfinite(t.delta_EJ)) error(field + ".delta_EJ", "delta_EJ must be finite");
    if (p.E_J0 > 0.0 && !(std::abs(t.delta_EJ) < p.E_J0))
      error(field + ".delta_EJ", "modulation exceeds static Josephson energy");
  }

  if (!has_errors(issues) && p.C > 0.0) {
    const double kd1 = static_odd_modes(gamma_of(p), 1).front();
    const double omega1 = omega_of_kd(p, kd1);
    const double ratio = p.C * omega1 * omega1 * josephson_inductance(p.E_J0);
    if (ratio > 0.1) {
      issues.push_back({Issue::Severity::kWarning, "C",
                        "SQUID capacitance not negligible: C*omega^2*L_J = " + std::to_string(ratio)});
    }
  }
  return issues;
}

bool has_errors(std::span<const Issue> issues) {
  for (const auto& i : issues)
    if (i.severity == Issue::Severity::kError) return true;
  return false;
}

void require_valid(const CircuitParams& params, std::span<const DriveTone> tones) {
  for (const auto& issue : validate(params, tones))
    if (issue.severity == Issue::Severity::kError) throw ParameterError(issue.field, issue.message);
}

}  // namespace squidmodes
