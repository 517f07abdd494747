#pragma once

#include <numbers>

namespace squidmodes {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduced Planck constant (J s).
inline constexpr double kHbar = 1.054571817e-34;
/// Elementary charge (C).
inline constexpr double kElementaryCharge = 1.602176634e-19;
/// Magnetic flux quantum h/2e (Wb).
inline constexpr double kFluxQuantum = 2.067833848e-15;

// Configuration files speak GHz (ordinary frequency) and E/hbar in GHz.
// Everything inside the library is SI with angular frequencies; these are
// the only conversion points.
constexpr double ghz_to_rad(double f_ghz) { return kTwoPi * 1e9 * f_ghz; }
constexpr double rad_to_ghz(double omega) { return omega / (kTwoPi * 1e9); }
constexpr double mhz_to_rad(double f_mhz) { return kTwoPi * 1e6 * f_mhz; }
constexpr double rad_to_mhz(double omega) { return omega / (kTwoPi * 1e6); }
constexpr double rad_to_khz(double omega) { return omega / (kTwoPi * 1e3); }
constexpr double energy_from_ghz(double e_over_hbar_ghz) { return kHbar * ghz_to_rad(e_over_hbar_ghz); }
constexpr double energy_to_ghz(double energy) { return rad_to_ghz(energy / kHbar); }

}  // namespace squidmodes
