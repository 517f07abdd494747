#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace squidmodes {

struct Peak {
  double omega = 0.0;                ///< rad/s
  std::complex<double> amplitude{};  ///< x(t) ~ Re(amplitude e^{i omega t})
};

struct SpectrumReport {
  std::vector<Peak> peaks;  ///< ascending omega
  std::vector<double> omega_grid;
  std::vector<double> magnitude;  ///< windowed FFT magnitude per grid point
};

constexpr std::size_t kMinSpectrumSamples = std::size_t{1} << 14;

/// Hann-windowed spectrum of a uniformly sampled real series. Local maxima
/// above rel_floor times the largest are refined by parabolic interpolation on
/// the log magnitude; their complex amplitudes come from a direct windowed
/// DTFT at the refined frequency.
SpectrumReport spectrum(std::span<const double> series, double sample_interval, std::size_t max_peaks = 16,
                        double rel_floor = 1e-6);

/// Refined peak inside [omega_guess - halfwidth, omega_guess + halfwidth].
Peak peak_near(std::span<const double> series, double sample_interval, double omega_guess, double halfwidth);

/// Windowed DTFT amplitude at an arbitrary frequency.
std::complex<double> amplitude_at(std::span<const double> series, double sample_interval, double omega);

}  // namespace squidmodes
