#include "squidmodes/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "squidmodes/errors.hpp"
#include "squidmodes/units.hpp"

namespace squidmodes {

namespace {

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double hann(std::size_t i, std::size_t n) {
  return 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1));
}

void require_samples(std::span<const double> series) {
  if (series.size() < kMinSpectrumSamples)
    throw SolverError(SolverErrorKind::kInsufficientSamples, std::to_string(series.size()) + " samples, need at least " +
                                                                 std::to_string(kMinSpectrumSamples));
}

std::vector<double> windowed_magnitude(std::span<const double> series) {
  const std::size_t n = series.size();
  const std::size_t bins = n / 2 + 1;
  auto in = std::unique_ptr<double, decltype(&fftw_free)>(fftw_alloc_real(n), &fftw_free);
  auto out = std::unique_ptr<fftw_complex, decltype(&fftw_free)>(fftw_alloc_complex(bins), &fftw_free);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) in.get()[i] = series[i] * hann(i, n);
  fftw_execute(plan);
  std::vector<double> mag(bins);
  for (std::size_t k = 0; k < bins; ++k) mag[k] = std::hypot(out.get()[k][0], out.get()[k][1]);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return mag;
}

// Offset in bins of the vertex of a parabola through log magnitudes.
double vertex_offset(const std::vector<double>& mag, std::size_t k) {
  if (k == 0 || k + 1 >= mag.size()) return 0.0;
  const double tiny = 1e-300;
  const double a = std::log(mag[k - 1] + tiny);
  const double b = std::log(mag[k] + tiny);
  const double c = std::log(mag[k + 1] + tiny);
  const double den = a - 2.0 * b + c;
  if (den >= 0.0) return 0.0;
  return std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
}

Peak refine(std::span<const double> series, double dt, const std::vector<double>& mag, std::size_t k) {
  const double bin = kTwoPi / (dt * static_cast<double>(series.size()));
  Peak p;
  p.omega = (static_cast<double>(k) + vertex_offset(mag, k)) * bin;
  p.amplitude = amplitude_at(series, dt, p.omega);
  return p;
}

}  // namespace

std::complex<double> amplitude_at(std::span<const double> series, double dt, double omega) {
  const std::size_t n = series.size();
  if (n < 2) throw SolverError(SolverErrorKind::kInsufficientSamples, "need at least two samples");
  std::complex<double> acc = 0.0;
  double wsum = 0.0;
  const std::complex<double> step = std::polar(1.0, -omega * dt);
  std::complex<double> phase = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = hann(i, n);
    acc += w * series[i] * phase;
    wsum += w;
    phase *= step;
    if ((i & 1023) == 1023) phase = std::polar(1.0, -omega * dt * static_cast<double>(i + 1));
  }
  return 2.0 * acc / wsum;
}

SpectrumReport spectrum(std::span<const double> series, double dt, std::size_t max_peaks, double rel_floor) {
  require_samples(series);
  const std::vector<double> mag = windowed_magnitude(series);
  const double bin = kTwoPi / (dt * static_cast<double>(series.size()));

  SpectrumReport r;
  r.magnitude = mag;
  r.omega_grid.resize(mag.size());
  for (std::size_t k = 0; k < mag.size(); ++k) r.omega_grid[k] = static_cast<double>(k) * bin;

  const double top = *std::max_element(mag.begin() + 1, mag.end());
  std::vector<std::size_t> maxima;
  for (std::size_t k = 1; k + 1 < mag.size(); ++k)
    if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1] && mag[k] > rel_floor * top) maxima.push_back(k);
  std::sort(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
  if (maxima.size() > max_peaks) maxima.resize(max_peaks);
  for (std::size_t k : maxima) r.peaks.push_back(refine(series, dt, mag, k));
  std::sort(r.peaks.begin(), r.peaks.end(), [](const Peak& a, const Peak& b) { return a.omega < b.omega; });
  return r;
}

Peak peak_near(std::span<const double> series, double dt, double omega_guess, double halfwidth) {
  require_samples(series);
  const std::vector<double> mag = windowed_magnitude(series);
  const double bin = kTwoPi / (dt * static_cast<double>(series.size()));
  const auto last = static_cast<double>(mag.size() - 2);
  const auto lo = static_cast<std::size_t>(std::clamp(std::floor((omega_guess - halfwidth) / bin), 1.0, last));
  const auto hi = static_cast<std::size_t>(std::clamp(std::ceil((omega_guess + halfwidth) / bin), 1.0, last));
  std::size_t best = lo;
  for (std::size_t k = lo; k <= hi; ++k)
    if (mag[k] > mag[best]) best = k;
  return refine(series, dt, mag, best);
}

}  // namespace squidmodes
