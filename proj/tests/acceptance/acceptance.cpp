// Acceptance checks A1-A12. One PASS/FAIL line per criterion; exit status is
// the number of failures (capped at 1).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "squidmodes/circuit.hpp"
#include "squidmodes/coupling.hpp"
#include "squidmodes/dynamics.hpp"
#include "squidmodes/errors.hpp"
#include "squidmodes/modesolver.hpp"
#include "squidmodes/quantizer.hpp"
#include "squidmodes/tdoracle.hpp"
#include "squidmodes/units.hpp"

using namespace squidmodes;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

CircuitParams long_resonator() { return {0.012, 1.2e8, 50.0, energy_from_ghz(715.0), 0.0}; }
CircuitParams short_resonator() { return {0.0025, 1.2e8, 50.0, energy_from_ghz(715.0), 0.0}; }
DriveTone strong_tone(const CircuitParams& p) { return {ghz_to_rad(2.0), 0.4 * p.E_J0}; }

TransmonParams transmon(double omega_ghz, double x_over_d, const CircuitParams& p) {
  TransmonParams t;
  t.Omega = ghz_to_rad(omega_ghz);
  t.x_t = x_over_d * p.d;
  t.beta = 2.0 / 3.0;
  t.ratio = 80.0;
  t.E_C = TransmonParams::charging_energy_for(t.Omega, t.ratio);
  t.T1 = 10e-6;
  t.T2 = 5e-6;
  return t;
}

std::array<TransmonParams, 2> gate_qubits(const CircuitParams& p) {
  return {transmon(6.0, 0.1, p), transmon(6.5, -0.1, p)};
}

const GateCalibration& calibration() {
  static const GateCalibration cal =
      calibrate_gate(short_resonator(), gate_qubits(short_resonator()), mhz_to_rad(2.5), mhz_to_rad(10.0));
  return cal;
}

GateConfig ideal_gate() {
  GateConfig c;
  c.G = mhz_to_rad(2.5);
  c.delta = 4.0 * c.G;
  c.include_kerr = false;
  return c;
}

GateConfig lossy_gate() {
  const GateCalibration& cal = calibration();
  GateConfig c;
  c.G = cal.G;
  c.delta = cal.delta;
  c.chi = cal.chi;
  c.include_kerr = true;
  c.kappa = mhz_to_rad(0.2);
  c.T1 = {10e-6, 10e-6};
  c.T2 = {5e-6, 5e-6};
  return c;
}

const GateResult& ideal_result() {
  static const GateResult r = run_gate(ideal_gate());
  return r;
}

const GateResult& lossy_result() {
  static const GateResult r = run_gate(lossy_gate());
  return r;
}

Outcome a1() {
  const CircuitParams p = long_resonator();
  const FloquetMode m = floquet_mode(p, strong_tone(p), 3);
  const double f = rad_to_ghz(m.omega);
  return {std::abs(m.kd - 4.614) <= 0.005 && std::abs(f - 7.343) <= 0.008,
          fmt("kd = %.5f (4.614 +- 0.005), omega/2pi = %.5f GHz (7.343 +- 0.008)", m.kd, f)};
}

Outcome a2() {
  const CircuitParams p = short_resonator();
  const double f = rad_to_ghz(omega_of_kd(p, static_root(gamma_of(p), 1)));
  return {std::abs(f - 10.82) <= 0.03, fmt("omega/2pi = %.4f GHz (10.82 +- 0.03)", f)};
}

Outcome a3() {
  const CircuitParams p = long_resonator();
  const VerifyReport r = verify_mode(p, strong_tone(p), 3);
  const double ferr = rad_to_mhz(r.freq_error);
  const bool mags = std::abs(r.mode.A_plus) >= 0.01 && std::abs(r.mode.A_plus) <= 0.05 &&
                    std::abs(r.mode.A_minus) >= 0.01 && std::abs(r.mode.A_minus) <= 0.05;
  const bool pass = std::abs(ferr) < 2.0 && r.A_plus_error < 0.1 && r.A_minus_error < 0.1 && r.sign_plus_matches &&
                    r.sign_minus_matches && mags;
  return {pass, fmt("freq error %.2f MHz (<2); A+ model %.4f oracle %.4f (err %.1f%%, sign %s); "
                    "A- model %.4f oracle %.4f (err %.1f%%, sign %s)",
                    ferr, r.mode.A_plus, r.oracle_A_plus, 100.0 * r.A_plus_error,
                    r.sign_plus_matches ? "ok" : "MISMATCH", r.mode.A_minus, r.oracle_A_minus,
                    100.0 * r.A_minus_error, r.sign_minus_matches ? "ok" : "MISMATCH")};
}

Outcome a4() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ug(5.0, 100.0), ur(0.0, 0.4), uw(0.1, 2.0);
  std::uniform_int_distribution<int> ub(0, 2);
  int cases = 0, draws = 0;
  double worst = 0.0;
  while (cases < 50 && draws < 1000) {
    ++draws;
    const double g = ug(rng), gd = 0.5 * g * ur(rng), wkd = uw(rng);
    const int branch = 2 * ub(rng) + 1;
    DimensionlessMode closed;
    try {
      closed = solve_truncated(g, gd, wkd, branch);
    } catch (const SolverError&) {
      continue;  // draw lands next to a sideband pole
    }
    const DimensionlessGeneral gen = solve_general(g, gd, wkd, branch, 1);
    worst = std::max(worst, std::abs(gen.kd - closed.kd));
    ++cases;
  }
  return {cases == 50 && worst < 1e-9, fmt("%d cases, max |dkd| = %.2e (<1e-9)", cases, worst)};
}

Outcome a5() {
  const CircuitParams p = long_resonator();
  std::vector<double> ratios;
  for (int i = 0; i <= 40; ++i) ratios.push_back(0.01 * i);
  const auto pts = drive_sweep(p, ghz_to_rad(2.0), ratios, 3);
  const double shift = rad_to_mhz(std::abs(pts.back().omega - pts.front().omega));
  return {shift >= 5.0 && shift <= 20.0, fmt("carrier shift %.2f MHz over dEJ/EJ0 0..0.4 ([5, 20])", shift)};
}

// The transmon sits on the lower sideband of the undriven first mode.
TransmonParams sideband_transmon(const CircuitParams& p, double omega_d) {
  TransmonParams t = transmon(1.0, 0.1, p);
  t.Omega = omega_of_kd(p, static_root(gamma_of(p), 1)) - omega_d;
  t.E_C = TransmonParams::charging_energy_for(t.Omega, t.ratio);
  return t;
}

Outcome a6() {
  const CircuitParams p = short_resonator();
  double worst = 0.0;
  for (double wd_ghz : {0.5}) {
    const double wd = ghz_to_rad(wd_ghz);
    const TransmonParams t = sideband_transmon(p, wd);
    for (int i = 1; i <= 10; ++i) {
      const DriveTone tone{wd, 0.01 * i * p.E_J0};
      const double full = sideband_coupling(quantize(floquet_mode(p, tone, 1), p), t, Sideband::kMinus).G;
      const double qs = quasi_static_coupling(p, tone, t, 1).G;
      worst = std::max(worst, std::abs(full / qs - 1.0));
    }
  }
  const double wd6 = ghz_to_rad(6.0);
  const TransmonParams t6 = sideband_transmon(p, wd6);
  const DriveTone tone6{wd6, 0.1 * p.E_J0};
  const double full6 = sideband_coupling(quantize(floquet_mode(p, tone6, 1), p), t6, Sideband::kMinus).G;
  const double qs6 = quasi_static_coupling(p, tone6, t6, 1).G;
  return {worst < 0.1 && std::abs(full6) < std::abs(qs6),
          fmt("0.5 GHz: max |G/G_qs - 1| = %.3f (<0.1); 6 GHz at 0.1: |G| = %.3f MHz vs |G_qs| = %.3f MHz", worst,
              std::abs(rad_to_mhz(full6)), std::abs(rad_to_mhz(qs6)))};
}

Outcome a7() {
  const CircuitParams p = short_resonator();
  const double wd = ghz_to_rad(6.0);
  const TransmonParams t = sideband_transmon(p, wd);
  const FloquetMode m0 = floquet_mode(p, {wd, 0.0}, 1);
  const double G_omega = sideband_coupling(quantize(m0, p), t, Sideband::kCarrier).G;
  const double chi = rad_to_mhz(cross_kerr(G_omega, t.Omega - m0.omega, t.alpha()));
  return {std::abs(std::abs(chi) - 0.2) <= 0.05,
          fmt("chi/2pi = %.4f MHz (|chi| 0.2 +- 0.05); Omega/2pi = %.3f GHz, G_omega/2pi = %.2f MHz", chi,
              rad_to_ghz(t.Omega), rad_to_mhz(G_omega))};
}

Outcome a8() {
  const GateCalibration& cal = calibration();
  const auto q = gate_qubits(short_resonator());
  const double EJ0 = short_resonator().E_J0;
  const double target[2] = {0.168, 0.158};
  bool ok = true;
  std::string d;
  for (int i = 0; i < 2; ++i) {
    const ToneAssignment& a = cal.qubits[static_cast<std::size_t>(i)];
    for (double r : {std::abs(a.dEJ_t) / EJ0, std::abs(a.dEJ_p) / EJ0}) {
      ok = ok && std::abs(r / target[i] - 1.0) <= 0.15;
      d += fmt("%.4f ", r);
    }
    // red tone below and blue tone above one shared carrier, each detuned by delta
    const double Om = q[static_cast<std::size_t>(i)].Omega;
    const double red = cal.omega_shifted - a.omega_t - Om;
    const double blue = a.omega_p - cal.omega_shifted - Om;
    ok = ok && std::abs(std::abs(red) - std::abs(cal.delta)) < mhz_to_rad(0.1) &&
         std::abs(std::abs(blue) - std::abs(cal.delta)) < mhz_to_rad(0.1);
    d += fmt("(tones %.4f/%.4f GHz) ", rad_to_ghz(a.omega_t), rad_to_ghz(a.omega_p));
  }
  const double ws = rad_to_ghz(cal.omega_shifted);
  ok = ok && ws >= 10.82 && ws <= 10.92;
  return {ok, "dEJ/EJ0 " + d + fmt("vs {0.168, 0.158} +-15%%; carrier %.4f GHz ([10.82, 10.92])", ws)};
}

Outcome a9() {
  const GateResult& r = ideal_result();
  return {r.concurrence >= 0.999 && r.fidelity >= 0.999 && r.n_photon < 1e-3,
          fmt("concurrence %.6f, fidelity %.6f (>= 0.999), <n> = %.2e (<1e-3)", r.concurrence, r.fidelity,
              r.n_photon)};
}

Outcome a10() {
  const GateResult& r = lossy_result();
  return {std::abs(r.fidelity - 0.95) <= 0.02,
          fmt("fidelity %.5f (0.95 +- 0.02); chi/2pi = %.4f, %.4f MHz", r.fidelity, rad_to_mhz(lossy_gate().chi[0]),
              rad_to_mhz(lossy_gate().chi[1]))};
}

Outcome a11() {
  const Trajectory& ti = ideal_result().trajectory;
  const Trajectory& tl = lossy_result().trajectory;
  const bool inv = ti.invariants_hold() && tl.invariants_hold();
  GateConfig wide = lossy_gate();
  wide.N = 15;
  GateConfig fine = lossy_gate();
  fine.dt *= 0.5;
  fine.sample_every *= 2;
  const double base = lossy_result().fidelity;
  const double dN = std::abs(run_gate(wide).fidelity - base);
  const double dt = std::abs(run_gate(fine).fidelity - base);
  return {inv && dN < 1e-3 && dt < 1e-5,
          fmt("invariants %s (trace err %.1e/%.1e, min eig %.1e/%.1e); N 10->15 dF = %.2e (<1e-3); dt/2 dF = %.2e "
              "(<1e-5)",
              inv ? "hold" : "VIOLATED", ti.max_trace_error, tl.max_trace_error, ti.min_eigenvalue, tl.min_eigenvalue,
              dN, dt)};
}

Outcome a12() {
  const double kappa = mhz_to_rad(0.2);
  const QubitOscillatorSpace s0(0, 6);
  GateConfig c;
  c.n_qubits = 0;
  c.kappa = kappa;
  EvolveOptions o;
  o.t_final = 1.0 / kappa;
  o.dt = 0.5e-9;
  o.sample_every = 100;
  const Trajectory decay = lindblad_evolve(s0, build_ms_hamiltonian(s0, 0.0, 1.0, {}), collapse_operators(s0, c),
                                           initial_state(s0, "1"), o);
  const double p1 = decay.final_state()(1, 1).real();

  const QubitOscillatorSpace s1(1, 5);
  const double G = mhz_to_rad(2.5);
  EvolveOptions o2;
  o2.t_final = M_PI / (2.0 * G);
  o2.dt = 0.02e-9;
  const Trajectory swap =
      lindblad_evolve(s1, build_ms_hamiltonian(s1, G, 0.0, {}, true), {}, initial_state(s1, "e0"), o2);
  const double f = swap.final_state()(1, 1).real();
  return {std::abs(p1 - std::exp(-1.0)) <= 1e-4 && f > 1.0 - 1e-6,
          fmt("decay p1(1/kappa) - 1/e = %.2e (<=1e-4); swap fidelity 1 - %.2e (>1-1e-6)", p1 - std::exp(-1.0),
              1.0 - f)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks{
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},   {"A5", a5},   {"A6", a6},
      {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}, {"A11", a11}, {"A12", a12}};
  int failures = 0;
  for (const auto& [name, check] : checks) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %-4s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(checks.size()) - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
