#include <benchmark/benchmark.h>

#include "squidmodes/dynamics.hpp"
#include "squidmodes/kernels.hpp"
#include "squidmodes/tdoracle.hpp"
#include "squidmodes/units.hpp"

using namespace squidmodes;

namespace {

struct GateFixture {
  QubitOscillatorSpace space{2, 10};
  Matrix heff;
  std::vector<SparseOperator> jumps;
  Matrix rho;

  explicit GateFixture(int N) : space(2, N) {
    GateConfig c;
    c.N = N;
    c.G = mhz_to_rad(2.5);
    c.delta = mhz_to_rad(10.0);
    c.chi = {-mhz_to_rad(0.13), -mhz_to_rad(0.17)};
    c.kappa = mhz_to_rad(0.2);
    c.T1 = {10e-6, 10e-6};
    c.T2 = {5e-6, 5e-6};
    jumps = collapse_operators(space, c);
    Matrix decay = Matrix::Zero(space.dim(), space.dim());
    for (const auto& j : jumps) decay += j.dense().adjoint() * j.dense();
    heff = build_ms_hamiltonian(c).at(13e-9) - Complex(0.0, 0.5) * decay;
    rho = Matrix::Identity(space.dim(), space.dim()) / double(space.dim());
  }
};

template <Backend B>
void BM_LindbladRhs(benchmark::State& st) {
  const GateFixture f(static_cast<int>(st.range(0)));
  Matrix out;
  for (auto _ : st) {
    lindblad_rhs(B, f.heff, f.jumps, f.rho, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <Backend B>
void BM_Leapfrog(benchmark::State& st) {
  ChainSpec spec;
  spec.params = {0.012, 1.2e8, 50.0, energy_from_ghz(715.0), 0.0};
  spec.tones = {{ghz_to_rad(2.0), 0.4 * spec.params.E_J0}};
  spec.cells_per_half = static_cast<int>(st.range(0));
  const ChainSystem sys = build_chain(spec);
  ChainState s = chain_state_from_mode(spec, sys, 4.6 / spec.params.d, 1e-18);
  for (auto _ : st) {
    leapfrog_advance(B, sys, s, 1000, 1000, 0, nullptr);
    benchmark::DoNotOptimize(s.phi.data());
  }
}

}  // namespace

BENCHMARK(BM_LindbladRhs<Backend::kSerial>)->Arg(10)->Arg(15)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LindbladRhs<Backend::kOpenMP>)->Arg(10)->Arg(15)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Leapfrog<Backend::kSerial>)->Arg(400)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Leapfrog<Backend::kOpenMP>)->Arg(400)->Arg(4000)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  apply_thread_limit_from_env();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
