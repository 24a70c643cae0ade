#include <benchmark/benchmark.h>

#include <numbers>

#include "declab/dicke/dicke.hpp"
#include "declab/lab/rng.hpp"
#include "declab/qcore/evolve.hpp"
#include "declab/spinfid/spinfid.hpp"
#include "declab/tfvlasov/vlasov.hpp"

using namespace declab;

namespace {

void BM_analytic_expectation(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    dicke::DickeParams p{1.0, 0.0, 0.2, 8, cutoff};
    const dicke::PolarizationSector pol(8, 8);
    const auto rad = dicke::RadiationState::coherent(cutoff, {1.5, 0.0});
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dicke::analytic_expectation(t, rad, p, pol));
        t += 1e-3;
    }
}
BENCHMARK(BM_analytic_expectation)->Arg(64)->Arg(256);

void BM_propagator_build(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    dicke::DickeParams p{1.0, 0.0, 0.2, 7, n / 8};
    const auto h = dicke::build_hf_hamiltonian(p);
    for (auto _ : state) {
        qcore::Propagator prop(h);
        benchmark::DoNotOptimize(prop.eigenvalues().sum());
    }
}
BENCHMARK(BM_propagator_build)->Arg(256)->Arg(1024);

void BM_vlasov_step(benchmark::State& state) {
    tfvlasov::PhaseSpaceGridSpec spec{128, 256, 4.0 * std::numbers::pi, 6.0};
    tfvlasov::PhysicalConstants k;
    k.charge = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    Eigen::MatrixXd w0(spec.nv, spec.nx);
    for (int j = 0; j < spec.nv; ++j)
        for (int i = 0; i < spec.nx; ++i)
            w0(j, i) = std::exp(-0.5 * spec.v(j) * spec.v(j)) *
                       (1.0 + 1e-3 * std::cos(0.5 * spec.x(i))) /
                       std::sqrt(2.0 * std::numbers::pi);
    auto w = tfvlasov::PhaseSpaceDistribution::from_values(spec, w0);
    const tfvlasov::VlasovSolver solver(spec, k, false);
    const double dt = 0.9 * spec.dx() / spec.v_max;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solver.step(w, dt).field_energy);
    }
}
BENCHMARK(BM_vlasov_step);

void BM_variance_local(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    lab::SplitMix64 rng(3);
    const auto model = spinfid::models::randomized(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spinfid::variance(model.ensemble, model.state));
    }
}
BENCHMARK(BM_variance_local)->Arg(10)->Arg(64);

} // namespace

BENCHMARK_MAIN();
