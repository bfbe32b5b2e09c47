#include <benchmark/benchmark.h>

#include <cmath>

#include "bilap/energy.hpp"
#include "bilap/identities.hpp"
#include "bilap/params.hpp"
#include "bilap/quadrature.hpp"
#include "bilap/shooting.hpp"
#include "bilap/sphere.hpp"

using namespace bilap;

namespace {

RadialSolution reference_shot() {
    ShootingConfig cfg;
    cfg.alpha = 1.0;
    cfg.b = -0.5;
    cfg.r_max = 6.0;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-12;
    return integrate(cfg, ProblemParams(10, 0.0, 4.0));
}

void BM_JlExponent(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(jl_exponent(n, 0.0));
}
BENCHMARK(BM_JlExponent)->Arg(13)->Arg(20)->Arg(30);

void BM_Shoot(benchmark::State& state) {
    for (auto _ : state) {
        auto sol = reference_shot();
        benchmark::DoNotOptimize(sol.grid().size());
    }
}
BENCHMARK(BM_Shoot);

void BM_DenseEval(benchmark::State& state) {
    const auto sol = reference_shot();
    double r = 0.11;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sol.at(r).u);
        r = (r > 5.5) ? 0.11 : r * 1.01;
    }
}
BENCHMARK(BM_DenseEval);

void BM_EnergyEval(benchmark::State& state) {
    const auto sol = reference_shot();
    for (auto _ : state) benchmark::DoNotOptimize(energy(sol, 2.5));
}
BENCHMARK(BM_EnergyEval);

void BM_MonotonicityTrace(benchmark::State& state) {
    const auto sol = reference_shot();
    std::vector<double> radii;
    for (int i = 0; i < 44; ++i)
        radii.push_back(0.1 * std::pow(50.0, i / 43.0));
    for (auto _ : state) {
        auto trace = monotonicity_check(sol, radii);
        benchmark::DoNotOptimize(trace.worst_margin);
    }
}
BENCHMARK(BM_MonotonicityTrace);

void BM_SphereScan(benchmark::State& state) {
    const std::vector<double> a = {0.0, 1.0};
    for (auto _ : state) {
        auto rows = scan_grid(13, 16, a, 0.05, 100.0);
        benchmark::DoNotOptimize(rows.size());
    }
}
BENCHMARK(BM_SphereScan);

void BM_BiharmonicIdentity(benchmark::State& state) {
    const auto zeta = gaussian_profile();
    const auto eta = bump_profile(3.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(biharmonic_cutoff_identity_defect(zeta, eta, 8));
}
BENCHMARK(BM_BiharmonicIdentity);

void BM_AdaptiveQuadrature(benchmark::State& state) {
    for (auto _ : state) {
        auto res = quadrature::integrate(
            [](double r) { return std::exp(-r * r) * std::pow(r, 7.0); }, 0.0,
            9.0, {1e-12, 0.0, 2000});
        benchmark::DoNotOptimize(res.value);
    }
}
BENCHMARK(BM_AdaptiveQuadrature);

} // namespace

BENCHMARK_MAIN();
