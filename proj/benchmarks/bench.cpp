#include <benchmark/benchmark.h>

#include "qbethe/bethe.hpp"
#include "qbethe/hall_littlewood.hpp"
#include "qbethe/hecke.hpp"
#include "qbethe/qboson.hpp"
#include "qbethe/verify.hpp"

namespace {

using namespace qbethe;
using states::BoundedPartition;
using states::ModelParams;

ModelParams bench_params() {
    ModelParams p;
    p.q = 0.5;
    p.a_minus = 0.3;
    p.a_hat_minus = -0.6;
    p.a_plus = 0.4;
    p.a_hat_plus = -0.15;
    return p;
}

void BM_HLPolynomialN6(benchmark::State& state) {
    BoundedPartition lam({3, 2, 2, 1, 1, 0}, 3);
    hl::SpectralPoint xi{{2.9, 2.3, 1.9, 1.3, 0.8, 0.4}};
    for (auto _ : state)
        benchmark::DoNotOptimize(hl::hl_polynomial(lam, xi, 0.4, 0.3, -0.2));
}
BENCHMARK(BM_HLPolynomialN6);

void BM_SolveRoot(benchmark::State& state) {
    ModelParams p = bench_params();
    BoundedPartition mu({3, 2, 0}, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(bethe::solve_root(mu, p, 4));
}
BENCHMARK(BM_SolveRoot);

void BM_HamiltonianExplicit(benchmark::State& state) {
    ModelParams p = bench_params();
    for (auto _ : state)
        benchmark::DoNotOptimize(fock::hamiltonian_explicit(3, 4, p));
}
BENCHMARK(BM_HamiltonianExplicit);

void BM_QuantumIntegralMatrix(benchmark::State& state) {
    auto hp = hecke::HeckeParams::from_model(bench_params());
    for (auto _ : state)
        benchmark::DoNotOptimize(hecke::quantum_integral_matrix(1, 2, 3, hp));
}
BENCHMARK(BM_QuantumIntegralMatrix);

void BM_PropagationRow(benchmark::State& state) {
    auto hp = hecke::HeckeParams::from_model(bench_params());
    Point lam = {-2, 5, -3};
    for (auto _ : state)
        benchmark::DoNotOptimize(hecke::propagation_row(lam, hp, 3));
}
BENCHMARK(BM_PropagationRow);

void BM_PoincareBruteforce(benchmark::State& state) {
    auto hp = hecke::HeckeParams::from_model(bench_params());
    BoundedPartition lam({3, 0, 0}, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(hecke::poincare_series_bruteforce(lam, hp));
}
BENCHMARK(BM_PoincareBruteforce);

void BM_Spectrum(benchmark::State& state) {
    ModelParams p = bench_params();
    for (auto _ : state)
        benchmark::DoNotOptimize(verify::compute_spectrum(2, 3, p));
}
BENCHMARK(BM_Spectrum);

}  // namespace

BENCHMARK_MAIN();
