// bench_core.cpp — microbenchmarks for the hot paths: closed-form noise
// propagation vs the dense superoperator, Schur-Horn scaling, K_C.
#include <benchmark/benchmark.h>

#include "majorreach/crange.hpp"
#include "majorreach/random.hpp"
#include "majorreach/synthesis.hpp"

using namespace majorreach;

namespace {

Matrix random_normal(int n, Rng& rng) {
    const Matrix u = haar_unitary(n, rng);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector vals(n);
    for (int j = 0; j < n; ++j) vals(j) = Complex(gauss(rng), gauss(rng));
    return u * vals.asDiagonal() * u.adjoint();
}

void bm_apply_noise(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    const NoiseOperator noise = make_noise(random_normal(n, rng));
    const Matrix rho = random_density(n, n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_noise(rho, noise, 0.7));
    }
}
BENCHMARK(bm_apply_noise)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void bm_dense_propagate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(2);
    const ControlSystem system =
        make_control_system(Matrix::Zero(n, n), {}, make_noise(random_normal(n, rng)));
    const DensityMatrix rho(random_density(n, n, rng), 1e-8, 1e-8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(rho, system, RealVector(0), 1, 0.7));
    }
}
BENCHMARK(bm_dense_propagate)->Arg(4)->Arg(8)->Arg(16);

void bm_schur_horn(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    RealVector y(n);
    for (int j = 0; j < n; ++j) y(j) = unif(rng);
    y /= y.sum();
    std::sort(y.data(), y.data() + n, std::greater<double>());
    RealVector x = RealVector::Constant(n, 1.0 / n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            schur_horn_unitary(EigenvalueSequence(x, true), EigenvalueSequence(y, true)));
    }
}
BENCHMARK(bm_schur_horn)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void bm_k_c(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(4);
    const Matrix c = random_hermitian(n, rng);
    const Matrix t = random_hermitian(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(k_c(c, t));
    }
}
BENCHMARK(bm_k_c)->Arg(4)->Arg(8)->Arg(16);

void bm_synthesize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(5);
    const ControlSystem system = make_control_system(
        random_hermitian(n, rng), {random_hermitian(n, rng)}, make_noise(random_normal(n, rng)));
    const DensityMatrix rho0(random_density(n, n, rng), 1e-8, 1e-8);
    const DensityMatrix target = random_majorized_state(rho0, 3, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(synthesize(rho0, target, system, 1e-3));
    }
}
BENCHMARK(bm_synthesize)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
