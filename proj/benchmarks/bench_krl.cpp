#include <benchmark/benchmark.h>

#include <krl/krl.hpp>

using namespace krl;

namespace {

Vector probe(Index n) {
    Rng rng(1);
    return sample_unit_cone_point(n, rng);
}

void BM_MatrixApply(benchmark::State& state) {
    const Index n = state.range(0);
    const auto T = build_matrix_operator(Matrix::Constant(n, n, 0.5));
    const Vector x = probe(n);
    for (auto _ : state) benchmark::DoNotOptimize(T(x));
}
BENCHMARK(BM_MatrixApply)->Arg(8)->Arg(64);

void BM_PLaplaceApply(benchmark::State& state) {
    const Grid grid{0.0, 1.0, state.range(0)};
    const auto T = build_inverse_operator(PLaplaceSpec{static_cast<double>(state.range(1)) / 10.0, grid});
    const Vector x = probe(grid.n);
    for (auto _ : state) benchmark::DoNotOptimize(T(x));
}
BENCHMARK(BM_PLaplaceApply)->Args({199, 15})->Args({199, 20})->Args({199, 30})->Args({399, 30});

void BM_HardySobolevApply(benchmark::State& state) {
    const Grid grid{0.0, 1.0, state.range(0)};
    const auto T = build_inverse_operator(
        HardySobolevSpec{.p = 2.0, .n_dim = 3, .mu = static_cast<double>(state.range(1)) / 100.0, .grid = grid});
    const Vector x = probe(grid.n);
    for (auto _ : state) benchmark::DoNotOptimize(T(x));
}
BENCHMARK(BM_HardySobolevApply)->Args({199, 0})->Args({199, 10});

void BM_PucciApply(benchmark::State& state) {
    const Grid grid{0.0, 1.0, state.range(0)};
    const auto T = build_inverse_operator(PucciSpec{1.0, 2.0, PucciVariant::Plus, grid});
    Vector x = probe(grid.n);
    for (Index i = 0; i < grid.n; i += 3) x(i) = -x(i);
    for (auto _ : state) benchmark::DoNotOptimize(T(x));
}
BENCHMARK(BM_PucciApply)->Arg(199)->Arg(399);

void BM_ContinuationMatrix(benchmark::State& state) {
    Rng rng(2);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Matrix A(8, 8);
    for (Index i = 0; i < 8; ++i)
        for (Index j = 0; j < 8; ++j) A(i, j) = U(rng);
    const auto T = build_matrix_operator(A);
    const Vector u = default_u(T);
    for (auto _ : state) benchmark::DoNotOptimize(continuation(T, u, ContinuationConfig{}));
}
BENCHMARK(BM_ContinuationMatrix);

void BM_ContinuationPLaplace(benchmark::State& state) {
    const Grid grid{0.0, 1.0, state.range(0)};
    const auto T = build_inverse_operator(PLaplaceSpec{static_cast<double>(state.range(1)) / 10.0, grid});
    const Vector u = default_u(T);
    for (auto _ : state) benchmark::DoNotOptimize(continuation(T, u, ContinuationConfig{}));
}
BENCHMARK(BM_ContinuationPLaplace)->Args({199, 20})->Args({399, 15})->Args({399, 30})->Unit(benchmark::kMillisecond);

void BM_ContinuationPucci(benchmark::State& state) {
    const Grid grid{0.0, 1.0, 199};
    const auto T = build_inverse_operator(PucciSpec{1.0, 2.0, PucciVariant::Minus, grid});
    const Vector u = default_u(T);
    for (auto _ : state) benchmark::DoNotOptimize(continuation(T, u, ContinuationConfig{}));
}
BENCHMARK(BM_ContinuationPucci)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
