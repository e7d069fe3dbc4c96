// Serial vs OpenMP subset kernels on a fixed Gaussian design.

#include "l0cert/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace l0cert;
using namespace l0cert::kernels;

namespace {

struct Design {
    Matrix phi;
    Vector y;
};

const Design& design() {
    static const Design d = [] {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> g;
        Design out{Matrix::NullaryExpr(40, 18, [&] { return g(rng); }), Vector::NullaryExpr(40, [&] { return g(rng); })};
        out.phi.colwise().normalize();
        return out;
    }();
    return d;
}

Execution mode(const benchmark::State& state) {
    return state.range(0) ? Execution::Parallel : Execution::Serial;
}

void BM_MinGramEigenvalue(benchmark::State& state) {
    const Matrix gram = design().phi.transpose() * design().phi;
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(min_gram_eigenvalue(gram, k, mode(state)));
}

void BM_BestSubset(benchmark::State& state) {
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(best_subset_of_size(design().phi, design().y, k, mode(state)));
}

void BM_PinvColumnNorm(benchmark::State& state) {
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(max_pinv_column_norm(design().phi, k, mode(state)));
}

}  // namespace

BENCHMARK(BM_MinGramEigenvalue)->ArgNames({"parallel", "k"})->ArgsProduct({{0, 1}, {4, 6}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BestSubset)->ArgNames({"parallel", "k"})->ArgsProduct({{0, 1}, {4, 6}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PinvColumnNorm)->ArgNames({"parallel", "k"})->ArgsProduct({{0, 1}, {4, 5}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
