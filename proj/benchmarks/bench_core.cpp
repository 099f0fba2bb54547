#include <benchmark/benchmark.h>

#include "rhosharp/nets.hpp"
#include "rhosharp/scalar.hpp"

using namespace rhosharp;

namespace {

AsymptoticScalar dense_scalar(int terms) {
    std::vector<Term> t;
    for (int k = 0; k < terms; ++k)
        t.push_back({Rational(k, 2), Complex{1.0 + k, 0.5 * k}});
    return AsymptoticScalar(std::move(t), Rational(100));
}

}  // namespace

static void BM_ScalarMultiply(benchmark::State& state) {
    auto x = dense_scalar(static_cast<int>(state.range(0)));
    auto y = dense_scalar(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_ScalarMultiply)->Arg(8)->Arg(32);

static void BM_ScalarInvert(benchmark::State& state) {
    auto x = AsymptoticScalar::constant(1.0) - AsymptoticScalar::rho();
    for (auto _ : state) benchmark::DoNotOptimize(invert(x));
}
BENCHMARK(BM_ScalarInvert);

static void BM_ClassifyNet(benchmark::State& state) {
    auto x = dense_scalar(8);
    for (auto _ : state) benchmark::DoNotOptimize(classify(sample(x, GridSpec{})));
}
BENCHMARK(BM_ClassifyNet);

BENCHMARK_MAIN();
