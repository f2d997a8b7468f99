// Throughput probes for the hot paths: short-vector enumeration, Smith normal
// form, symplectic reduction, and the certified numeric theta sum.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "symplat/isogeny.hpp"
#include "symplat/lattice.hpp"
#include "symplat/snf.hpp"
#include "symplat/theta.hpp"

using namespace symplat;

static void BM_ShortVectorsE8(benchmark::State& state) {
    auto e8 = theta::e8_lattice();
    std::vector<Rat> zero(8, Rat(0));
    Rat maxnorm(state.range(0));
    for (auto _ : state) {
        auto sv = theta::short_vectors(e8, zero, maxnorm);
        benchmark::DoNotOptimize(sv.total_count());
    }
}
BENCHMARK(BM_ShortVectorsE8)->Arg(4)->Arg(8);

static void BM_SmithNormalForm(benchmark::State& state) {
    std::mt19937_64 rng(2024);
    const std::size_t n = 6;
    IMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = int(rng() % 7) - 3;
    for (auto _ : state) {
        auto s = smith_normal_form(a);
        benchmark::DoNotOptimize(s.divisors.size());
    }
}
BENCHMARK(BM_SmithNormalForm);

static void BM_SymplecticReduce(benchmark::State& state) {
    auto mats = isogeny::enumerate(2, Int(2), Int(1));
    for (auto _ : state) {
        for (const auto& b : mats) {
            auto r = isogeny::symplectic_reduce(b);
            benchmark::DoNotOptimize(r.d1);
        }
    }
    state.SetItemsProcessed(state.iterations() * int64_t(mats.size()));
}
BENCHMARK(BM_SymplecticReduce);

static void BM_ThetaNumeric(benchmark::State& state) {
    IMat g(2, 2);
    g(0, 0) = 1;
    g(1, 1) = 3;
    lattice::GramLattice lat(std::move(g));
    std::vector<Rat> coset{Rat(1, 2), Rat(0)};
    std::complex<double> tau(0.3, 0.9);
    for (auto _ : state) {
        auto v = theta::theta_numeric(lat, coset, tau);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_ThetaNumeric);

BENCHMARK_MAIN();
