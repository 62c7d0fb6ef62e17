// Serial reference vs OpenMP kernels. Argument 0 selects the serial path,
// otherwise it is the thread count.

#include <benchmark/benchmark.h>

#include <random>

#include "cfcolor/kernels.hpp"

using namespace cfcolor;

namespace {

const Surd kSilver(Int(-1), Int(2), Int(1));

void BM_LiminfSweep(benchmark::State& state) {
    WitnessSearch search(CFExpansion({}, {Int(2)}), Int(3));
    search.reserve(8192);
    int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto s = threads == 0 ? liminf_sweep_serial(search, 8192) : liminf_sweep_parallel(search, 8192, threads);
        benchmark::DoNotOptimize(s.holds);
    }
}

void BM_BruteForce(benchmark::State& state) {
    int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto r = threads == 0 ? brute_force_range_serial(kSilver, Int(2), 1, 20000, false)
                              : brute_force_parallel(kSilver, Int(2), 1, 20000, false, threads);
        benchmark::DoNotOptimize(r.n);
    }
}

void BM_CoverCheck(benchmark::State& state) {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<long> coord(-1000000, 1000000);
    std::vector<PrimitiveVector> pts;
    while (pts.size() < 20000) {
        Int a(coord(gen)), b(coord(gen)), g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (g == 1) pts.emplace_back(a, b);
    }
    auto cover = build_cover(Int(3), 100);
    int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto c = threads == 0 ? cover_check_serial(cover, pts) : cover_check_parallel(cover, pts, threads);
        benchmark::DoNotOptimize(c.failures);
    }
}

}  // namespace

BENCHMARK(BM_LiminfSweep)->Arg(0)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForce)->Arg(0)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverCheck)->Arg(0)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
