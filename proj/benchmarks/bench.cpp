#include <benchmark/benchmark.h>

#include <random>

#include "flatcone/chains.hpp"
#include "flatcone/geodesic.hpp"
#include "flatcone/saddle.hpp"
#include "flatcone/spectrum.hpp"
#include "flatcone/surface_io.hpp"

using namespace flatcone;

namespace {

FlatConeSurface fixture(const char* name) { return load_surface(std::string(FLATCONE_DATA_DIR) + "/" + name); }

void BM_TraceOctagon(benchmark::State& state) {
    const auto s = fixture("octagon.json");
    const double length = static_cast<double>(state.range(0));
    for (auto _ : state) {
        // an irrational direction avoids the cone point for a long time
        benchmark::DoNotOptimize(trace(s, DirectedPoint{0, {0.01, 0.02}, 0.3}, length));
    }
}
BENCHMARK(BM_TraceOctagon)->Arg(10)->Arg(100)->Arg(1000);

void BM_SaddlesOctagon(benchmark::State& state) {
    const auto s = fixture("octagon.json");
    const double bound = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_saddle_connections(s, bound));
}
BENCHMARK(BM_SaddlesOctagon)->Arg(2)->Arg(4)->Arg(6);

void BM_SpectrumOctagonWords(benchmark::State& state) {
    const auto s = fixture("octagon.json");
    std::mt19937 rng(5);
    std::vector<CurveWord> words;
    for (int i = 0; i < 100; ++i) {
        CurveWord w;
        const int len = 1 + static_cast<int>(rng() % static_cast<unsigned>(state.range(0)));
        for (int k = 0; k < len; ++k) w.crossings.push_back({{0, static_cast<int>(rng() % 8)}, 1});
        words.push_back(w);
    }
    for (auto _ : state) benchmark::DoNotOptimize(marked_spectrum(s, words));
}
BENCHMARK(BM_SpectrumOctagonWords)->Arg(4)->Arg(12);

void BM_SweepCounts(benchmark::State& state) {
    const Chain c = Chain::real(2.0 * 3.141592653589793 * 1.4142135623730951);
    for (auto _ : state) benchmark::DoNotOptimize(sweep_counts(c, state.range(0)));
}
BENCHMARK(BM_SweepCounts)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
