// Benchmarks in two families: the serial reference engine against the
// OpenMP engine for each hot operator, and the inversion pathways against
// each other at a fixed problem size.
#include <benchmark/benchmark.h>

#include "wft/engine.hpp"
#include "wft/fixtures.hpp"
#include "wft/fourier.hpp"
#include "wft/grid.hpp"
#include "wft/inversion.hpp"
#include "wft/stft.hpp"
#include "wft/window.hpp"

namespace {

using namespace wft;

const UniformGrid kGridSmall = UniformGrid::symmetric(16.0, 513);
const UniformGrid kGridMid = UniformGrid::symmetric(16.0, 1025);
const UniformGrid kGridLarge = UniformGrid::symmetric(16.0, 2048);

void bm_forward_ft(benchmark::State& state, Engine engine) {
    const SampledSignal f = make_fixture("chirp", kGridMid);
    const UniformGrid freq = default_frequency_grid(f.grid);
    for (auto _ : state) {
        SampledSignal out = forward_ft(f, freq, engine);
        benchmark::DoNotOptimize(out.values.data());
    }
}

void bm_stft(benchmark::State& state, Engine engine) {
    const SampledSignal f = make_fixture("chirp", kGridMid);
    const Window g = make_window("hann", 2.0, 0.0);
    const UniformGrid lattice = UniformGrid::symmetric(8.0, 17);
    for (auto _ : state) {
        StftMatrix out = forward_stft(f, g, lattice, lattice, engine);
        benchmark::DoNotOptimize(out.values.data());
    }
}

void bm_kernel_compact(benchmark::State& state, Engine engine) {
    const SampledSignal f = make_fixture("chirp", kGridMid);
    const Window g = make_window("hann", 1.0, 0.0);
    for (auto _ : state) {
        Reconstruction rec = invert_kernel(f, g, TruncationPair{4.0, 4.0}, engine);
        benchmark::DoNotOptimize(rec.signal.values.data());
    }
}

void bm_kernel_smooth(benchmark::State& state, Engine engine) {
    const SampledSignal f = make_fixture("chirp", kGridMid);
    const Window g = make_window("gaussian", 1.0, 0.0);
    for (auto _ : state) {
        Reconstruction rec = invert_kernel(f, g, TruncationPair{4.0, 4.0}, engine);
        benchmark::DoNotOptimize(rec.signal.values.data());
    }
}

void bm_multiplier(benchmark::State& state, Engine engine) {
    const SampledSignal f = make_fixture("chirp", kGridMid);
    const Window g = make_window("gaussian", 1.0, 0.0);
    for (auto _ : state) {
        Reconstruction rec = invert_multiplier(f, g, TruncationPair{4.0, 4.0}, engine);
        benchmark::DoNotOptimize(rec.signal.values.data());
    }
}

void bm_modulation(benchmark::State& state, Engine engine) {
    const SampledSignal f = make_fixture("gaussian", kGridSmall);
    const SampledSignal fhat = forward_ft(f, default_frequency_grid(f.grid));
    const Window g = make_window("gaussian", 1.0, 0.0);
    const UniformGrid nodes = modulation_grid_for_signal(fhat, 4.0, 1e-6);
    for (auto _ : state) {
        Reconstruction rec = invert_modulation(f, g, 4.0, nodes, engine);
        benchmark::DoNotOptimize(rec.signal.values.data());
    }
}

void bm_double_integral(benchmark::State& state, Engine engine) {
    const SampledSignal f = make_fixture("gaussian", kGridMid);
    const Window g = make_window("gaussian", 1.0, 0.0);
    const UniformGrid lattice = UniformGrid::symmetric(16.0, 65);
    const StftMatrix samples = forward_stft(f, g, lattice, lattice);
    for (auto _ : state) {
        Reconstruction rec = invert_double_integral(samples, g, f.grid, engine);
        benchmark::DoNotOptimize(rec.signal.values.data());
    }
}

// Pathway family: one gaussian/gaussian problem at N = 2048, OpenMP engine.
// The double-integral row excludes the transform sampling, which is shared
// setup for that pathway.

void bm_pathway_multiplier(benchmark::State& state) {
    const SampledSignal f = make_fixture("gaussian", kGridLarge);
    const Window g = make_window("gaussian", 1.0, 0.0);
    for (auto _ : state) {
        Reconstruction rec = invert_multiplier(f, g, TruncationPair{8.0, 8.0});
        benchmark::DoNotOptimize(rec.signal.values.data());
    }
}

void bm_pathway_kernel(benchmark::State& state) {
    const SampledSignal f = make_fixture("gaussian", kGridLarge);
    const Window g = make_window("gaussian", 1.0, 0.0);
    for (auto _ : state) {
        Reconstruction rec = invert_kernel(f, g, TruncationPair{8.0, 8.0});
        benchmark::DoNotOptimize(rec.signal.values.data());
    }
}

void bm_pathway_modulation(benchmark::State& state) {
    const SampledSignal f = make_fixture("gaussian", kGridLarge);
    const SampledSignal fhat = forward_ft(f, default_frequency_grid(f.grid));
    const Window g = make_window("gaussian", 1.0, 0.0);
    const UniformGrid nodes = modulation_grid_for_signal(fhat, 8.0, 1e-6);
    for (auto _ : state) {
        Reconstruction rec = invert_modulation(f, g, 8.0, nodes);
        benchmark::DoNotOptimize(rec.signal.values.data());
    }
}

void bm_pathway_double_integral(benchmark::State& state) {
    const SampledSignal f = make_fixture("gaussian", kGridLarge);
    const Window g = make_window("gaussian", 1.0, 0.0);
    const UniformGrid lattice = UniformGrid::symmetric(16.0, 257);
    const StftMatrix samples = forward_stft(f, g, lattice, lattice);
    for (auto _ : state) {
        Reconstruction rec = invert_double_integral(samples, g, f.grid);
        benchmark::DoNotOptimize(rec.signal.values.data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(bm_forward_ft, reference, Engine::reference)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_forward_ft, openmp, Engine::fast)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_stft, reference, Engine::reference)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_stft, openmp, Engine::fast)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_kernel_compact, reference, Engine::reference)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_kernel_compact, openmp, Engine::fast)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_kernel_smooth, reference, Engine::reference)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_kernel_smooth, openmp, Engine::fast)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_multiplier, reference, Engine::reference)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_multiplier, openmp, Engine::fast)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_modulation, reference, Engine::reference)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_modulation, openmp, Engine::fast)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_double_integral, reference, Engine::reference)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_double_integral, openmp, Engine::fast)->Unit(benchmark::kMillisecond);

BENCHMARK(bm_pathway_multiplier)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_pathway_kernel)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_pathway_modulation)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_pathway_double_integral)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
