#include <benchmark/benchmark.h>

#include "omnideblur/blind.hpp"
#include "omnideblur/convolve.hpp"
#include "omnideblur/gabor.hpp"
#include "omnideblur/kernel_solver.hpp"
#include "omnideblur/latent_solver.hpp"
#include "omnideblur/nonblind.hpp"
#include "omnideblur/quality.hpp"
#include "omnideblur/rng.hpp"
#include "omnideblur/synth.hpp"

namespace {

using namespace omnideblur;

RasterImage random_image(int w, int h, std::uint64_t seed) {
  SeededRng rng(seed);
  RasterImage img(w, h);
  for (double& v : img.data()) v = rng.uniform01();
  return img;
}

void BM_Convolve2D(benchmark::State& state) {
  const int n = int(state.range(0));
  RasterImage img = random_image(n, n, 1);
  BlurKernel k = make_gaussian_kernel(9, 1.5);
  for (auto _ : state) {
    RasterImage out = convolve2d(img, k);
    benchmark::DoNotOptimize(out.data().data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Convolve2D)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_GaborExtract(benchmark::State& state) {
  RasterImage img = random_image(128, 128, 2);
  GaborBank bank = make_bank({0, 45, 90, 135}, GaborParams{});
  for (auto _ : state) {
    GradientStack g = extract_gradients(img, bank);
    benchmark::DoNotOptimize(g.channels.data());
  }
}
BENCHMARK(BM_GaborExtract);

void BM_FistaSolve(benchmark::State& state) {
  RasterImage img = random_image(96, 96, 3);
  GaborBank bank = make_bank({0, 45, 90, 135}, GaborParams{});
  GradientStack g = extract_gradients(img, bank);
  BlurKernel k = make_gaussian_kernel(9, 1.5);
  SolverConfig cfg;
  for (auto _ : state) {
    GradientStack x = fista_solve(g, k, cfg, g);
    benchmark::DoNotOptimize(x.channels.data());
  }
}
BENCHMARK(BM_FistaSolve);

void BM_IrlsSolve(benchmark::State& state) {
  RasterImage img = random_image(96, 96, 4);
  GaborBank bank = make_bank({0, 45, 90, 135}, GaborParams{});
  GradientStack x = extract_gradients(img, bank);
  GradientStack g = extract_gradients(synthesize(img, make_gaussian_kernel(9, 1.5), {}), bank);
  SolverConfig cfg;
  BlurKernel k0 = BlurKernel::delta(9);
  for (auto _ : state) {
    BlurKernel k = irls_solve(x, g, k0, cfg);
    benchmark::DoNotOptimize(k.weights().data());
  }
}
BENCHMARK(BM_IrlsSolve);

void BM_HaarDefocus(benchmark::State& state) {
  RasterImage img = random_image(512, 512, 5);
  for (auto _ : state) {
    DefocusScore s = defocus_score(img);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_HaarDefocus);

void BM_TikhonovDeconvolve(benchmark::State& state) {
  RasterImage img = random_image(256, 256, 6);
  BlurKernel k = make_gaussian_kernel(9, 1.5);
  RasterImage y = synthesize(img, k, {});
  NonblindConfig cfg;
  for (auto _ : state) {
    RasterImage x = deconvolve(y, k, cfg);
    benchmark::DoNotOptimize(x.data().data());
  }
}
BENCHMARK(BM_TikhonovDeconvolve);

}  // namespace

BENCHMARK_MAIN();
