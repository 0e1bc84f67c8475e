// Serial references against the OpenMP kernels, plus end-to-end pipeline
// throughput. Kernel benchmarks take the OpenMP thread count as an argument.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "fda/pipeline.hpp"
#include "fda/random.hpp"
#include "fda/reference.hpp"
#include "fda/spectral.hpp"

namespace {

fda::ImageTensor noise_image(std::size_t height, std::size_t width, std::uint64_t seed) {
  fda::ImageTensor image(height, width, 3);
  fda::RandomState rng(seed);
  for (double& x : image.data()) x = rng.uniform(0.0, 1.0);
  return image;
}

void set_threads(const benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(1))); }

void BM_BlurDirect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto image = noise_image(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fda::reference::gaussian_blur_direct(image, 1.5, 23));
}

void BM_BlurSeparable(benchmark::State& state) {
  set_threads(state);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto image = noise_image(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fda::apply_gaussian_blur(image, 1.5, 23));
}

const fda::CropRect kRect{17, 9, 180, 200};

void BM_CropDirect(benchmark::State& state) {
  const auto image = noise_image(256, 256, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fda::reference::resized_crop_direct(image, kRect, 224, 224));
}

void BM_CropSeparable(benchmark::State& state) {
  set_threads(state);
  const auto image = noise_image(256, 256, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fda::resized_crop(image, kRect, 224, 224));
}

void BM_InverseBruteforce(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spectrum = fda::forward_rfft2(noise_image(n, n, 3));
  for (auto _ : state) benchmark::DoNotOptimize(fda::reference::idft2_bruteforce(spectrum));
}

void BM_InverseFft(benchmark::State& state) {
  set_threads(state);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spectrum = fda::forward_rfft2(noise_image(n, n, 3));
  for (auto _ : state) benchmark::DoNotOptimize(fda::inverse_rfft2(spectrum));
}

void BM_ForwardFft(benchmark::State& state) {
  set_threads(state);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto image = noise_image(n, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(fda::forward_rfft2(image));
}

void BM_MixtureMaskDirect(benchmark::State& state) {
  fda::GaussianMixtureSample sample{{{0, 0, 12, 9}, {40, 30, 6, 6}, {200, 10, 10, 14}}, false};
  for (auto _ : state) benchmark::DoNotOptimize(fda::reference::gaussian_mixture_mask_direct(224, 113, sample));
}

void BM_MixtureMaskSeparable(benchmark::State& state) {
  omp_set_num_threads(1);
  fda::GaussianMixtureSample sample{{{0, 0, 12, 9}, {40, 30, 6, 6}, {200, 10, 10, 14}}, false};
  for (auto _ : state) benchmark::DoNotOptimize(fda::gaussian_mixture_mask(224, 113, sample));
}

// One left view of the default recipe per iteration on a 256 x 256 source.
void BM_LeftViewPipeline(benchmark::State& state) {
  set_threads(state);
  const auto image = noise_image(256, 256, 5);
  const fda::ViewConfig config = fda::default_left_view();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(fda::augment_view(image, config, fda::RandomState(++seed)));
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK(BM_BlurDirect)->Arg(64)->Arg(224)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlurSeparable)->ArgsProduct({{64, 224}, {1, 2, 4, 8}})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CropDirect)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CropSeparable)->ArgsProduct({{224}, {1, 2, 4, 8}})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InverseBruteforce)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InverseFft)->ArgsProduct({{16, 32, 224}, {1, 2, 4, 8}})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForwardFft)->ArgsProduct({{224}, {1, 2, 4, 8}})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MixtureMaskDirect)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MixtureMaskSeparable)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LeftViewPipeline)->ArgsProduct({{0}, {1, 2, 4, 8}})->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
