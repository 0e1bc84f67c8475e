#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include <omp.h>

#include "fda/reference.hpp"
#include "fda/spectral.hpp"
#include "test_support.hpp"

// The OpenMP kernels against their serial references, at several thread counts.
using namespace fda;
using fda::testing::max_abs_diff;
using fda::testing::random_image;

namespace {

struct Threads {
  int saved = omp_get_max_threads();
  explicit Threads(int n) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("inverse transform matches the literal inverse DFT") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomState dims(seed);
    const auto h = static_cast<std::size_t>(dims.integer(2, 14));
    const auto w = static_cast<std::size_t>(dims.integer(2, 14));
    const Spectrum s = fda::testing::random_spectrum(h, w, 3, seed);
    CHECK(max_abs_diff(inverse_rfft2(s), reference::idft2_bruteforce(s)) < 1e-9);
  }
}

TEST_CASE("kernels are bit-identical across thread counts and match the references") {
  const ImageTensor img = random_image(70, 90, 3, 3);
  const CropRect rect{5, 7, 60, 77};
  const ImageTensor blur_ref = reference::gaussian_blur_direct(img, 1.3, 23);
  const ImageTensor crop_ref = reference::resized_crop_direct(img, rect, 50, 64);
  std::optional<ImageTensor> blur_first, crop_first;
  std::optional<Spectrum> fft_first;
  for (int n : {1, 2, 3, 8}) {
    Threads t(n);
    const ImageTensor blur = apply_gaussian_blur(img, 1.3, 23);
    const ImageTensor crop = resized_crop(img, rect, 50, 64);
    const Spectrum fft = forward_rfft2(img);
    CHECK(max_abs_diff(blur, blur_ref) < 1e-12);
    CHECK(max_abs_diff(crop, crop_ref) < 1e-12);
    if (!blur_first) {
      blur_first = blur;
      crop_first = crop;
      fft_first = fft;
    }
    CHECK(blur == *blur_first);
    CHECK(crop == *crop_first);
    CHECK(fft == *fft_first);
  }
}
