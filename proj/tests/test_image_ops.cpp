#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "fda/error.hpp"
#include "fda/image_ops.hpp"
#include "fda/reference.hpp"
#include "test_support.hpp"

using namespace fda;
using fda::testing::all_in_unit_range;
using fda::testing::max_abs_diff;
using fda::testing::pattern_image;
using fda::testing::random_image;

namespace {

double mean(const ImageTensor& img) {
  return std::accumulate(img.data().begin(), img.data().end(), 0.0) / static_cast<double>(img.size());
}

ImageTensor gray_image(std::size_t h, std::size_t w, std::uint64_t seed) {
  RandomState rng(seed);
  ImageTensor img(h, w, 3);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double v = rng.uniform01();
      for (std::size_t c = 0; c < 3; ++c) img.at(y, x, c) = v;
    }
  }
  return img;
}

}  // namespace

TEST_CASE("random resized crop") {
  SUBCASE("full-area square crop of a square image at native size is the identity") {
    const ImageTensor img = random_image(32, 32, 3, 1);
    RandomState rng(4);
    const ImageTensor out = random_resized_crop(img, {32, 32, 1.0, 1.0, 1.0, 1.0}, rng);
    CHECK(out == img);
  }

  SUBCASE("full-area crop resized down keeps shape and range") {
    const ImageTensor img = random_image(64, 64, 3, 2);
    RandomState rng(4);
    const CropRect rect = sample_crop(64, 64, {16, 16, 1.0, 1.0, 1.0, 1.0}, rng);
    CHECK(rect == CropRect{0, 0, 64, 64});
  }

  SUBCASE("224 output from 256 input") {
    const ImageTensor img = pattern_image(256, 256, 3);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      RandomState rng(seed);
      const ImageTensor out = random_resized_crop(img, {}, rng);
      CHECK(out.height() == 224);
      CHECK(out.width() == 224);
      CHECK(out.channels() == 3);
      CHECK(all_in_unit_range(out));
    }
  }

  SUBCASE("sampled rectangles respect the area and aspect bounds or fall back") {
    RandomState rng(99);
    const CropParams params{};
    for (int i = 0; i < 2000; ++i) {
      const auto h = static_cast<std::size_t>(rng.integer(2, 300));
      const auto w = static_cast<std::size_t>(rng.integer(2, 300));
      const CropRect r = sample_crop(h, w, params, rng);
      CHECK(r.height >= 1);
      CHECK(r.width >= 1);
      CHECK(r.top + r.height <= h);
      CHECK(r.left + r.width <= w);
    }
  }

  SUBCASE("same seed gives the same rectangle") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      RandomState a(seed), b(seed);
      CHECK(sample_crop(480, 640, {}, a) == sample_crop(480, 640, {}, b));
    }
  }

  SUBCASE("separable resize matches per-pixel bicubic") {
    const ImageTensor img = random_image(37, 53, 3, 7);
    const CropRect rect{3, 5, 29, 41};
    const ImageTensor fast = resized_crop(img, rect, 24, 31);
    const ImageTensor direct = reference::resized_crop_direct(img, rect, 24, 31);
    CHECK(max_abs_diff(fast, direct) < 1e-12);
  }

  SUBCASE("tiny inputs and single-channel inputs work") {
    RandomState rng(1);
    CHECK(random_resized_crop(random_image(2, 2, 3, 1), {8, 8}, rng).height() == 8);
    CHECK(random_resized_crop(random_image(5, 3, 1, 1), {4, 6}, rng).channels() == 1);
  }

  SUBCASE("invalid parameters") {
    RandomState rng(0);
    const ImageTensor img = random_image(8, 8, 3, 1);
    CHECK_THROWS_AS(random_resized_crop(img, {0, 8}, rng), InvalidInput);
    CHECK_THROWS_AS(random_resized_crop(img, {8, 8, 0.0, 1.0}, rng), InvalidInput);
    CHECK_THROWS_AS(random_resized_crop(img, {8, 8, 0.5, 0.2}, rng), InvalidInput);
    CHECK_THROWS_AS(random_resized_crop(img, {8, 8, 0.5, 1.2}, rng), InvalidInput);
    CHECK_THROWS_AS(random_resized_crop(img, {8, 8, 0.5, 1.0, -1.0, 1.0}, rng), InvalidInput);
    CHECK_THROWS_AS(random_resized_crop(random_image(1, 8, 3, 1), {8, 8}, rng), InvalidInput);
  }
}

TEST_CASE("color jitter") {
  SUBCASE("zero strengths are the identity") {
    const ImageTensor img = random_image(16, 16, 3, 1);
    RandomState rng(2);
    CHECK(max_abs_diff(color_jitter(img, {0, 0, 0, 0}, rng), img) < 1e-6);
  }

  SUBCASE("brightness factor 2 doubles 0.25 to 0.5") {
    const ImageTensor img(4, 4, 3, 0.25);
    JitterSample sample;
    sample.brightness = 2.0;
    const ImageTensor out = apply_color_jitter(img, sample);
    for (double v : out.data()) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("hue rotation by one third of a turn maps red to green") {
    ImageTensor img(1, 1, 3, 0.0);
    img.at(0, 0, 0) = 1.0;
    JitterSample sample;
    sample.hue = 1.0 / 3.0;
    const ImageTensor out = apply_color_jitter(img, sample);
    CHECK(out.at(0, 0, 0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(out.at(0, 0, 1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(out.at(0, 0, 2) == doctest::Approx(0.0).epsilon(1e-9));
  }

  SUBCASE("zero saturation yields gray") {
    const ImageTensor img = random_image(8, 8, 3, 3);
    JitterSample sample;
    sample.saturation = 0.0;
    const ImageTensor out = apply_color_jitter(img, sample);
    for (std::size_t y = 0; y < 8; ++y) {
      for (std::size_t x = 0; x < 8; ++x) {
        CHECK(out.at(y, x, 0) == doctest::Approx(out.at(y, x, 1)));
        CHECK(out.at(y, x, 1) == doctest::Approx(out.at(y, x, 2)));
      }
    }
  }

  SUBCASE("sampled factors stay within their strengths and the order is a permutation") {
    RandomState rng(5);
    const JitterParams p{};
    std::array<int, 4> first_counts{};
    for (int i = 0; i < 4000; ++i) {
      const JitterSample s = sample_jitter(p, rng);
      CHECK(std::abs(s.brightness - 1.0) <= 0.4);
      CHECK(std::abs(s.contrast - 1.0) <= 0.4);
      CHECK(std::abs(s.saturation - 1.0) <= 0.2);
      CHECK(std::abs(s.hue) <= 0.1);
      std::array<int, 4> seen{};
      for (JitterStep step : s.order) ++seen[static_cast<int>(step)];
      CHECK(seen == std::array<int, 4>{1, 1, 1, 1});
      ++first_counts[static_cast<int>(s.order[0])];
    }
    for (int count : first_counts) CHECK(count > 800);
  }

  SUBCASE("default strengths keep range and bound the mean shift") {
    RandomState rng(6);
    for (int i = 0; i < 300; ++i) {
      const ImageTensor img = random_image(12, 12, 3, static_cast<std::uint64_t>(i));
      const ImageTensor out = color_jitter(img, {}, rng);
      CHECK(all_in_unit_range(out));
      CHECK(std::abs(mean(out) - mean(img)) <= 0.4);
    }
  }

  SUBCASE("non-RGB input is rejected") {
    RandomState rng(0);
    CHECK_THROWS_AS(color_jitter(random_image(4, 4, 1, 1), {}, rng), InvalidInput);
    CHECK_THROWS_AS(color_jitter(random_image(4, 4, 3, 1), {0.4, 0.4, 0.2, 0.6}, rng), InvalidInput);
    CHECK_THROWS_AS(color_jitter(random_image(4, 4, 3, 1), {-0.1, 0.4, 0.2, 0.1}, rng), InvalidInput);
  }
}

TEST_CASE("grayscale") {
  CHECK(grayscale(ImageTensor(3, 3, 3, 1.0)) == ImageTensor(3, 3, 3, 1.0));

  ImageTensor red(1, 1, 3, 0.0);
  red.at(0, 0, 0) = 1.0;
  const ImageTensor g = grayscale(red);
  for (std::size_t c = 0; c < 3; ++c) CHECK(g.at(0, 0, c) == doctest::Approx(0.299).epsilon(1e-12));

  const ImageTensor already = gray_image(10, 10, 4);
  CHECK(max_abs_diff(grayscale(already), already) < 1e-6);

  const ImageTensor once = grayscale(random_image(10, 10, 3, 5));
  CHECK(max_abs_diff(grayscale(once), once) < 1e-12);

  CHECK_THROWS_AS(grayscale(random_image(4, 4, 4, 1)), InvalidInput);
}

TEST_CASE("horizontal flip") {
  const ImageTensor img = random_image(7, 9, 3, 1);
  const ImageTensor flipped = horizontal_flip(img);
  CHECK(horizontal_flip(flipped) == img);
  for (std::size_t h = 0; h < 7; ++h) {
    for (std::size_t c = 0; c < 3; ++c) CHECK(flipped.at(h, 8, c) == img.at(h, 0, c));
  }

  ImageTensor symmetric(4, 6, 1);
  for (std::size_t h = 0; h < 4; ++h) {
    for (std::size_t w = 0; w < 3; ++w) {
      symmetric.at(h, w, 0) = symmetric.at(h, 5 - w, 0) = 0.1 * static_cast<double>(h + w);
    }
  }
  CHECK(horizontal_flip(symmetric) == symmetric);
}

TEST_CASE("Gaussian blur") {
  SUBCASE("kernel is normalized and symmetric") {
    for (double sigma : {0.1, 0.5, 2.0, 10.0}) {
      const auto k = gaussian_kernel(sigma, 23);
      CHECK(std::accumulate(k.begin(), k.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
      for (std::size_t i = 0; i < 11; ++i) CHECK(k[i] == k[22 - i]);
    }
  }

  SUBCASE("constant image is unchanged") {
    const ImageTensor img(20, 30, 3, 0.37);
    CHECK(max_abs_diff(apply_gaussian_blur(img, 2.0, 23), img) < 1e-6);
  }

  SUBCASE("minimum sigma is near identity") {
    const ImageTensor img = random_image(16, 16, 3, 2);
    CHECK(max_abs_diff(apply_gaussian_blur(img, 0.1, 23), img) < 1e-6);
  }

  SUBCASE("impulse response reads back the outer-product kernel") {
    ImageTensor img(41, 41, 1, 0.0);
    img.at(20, 20, 0) = 1.0;
    const auto k = gaussian_kernel(1.5, 23);
    const ImageTensor out = apply_gaussian_blur(img, 1.5, 23);
    for (std::size_t y = 9; y < 32; ++y) {
      for (std::size_t x = 9; x < 32; ++x) {
        CHECK(out.at(y, x, 0) == doctest::Approx(k[y - 9] * k[x - 9]).epsilon(1e-12));
      }
    }
  }

  SUBCASE("mean is preserved on images larger than the kernel radius") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ImageTensor img = random_image(40, 48, 3, seed);
      CHECK(std::abs(mean(apply_gaussian_blur(img, 2.0, 23)) - mean(img)) < 1e-4);
    }
  }

  SUBCASE("separable pass matches direct 2D convolution") {
    const ImageTensor img = random_image(9, 30, 3, 3);
    CHECK(max_abs_diff(apply_gaussian_blur(img, 1.7, 23), reference::gaussian_blur_direct(img, 1.7, 23)) < 1e-12);
  }

  SUBCASE("sigma is drawn from the configured range") {
    RandomState rng(1);
    for (int i = 0; i < 1000; ++i) {
      const double s = sample_blur_sigma({}, rng);
      CHECK(s >= 0.1);
      CHECK(s < 2.0);
    }
  }

  SUBCASE("invalid kernel sizes") {
    RandomState rng(0);
    const ImageTensor img = random_image(8, 8, 3, 1);
    CHECK_THROWS_AS(gaussian_blur(img, {0.1, 2.0, 22}, rng), InvalidInput);
    CHECK_THROWS_AS(gaussian_blur(img, {0.1, 2.0, 1}, rng), InvalidInput);
    CHECK_THROWS_AS(gaussian_blur(img, {0.0, 2.0, 23}, rng), InvalidInput);
    CHECK_THROWS_AS(gaussian_blur(img, {2.0, 0.1, 23}, rng), InvalidInput);
  }
}

TEST_CASE("reflect index") {
  CHECK(reflect_index(-1, 5) == 0);
  CHECK(reflect_index(-2, 5) == 1);
  CHECK(reflect_index(5, 5) == 4);
  CHECK(reflect_index(6, 5) == 3);
  CHECK(reflect_index(-11, 1) == 0);
  for (std::ptrdiff_t i = -50; i < 50; ++i) CHECK(reflect_index(i, 3) < 3);
}

TEST_CASE("solarize") {
  CHECK(solarize(ImageTensor(4, 4, 3, 0.0), {0.5}) == ImageTensor(4, 4, 3, 0.0));
  CHECK(solarize(ImageTensor(4, 4, 3, 1.0), {0.5}) == ImageTensor(4, 4, 3, 0.0));

  const ImageTensor img = random_image(8, 8, 3, 1);
  const ImageTensor inverted = solarize(img, {0.0});
  for (std::size_t i = 0; i < img.size(); ++i) CHECK(inverted.data()[i] == 1.0 - img.data()[i]);
  CHECK(max_abs_diff(solarize(inverted, {0.0}), img) < 1e-15);

  CHECK_THROWS_AS(solarize(img, {1.5}), InvalidInput);
}

TEST_CASE("every operator keeps [0,1] images in [0,1]") {
  RandomState rng(42);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto h = static_cast<std::size_t>(rng.integer(2, 48));
    const auto w = static_cast<std::size_t>(rng.integer(2, 48));
    const ImageTensor img = random_image(h, w, 3, seed);
    CHECK(all_in_unit_range(random_resized_crop(img, {16, 16}, rng)));
    CHECK(all_in_unit_range(color_jitter(img, {0.9, 0.9, 0.9, 0.5}, rng)));
    CHECK(all_in_unit_range(grayscale(img)));
    CHECK(all_in_unit_range(horizontal_flip(img)));
    CHECK(all_in_unit_range(gaussian_blur(img, {0.1, 5.0, 23}, rng)));
    CHECK(all_in_unit_range(solarize(img, {rng.uniform01()})));
  }
}
