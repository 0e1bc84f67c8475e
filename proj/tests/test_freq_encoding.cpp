#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fda/error.hpp"
#include "fda/freq_encoding.hpp"
#include "fda/spectral.hpp"
#include "test_support.hpp"

using namespace fda;
using fda::testing::all_in_unit_range;
using fda::testing::random_image;
using fda::testing::random_spectrum;

namespace {

// Channel extremes of an encoded image.
std::pair<double, double> channel_range(const ImageTensor& img, std::size_t c) {
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = c; i < img.size(); i += img.channels()) {
    lo = std::min(lo, img.data()[i]);
    hi = std::max(hi, img.data()[i]);
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("224x224 image encodes to a 224x224x3 image in [0,1] with full per-channel range") {
  const FrequencyImage f = encode_frequency_image(forward_rfft2(random_image(224, 224, 3, 1)));
  CHECK(f.image.height() == 224);
  CHECK(f.image.width() == 224);
  CHECK(f.image.channels() == 3);
  CHECK(all_in_unit_range(f.image));
  REQUIRE(f.scaling.has_value());
  for (std::size_t c = 0; c < 3; ++c) {
    const auto [lo, hi] = channel_range(f.image, c);
    CHECK(lo == 0.0);
    CHECK(hi == 1.0);
  }
}

TEST_CASE("columns interleave real and imaginary parts before rescale") {
  const Spectrum s = random_spectrum(6, 8, 3, 2);
  const FrequencyImage f = encode_frequency_image(s);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto [lo, hi] = (*f.scaling)[c];
    for (std::size_t u = 0; u < 6; ++u) {
      for (std::size_t v = 0; v < 4; ++v) {
        CHECK(f.image.at(u, 2 * v, c) == doctest::Approx((s.at(u, v, c).real() - lo) / (hi - lo)));
        CHECK(f.image.at(u, 2 * v + 1, c) == doctest::Approx((s.at(u, v, c).imag() - lo) / (hi - lo)));
      }
    }
  }
}

TEST_CASE("constant image: DC real part is the single extreme, everything else one value") {
  const FrequencyImage f = encode_frequency_image(forward_rfft2(ImageTensor(16, 16, 3, 0.6)));
  for (std::size_t c = 0; c < 3; ++c) {
    CHECK(f.image.at(0, 0, c) == 1.0);
    for (std::size_t u = 0; u < 16; ++u) {
      for (std::size_t w = 0; w < 16; ++w) {
        if (u == 0 && w == 0) continue;
        CHECK(f.image.at(u, w, c) == 0.0);
      }
    }
  }
}

TEST_CASE("zero spectrum encodes to zeros and decodes back to zeros") {
  const FrequencyImage f = encode_frequency_image(Spectrum(8, 10, 3));
  CHECK(f.image == ImageTensor(8, 10, 3, 0.0));
  CHECK(decode_frequency_image(f) == Spectrum(8, 10, 3));
}

TEST_CASE("decode inverts encode on every retained column") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomState dims(seed);
    const auto h = static_cast<std::size_t>(dims.integer(2, 40));
    const auto w = static_cast<std::size_t>(2 * dims.integer(1, 20));
    const Spectrum s = seed % 2 ? random_spectrum(h, w, 3, seed) : forward_rfft2(random_image(h, w, 3, seed));
    const Spectrum back = decode_frequency_image(encode_frequency_image(s));
    REQUIRE(back.half_width() == s.half_width());
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t u = 0; u < h; ++u) {
        for (std::size_t v = 0; v < w / 2; ++v) CHECK(std::abs(back.at(u, v, c) - s.at(u, v, c)) < 1e-6);
        CHECK(back.at(u, w / 2, c) == Complex{});
      }
    }
  }
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(encode_frequency_image(Spectrum(8, 9, 3)), InvalidInput);
  CHECK_THROWS_AS(encode_frequency_image(Spectrum(8, 8, 1)), InvalidInput);
  FrequencyImage f = encode_frequency_image(random_spectrum(4, 4, 3, 1));
  f.scaling.reset();
  CHECK_THROWS_AS(decode_frequency_image(f), InvalidInput);
}
