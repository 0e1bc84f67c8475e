#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "fda/error.hpp"
#include "fda/fda_ops.hpp"
#include "fda/reference.hpp"
#include "fda/spectral.hpp"
#include "test_support.hpp"

using namespace fda;
using fda::testing::max_abs_diff;
using fda::testing::pattern_image;
using fda::testing::random_image;

namespace {

Spectrum natural_spectrum(std::uint64_t seed = 1) { return forward_rfft2(pattern_image(32, 40, seed)); }

bool finite_image(const ImageTensor& img) {
  return std::all_of(img.data().begin(), img.data().end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

TEST_CASE("amplitude rescale") {
  const Spectrum s = natural_spectrum();

  SUBCASE("m = n = 1 is the exact identity") {
    RandomState rng(3);
    CHECK(amplitude_rescale(s, {1.0, 1.0}, rng) == s);
  }

  SUBCASE("m = n = 2 doubles amplitude and keeps phase") {
    RandomState rng(3);
    const PolarSpectrum before = decompose(s);
    const PolarSpectrum after = decompose(amplitude_rescale(s, {2.0, 2.0}, rng));
    for (std::size_t i = 0; i < before.amplitude.size(); ++i) {
      CHECK(std::abs(after.amplitude[i] - 2.0 * before.amplitude[i]) < 1e-6);
      if (before.amplitude[i] > 0.0) CHECK(std::abs(after.phase[i] - before.phase[i]) < 1e-6);
    }
  }

  SUBCASE("default range bounds every amplitude bin-wise, phase untouched") {
    RandomState rng(11);
    const PolarSpectrum before = decompose(s);
    const PolarSpectrum after = decompose(amplitude_rescale(s, {}, rng));
    for (std::size_t i = 0; i < before.amplitude.size(); ++i) {
      const double a = before.amplitude[i];
      CHECK(after.amplitude[i] >= 0.8 * a - 1e-9 * a);
      CHECK(after.amplitude[i] <= 1.75 * a + 1e-9 * a);
      if (a > 0.0) CHECK(std::abs(after.phase[i] - before.phase[i]) < 1e-6);
    }
  }

  SUBCASE("noise differs across channels") {
    const auto noise = amplitude_noise(3, 100, {0.8, 1.75, 99});
    CHECK(!std::equal(noise.begin(), noise.begin() + 100, noise.begin() + 100));
    for (double p : noise) {
      CHECK(p >= 0.8);
      CHECK(p < 1.75);
    }
  }

  SUBCASE("invalid parameters") {
    RandomState rng(0);
    CHECK_THROWS_AS(amplitude_rescale(s, {0.0, 1.0}, rng), InvalidInput);
    CHECK_THROWS_AS(amplitude_rescale(s, {2.0, 1.0}, rng), InvalidInput);
    CHECK_THROWS_AS(amplitude_rescale(s, {-1.0, 1.0}, rng), InvalidInput);
  }
}

TEST_CASE("phase shift") {
  const Spectrum s = natural_spectrum(2);

  SUBCASE("collapsed range is the identity") {
    RandomState rng(5);
    CHECK(max_abs_diff(phase_shift(s, {0.0, 0.0}, rng), s) < 1e-6);
  }

  SUBCASE("half turn negates every bin") {
    const Spectrum out = apply_phase_shift(s, PhaseShiftSample{std::numbers::pi});
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(out.data()[i] + s.data()[i]) < 1e-6);
  }

  SUBCASE("default range preserves amplitude and shifts every bin by one constant") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RandomState rng(seed);
      const PhaseShiftSample sample = sample_phase_shift({}, rng);
      CHECK(std::abs(sample.shift) >= 0.4);
      CHECK(std::abs(sample.shift) < 0.7);
      const Spectrum out = apply_phase_shift(s, sample);
      const PolarSpectrum before = decompose(s);
      const PolarSpectrum after = decompose(out);
      for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(std::abs(after.amplitude[i] - before.amplitude[i]) < 1e-6);
        if (before.amplitude[i] > 1e-9) {
          const double d = std::remainder(after.phase[i] - before.phase[i] - sample.shift, 2.0 * std::numbers::pi);
          CHECK(std::abs(d) < 1e-6);
        }
      }
    }
  }

  SUBCASE("both signs occur") {
    bool positive = false, negative = false;
    RandomState rng(17);
    for (int i = 0; i < 64; ++i) {
      const double shift = sample_phase_shift({}, rng).shift;
      positive |= shift > 0;
      negative |= shift < 0;
    }
    CHECK(positive);
    CHECK(negative);
  }

  SUBCASE("invalid parameters") {
    RandomState rng(0);
    CHECK_THROWS_AS(phase_shift(s, {0.7, 0.4}, rng), InvalidInput);
    CHECK_THROWS_AS(phase_shift(s, {-0.1, 0.4}, rng), InvalidInput);
  }
}

TEST_CASE("random frequency mask") {
  const Spectrum s = natural_spectrum(3);

  SUBCASE("k = 0 keeps every bin") {
    RandomState rng(1);
    CHECK(random_frequency_mask(s, {0.0, 0.0}, rng) == s);
  }

  SUBCASE("k = 1 keeps only DC and the image becomes its channel means") {
    const ImageTensor img = pattern_image(16, 20, 4);
    RandomState rng(1);
    const ImageTensor out = inverse_rfft2(random_frequency_mask(forward_rfft2(img), {1.0, 1.0}, rng));
    for (std::size_t c = 0; c < 3; ++c) {
      double mean = 0.0;
      for (std::size_t h = 0; h < 16; ++h) {
        for (std::size_t w = 0; w < 20; ++w) mean += img.at(h, w, c);
      }
      mean /= 320.0;
      for (std::size_t h = 0; h < 16; ++h) {
        for (std::size_t w = 0; w < 20; ++w) CHECK(out.at(h, w, c) == doctest::Approx(mean).epsilon(1e-9));
      }
    }
  }

  SUBCASE("zero count is exact, DC survives, mask shared by channels") {
    RandomState rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
      const FrequencyMaskSample sample = sample_frequency_mask({0.0, 1.0}, rng);
      const auto mask = frequency_mask(s.height(), s.half_width(), sample);
      const std::size_t zeros = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 0));
      CHECK(mask[0] == 1);
      CHECK(zeros == static_cast<std::size_t>(std::llround(sample.fraction * (s.plane_size() - 1.0))));
      CHECK(zeros == frequency_mask_zero_count(s.plane_size(), sample.fraction));

      const Spectrum out = apply_frequency_mask(s, sample);
      for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < mask.size(); ++i) {
          CHECK(out.plane(c)[i] == (mask[i] == 0 ? Complex{} : s.plane(c)[i]));
        }
      }
    }
  }

  SUBCASE("invalid parameters") {
    RandomState rng(0);
    CHECK_THROWS_AS(random_frequency_mask(s, {0.5, 0.1}, rng), InvalidInput);
    CHECK_THROWS_AS(random_frequency_mask(s, {0.0, 1.5}, rng), InvalidInput);
  }
}

TEST_CASE("Gaussian mixture mask") {
  const Spectrum s = natural_spectrum(4);

  SUBCASE("a flat component is the identity") {
    const GaussianMixtureSample flat{{GaussianComponent{0, 0, 1e9, 1e9}}, false};
    CHECK(max_abs_diff(apply_gaussian_mixture(s, flat), s) < 1e-4);
  }

  SUBCASE("a narrow component at DC is a low-pass filter") {
    const ImageTensor img = random_image(32, 32, 3, 8);
    const GaussianMixtureSample narrow{{GaussianComponent{0, 0, 2.0, 2.0}}, false};
    const ImageTensor blurred = inverse_rfft2(apply_gaussian_mixture(forward_rfft2(img), narrow));
    // Neighbour differences shrink under a low-pass filter.
    auto roughness = [](const ImageTensor& x) {
      double r = 0.0;
      for (std::size_t h = 0; h < x.height(); ++h) {
        for (std::size_t w = 1; w < x.width(); ++w) r += std::abs(x.at(h, w, 0) - x.at(h, w - 1, 0));
      }
      return r;
    };
    CHECK(roughness(blurred) < 0.5 * roughness(img));
  }

  SUBCASE("default sampling: mask is 1 at every origin and within (0, 1]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RandomState rng(seed);
      const auto sample = sample_gaussian_mixture({}, 224, 113, rng);
      REQUIRE(sample.components.size() == 20);
      const auto mask = gaussian_mixture_mask(224, 113, sample);
      for (const auto& g : sample.components) {
        CHECK(g.sigma_u >= 10.0);
        CHECK(g.sigma_u < 15.0);
        CHECK(mask[static_cast<std::size_t>(g.center_u) * 113 + static_cast<std::size_t>(g.center_v)] ==
              doctest::Approx(1.0).epsilon(1e-6));
      }
      for (double m : mask) {
        CHECK(m > 0.0);
        CHECK(m <= 1.0);
      }
    }
  }

  SUBCASE("inverted mask is the complement") {
    RandomState rng(3);
    auto sample = sample_gaussian_mixture({}, 16, 9, rng);
    const auto pass = gaussian_mixture_mask(16, 9, sample);
    sample.invert = true;
    const auto notch = gaussian_mixture_mask(16, 9, sample);
    for (std::size_t i = 0; i < pass.size(); ++i) CHECK(pass[i] + notch[i] == doctest::Approx(1.0));
  }

  SUBCASE("separable evaluation matches the literal formula") {
    RandomState rng(12);
    const auto sample = sample_gaussian_mixture({5, 2.0, 6.0}, 40, 21, rng);
    const auto fast = gaussian_mixture_mask(40, 21, sample);
    const auto direct = reference::gaussian_mixture_mask_direct(40, 21, sample);
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == doctest::Approx(direct[i]).epsilon(1e-12));
  }

  SUBCASE("invalid parameters") {
    RandomState rng(0);
    CHECK_THROWS_AS(gaussian_mixture_mask(s, {0, 10.0, 15.0}, rng), InvalidInput);
    CHECK_THROWS_AS(gaussian_mixture_mask(s, {20, 15.0, 10.0}, rng), InvalidInput);
    CHECK_THROWS_AS(gaussian_mixture_mask(s, {20, 0.0, 10.0}, rng), InvalidInput);
  }
}

TEST_CASE("every operator followed by the inverse gives a finite real image") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    RandomState dims(seed);
    const auto h = static_cast<std::size_t>(dims.integer(2, 40));
    const auto w = static_cast<std::size_t>(dims.integer(2, 40));
    const Spectrum s = forward_rfft2(random_image(h, w, 3, seed));
    RandomState rng(seed + 77);
    CHECK(finite_image(inverse_rfft2(amplitude_rescale(s, {0.01, 100.0}, rng))));
    CHECK(finite_image(inverse_rfft2(phase_shift(s, {0.0, 10.0}, rng))));
    CHECK(finite_image(inverse_rfft2(random_frequency_mask(s, {0.0, 1.0}, rng))));
    CHECK(finite_image(inverse_rfft2(gaussian_mixture_mask(s, {3, 0.1, 50.0}, rng))));
  }
}

TEST_CASE("identical (spectrum, params, seed) give bit-identical output") {
  const Spectrum s = natural_spectrum(6);
  for (std::uint64_t seed : {0ULL, 1ULL, 0xdeadbeefULL}) {
    RandomState a(seed), b(seed);
    CHECK(amplitude_rescale(s, {}, a) == amplitude_rescale(s, {}, b));
    CHECK(phase_shift(s, {}, a) == phase_shift(s, {}, b));
    CHECK(random_frequency_mask(s, {}, a) == random_frequency_mask(s, {}, b));
    CHECK(gaussian_mixture_mask(s, {}, a) == gaussian_mixture_mask(s, {}, b));
  }
}
