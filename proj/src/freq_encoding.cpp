#include "fda/freq_encoding.hpp"

#include <algorithm>
#include <limits>

#include "fda/error.hpp"

namespace fda {

FrequencyImage encode_frequency_image(const Spectrum& spectrum) {
  require(spectrum.channels() == 3, "encode_frequency_image: expected a 3-channel spectrum");
  require(spectrum.full_width() % 2 == 0, "encode_frequency_image: full width must be even");
  const std::size_t height = spectrum.height();
  const std::size_t width = spectrum.full_width();

  ImageTensor image(height, width, 3);
  std::vector<std::pair<double, double>> scaling(3);
  for (std::size_t c = 0; c < 3; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t u = 0; u < height; ++u) {
      for (std::size_t v = 0; v < width / 2; ++v) {
        const Complex b = spectrum.at(u, v, c);
        image.at(u, 2 * v, c) = b.real();
        image.at(u, 2 * v + 1, c) = b.imag();
        lo = std::min({lo, b.real(), b.imag()});
        hi = std::max({hi, b.real(), b.imag()});
      }
    }
    scaling[c] = {lo, hi};
    const double range = hi - lo;
    for (std::size_t u = 0; u < height; ++u) {
      for (std::size_t w = 0; w < width; ++w) {
        double& x = image.at(u, w, c);
        x = range > 0.0 ? std::clamp((x - lo) / range, 0.0, 1.0) : 0.0;
      }
    }
  }
  return {std::move(image), std::move(scaling)};
}

Spectrum decode_frequency_image(const FrequencyImage& frequency_image) {
  require(frequency_image.scaling.has_value(), "decode_frequency_image: missing scaling metadata");
  const ImageTensor& image = frequency_image.image;
  const auto& scaling = *frequency_image.scaling;
  require(image.channels() == 3 && scaling.size() == 3,
          "decode_frequency_image: expected 3 channels with matching metadata");
  require(image.width() % 2 == 0 && image.width() >= 2 && image.height() >= 1,
          "decode_frequency_image: width must be even");

  const std::size_t height = image.height();
  const std::size_t width = image.width();
  Spectrum spectrum(height, width, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto [lo, hi] = scaling[c];
    const double range = hi - lo;
    auto restore = [&](double x) { return range > 0.0 ? lo + x * range : lo; };
    for (std::size_t u = 0; u < height; ++u) {
      for (std::size_t v = 0; v < width / 2; ++v) {
        spectrum.at(u, v, c) = {restore(image.at(u, 2 * v, c)), restore(image.at(u, 2 * v + 1, c))};
      }
    }
  }
  return spectrum;
}

}  // namespace fda
