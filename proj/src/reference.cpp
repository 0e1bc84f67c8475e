#include "fda/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fda/spectral.hpp"

namespace fda::reference {

ImageTensor idft2_bruteforce(const Spectrum& spectrum) {
  const std::size_t height = spectrum.height();
  const std::size_t width = spectrum.full_width();
  const std::size_t period = height * width;
  ImageTensor image(height, width, spectrum.channels());
  for (std::size_t c = 0; c < spectrum.channels(); ++c) {
    const auto full = full_spectrum(spectrum, c);
    for (std::size_t h = 0; h < height; ++h) {
      for (std::size_t w = 0; w < width; ++w) {
        double sum = 0.0;
        for (std::size_t u = 0; u < height; ++u) {
          for (std::size_t v = 0; v < width; ++v) {
            const std::size_t k = ((h * u) % height * width + (w * v) % width * height) % period;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(period);
            // Real part of F e^{i angle}; summing the real part over the full
            // grid is the same as inverting the Hermitian projection.
            const Complex f = full[u * width + v];
            sum += f.real() * std::cos(angle) - f.imag() * std::sin(angle);
          }
        }
        image.at(h, w, c) = sum / static_cast<double>(period);
      }
    }
  }
  return image;
}

ImageTensor gaussian_blur_direct(const ImageTensor& image, double sigma, std::size_t kernel_size) {
  const auto taps = gaussian_kernel(sigma, kernel_size);
  const auto radius = static_cast<std::ptrdiff_t>(kernel_size / 2);
  ImageTensor out(image.height(), image.width(), image.channels());
  for (std::size_t h = 0; h < image.height(); ++h) {
    for (std::size_t w = 0; w < image.width(); ++w) {
      for (std::size_t c = 0; c < image.channels(); ++c) {
        double acc = 0.0;
        for (std::ptrdiff_t dy = -radius; dy <= radius; ++dy) {
          const std::size_t y = reflect_index(static_cast<std::ptrdiff_t>(h) + dy, image.height());
          for (std::ptrdiff_t dx = -radius; dx <= radius; ++dx) {
            const std::size_t x = reflect_index(static_cast<std::ptrdiff_t>(w) + dx, image.width());
            acc += taps[static_cast<std::size_t>(dy + radius)] * taps[static_cast<std::size_t>(dx + radius)] *
                   image.at(y, x, c);
          }
        }
        out.at(h, w, c) = std::clamp(acc, 0.0, 1.0);
      }
    }
  }
  return out;
}

namespace {

double keys(double x) {
  const double a = -0.5;
  x = std::fabs(x);
  if (x <= 1.0) return (a + 2.0) * x * x * x - (a + 3.0) * x * x + 1.0;
  if (x < 2.0) return a * x * x * x - 5.0 * a * x * x + 8.0 * a * x - 4.0 * a;
  return 0.0;
}

}  // namespace

ImageTensor resized_crop_direct(const ImageTensor& image, const CropRect& rect, std::size_t out_height,
                                std::size_t out_width) {
  ImageTensor out(out_height, out_width, image.channels());
  const double sy = static_cast<double>(rect.height) / static_cast<double>(out_height);
  const double sx = static_cast<double>(rect.width) / static_cast<double>(out_width);
  for (std::size_t y = 0; y < out_height; ++y) {
    const double src_y = (static_cast<double>(y) + 0.5) * sy - 0.5;
    const double fy = std::floor(src_y);
    for (std::size_t x = 0; x < out_width; ++x) {
      const double src_x = (static_cast<double>(x) + 0.5) * sx - 0.5;
      const double fx = std::floor(src_x);
      for (std::size_t c = 0; c < image.channels(); ++c) {
        double acc = 0.0;
        for (int j = -1; j <= 2; ++j) {
          const auto yy = std::clamp<std::int64_t>(static_cast<std::int64_t>(fy) + j, 0,
                                                   static_cast<std::int64_t>(rect.height) - 1);
          double row = 0.0;
          for (int i = -1; i <= 2; ++i) {
            const auto xx = std::clamp<std::int64_t>(static_cast<std::int64_t>(fx) + i, 0,
                                                     static_cast<std::int64_t>(rect.width) - 1);
            row += keys(src_x - (fx + i)) * image.at(rect.top + static_cast<std::size_t>(yy),
                                                     rect.left + static_cast<std::size_t>(xx), c);
          }
          acc += keys(src_y - (fy + j)) * row;
        }
        out.at(y, x, c) = std::clamp(acc, 0.0, 1.0);
      }
    }
  }
  return out;
}

std::vector<double> gaussian_mixture_mask_direct(std::size_t height, std::size_t half_width,
                                                 const GaussianMixtureSample& sample) {
  std::vector<double> mask(height * half_width);
  for (std::size_t u = 0; u < height; ++u) {
    for (std::size_t v = 0; v < half_width; ++v) {
      double best = 0.0;
      for (const auto& g : sample.components) {
        const double du = static_cast<double>(u) - g.center_u;
        const double dv = static_cast<double>(v) - g.center_v;
        best = std::max(best, std::exp(-(du * du / (2.0 * g.sigma_u * g.sigma_u) +
                                         dv * dv / (2.0 * g.sigma_v * g.sigma_v))));
      }
      best = std::min(1.0, best);
      mask[u * half_width + v] = sample.invert ? 1.0 - best : best;
    }
  }
  return mask;
}

}  // namespace fda::reference
