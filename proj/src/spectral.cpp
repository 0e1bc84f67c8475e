#include "fda/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fda/error.hpp"
#include "fda/fft.hpp"

namespace fda {

Spectrum::Spectrum(std::size_t height, std::size_t full_width, std::size_t channels)
    : height_(height),
      full_width_(full_width),
      half_width_(full_width / 2 + 1),
      channels_(channels),
      data_(height * (full_width / 2 + 1) * channels) {}

namespace {

// Transforms run kLanes sequences at a time in a split re/im layout with the
// lane index innermost; 8 lanes fill whole cache lines and keep the power-of-
// two strides that alias in cache out of the working set.
constexpr std::size_t kLanes = 8;

struct LaneBuffers {
  explicit LaneBuffers(std::size_t length)
      : re(length * kLanes), im(length * kLanes), work_re(length * kLanes), work_im(length * kLanes) {}
  std::vector<double> re, im, work_re, work_im;
};

std::size_t lane_blocks(std::size_t n) { return (n + kLanes - 1) / kLanes; }

// Transforms columns [v0, v0 + count) of one half-spectrum plane in place.
void column_block(std::span<Complex> plane, std::size_t height, std::size_t half, std::size_t v0,
                  const FftPlan& plan, bool inverse, LaneBuffers& b) {
  const std::size_t count = std::min(kLanes, half - v0);
  for (std::size_t u = 0; u < height; ++u) {
    const Complex* row = plane.data() + u * half + v0;
    for (std::size_t j = 0; j < count; ++j) {
      b.re[u * kLanes + j] = row[j].real();
      b.im[u * kLanes + j] = row[j].imag();
    }
  }
  if (inverse) {
    plan.backward_batch(b.re.data(), b.im.data(), kLanes, count, b.work_re.data(), b.work_im.data());
  } else {
    plan.forward_batch(b.re.data(), b.im.data(), kLanes, count, b.work_re.data(), b.work_im.data());
  }
  for (std::size_t u = 0; u < height; ++u) {
    Complex* row = plane.data() + u * half + v0;
    for (std::size_t j = 0; j < count; ++j) row[j] = {b.re[u * kLanes + j], b.im[u * kLanes + j]};
  }
}

}  // namespace

Spectrum forward_rfft2(const ImageTensor& image) {
  const std::size_t height = image.height();
  const std::size_t width = image.width();
  const std::size_t channels = image.channels();
  require(height >= 2 && width >= 2, "forward_rfft2: image must be at least 2x2");

  Spectrum spectrum(height, width, channels);
  const std::size_t half = spectrum.half_width();
  const FftPlan row_plan(width);
  const FftPlan col_plan(height);

  // Two real rows ride in one complex FFT, z = a + i b, and each job takes
  // kLanes such pairs.
  const std::size_t row_pairs = (height + 1) / 2;
  const std::size_t row_groups = lane_blocks(row_pairs);
  const auto row_jobs = static_cast<std::ptrdiff_t>(channels * row_groups);
  const std::size_t col_groups = lane_blocks(half);
  const auto col_jobs = static_cast<std::ptrdiff_t>(channels * col_groups);

#pragma omp parallel
  {
    LaneBuffers b(std::max(width, height));

#pragma omp for schedule(static)
    for (std::ptrdiff_t job = 0; job < row_jobs; ++job) {
      const std::size_t c = static_cast<std::size_t>(job) / row_groups;
      const std::size_t p0 = (static_cast<std::size_t>(job) % row_groups) * kLanes;
      const std::size_t count = std::min(kLanes, row_pairs - p0);
      for (std::size_t j = 0; j < count; ++j) {
        const std::size_t h0 = 2 * (p0 + j);
        const bool paired = h0 + 1 < height;
        for (std::size_t w = 0; w < width; ++w) {
          b.re[w * kLanes + j] = image.at(h0, w, c);
          b.im[w * kLanes + j] = paired ? image.at(h0 + 1, w, c) : 0.0;
        }
      }
      row_plan.forward_batch(b.re.data(), b.im.data(), kLanes, count, b.work_re.data(), b.work_im.data());
      auto plane = spectrum.plane(c);
      for (std::size_t j = 0; j < count; ++j) {
        const std::size_t h0 = 2 * (p0 + j);
        const bool paired = h0 + 1 < height;
        for (std::size_t k = 0; k < half; ++k) {
          const std::size_t m = (width - k) % width;
          const Complex zk{b.re[k * kLanes + j], b.im[k * kLanes + j]};
          const Complex zn{b.re[m * kLanes + j], -b.im[m * kLanes + j]};
          plane[h0 * half + k] = 0.5 * (zk + zn);
          if (paired) {
            const Complex d = zk - zn;
            plane[(h0 + 1) * half + k] = {0.5 * d.imag(), -0.5 * d.real()};
          }
        }
      }
    }

#pragma omp for schedule(static)
    for (std::ptrdiff_t job = 0; job < col_jobs; ++job) {
      const std::size_t c = static_cast<std::size_t>(job) / col_groups;
      const std::size_t v0 = (static_cast<std::size_t>(job) % col_groups) * kLanes;
      column_block(spectrum.plane(c), height, half, v0, col_plan, false, b);
    }
  }
  return spectrum;
}

ImageTensor inverse_rfft2(const Spectrum& spectrum) {
  const std::size_t height = spectrum.height();
  const std::size_t width = spectrum.full_width();
  const std::size_t channels = spectrum.channels();
  const std::size_t half = spectrum.half_width();
  require(height >= 2 && width >= 2 && channels >= 1, "inverse_rfft2: degenerate spectrum shape");
  require(half == width / 2 + 1 && spectrum.size() == height * half * channels,
          "inverse_rfft2: half-spectrum shape inconsistent with full width");

  Spectrum work = spectrum;
  ImageTensor image(height, width, channels);
  const FftPlan row_plan(width);
  const FftPlan col_plan(height);
  const double scale = 1.0 / static_cast<double>(height * width);
  const std::size_t row_pairs = (height + 1) / 2;
  const std::size_t row_groups = lane_blocks(row_pairs);
  const auto row_jobs = static_cast<std::ptrdiff_t>(channels * row_groups);
  const std::size_t col_groups = lane_blocks(half);
  const auto col_jobs = static_cast<std::ptrdiff_t>(channels * col_groups);
  const bool even_width = width % 2 == 0;

#pragma omp parallel
  {
    LaneBuffers b(std::max(width, height));

#pragma omp for schedule(static)
    for (std::ptrdiff_t job = 0; job < col_jobs; ++job) {
      const std::size_t c = static_cast<std::size_t>(job) / col_groups;
      const std::size_t v0 = (static_cast<std::size_t>(job) % col_groups) * kLanes;
      column_block(work.plane(c), height, half, v0, col_plan, true, b);
    }

#pragma omp for schedule(static)
    for (std::ptrdiff_t job = 0; job < row_jobs; ++job) {
      const std::size_t c = static_cast<std::size_t>(job) / row_groups;
      const std::size_t p0 = (static_cast<std::size_t>(job) % row_groups) * kLanes;
      const std::size_t count = std::min(kLanes, row_pairs - p0);
      const auto plane = std::as_const(work).plane(c);
      // Hermitian completion of each row; self-conjugate bins keep only
      // their real part so each row's inverse is exactly real.
      auto bin = [&](std::size_t h, std::size_t k) -> Complex {
        if (k == 0 || (even_width && k == width / 2)) return {plane[h * half + k].real(), 0.0};
        if (k < half) return plane[h * half + k];
        return std::conj(plane[h * half + (width - k)]);
      };
      for (std::size_t j = 0; j < count; ++j) {
        const std::size_t h0 = 2 * (p0 + j);
        const bool paired = h0 + 1 < height;
        for (std::size_t k = 0; k < width; ++k) {
          const Complex a = bin(h0, k);
          const Complex z = paired ? bin(h0 + 1, k) : Complex{};
          b.re[k * kLanes + j] = a.real() - z.imag();
          b.im[k * kLanes + j] = a.imag() + z.real();
        }
      }
      row_plan.backward_batch(b.re.data(), b.im.data(), kLanes, count, b.work_re.data(), b.work_im.data());
      for (std::size_t j = 0; j < count; ++j) {
        const std::size_t h0 = 2 * (p0 + j);
        const bool paired = h0 + 1 < height;
        for (std::size_t w = 0; w < width; ++w) {
          image.at(h0, w, c) = b.re[w * kLanes + j] * scale;
          if (paired) image.at(h0 + 1, w, c) = b.im[w * kLanes + j] * scale;
        }
      }
    }
  }
  return image;
}

PolarSpectrum decompose(const Spectrum& spectrum) {
  PolarSpectrum polar{spectrum.height(), spectrum.full_width(), spectrum.channels(), {}, {}};
  const auto bins = spectrum.data();
  polar.amplitude.resize(bins.size());
  polar.phase.resize(bins.size());
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const double re = bins[i].real();
    const double im = bins[i].imag();
    polar.amplitude[i] = std::sqrt(re * re + im * im);
    if (re == 0.0 && im == 0.0) {
      polar.phase[i] = 0.0;
    } else {
      const double p = std::atan2(im, re);
      polar.phase[i] = p == -std::numbers::pi ? std::numbers::pi : p;
    }
  }
  return polar;
}

Spectrum recompose(const PolarSpectrum& polar) {
  Spectrum spectrum(polar.height, polar.full_width, polar.channels);
  require(polar.amplitude.size() == spectrum.size() && polar.phase.size() == spectrum.size(),
          "recompose: amplitude/phase planes do not match the spectrum shape");
  auto bins = spectrum.data();
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const double a = polar.amplitude[i];
    require(a >= 0.0, "recompose: amplitude must be non-negative");
    bins[i] = {a * std::cos(polar.phase[i]), a * std::sin(polar.phase[i])};
  }
  return spectrum;
}

Spectrum dft2_bruteforce(const ImageTensor& image) {
  const std::size_t height = image.height();
  const std::size_t width = image.width();
  Spectrum spectrum(height, width, image.channels());
  const std::size_t period = height * width;

  // exp(-2 pi i (h u / H + w v / W)) = exp(-2 pi i ((h u mod H) W + (w v mod W) H) / (H W))
  std::vector<Complex> roots(period);
  for (std::size_t k = 0; k < period; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(period);
    roots[k] = std::polar(1.0, angle);
  }

  for (std::size_t c = 0; c < image.channels(); ++c) {
    for (std::size_t u = 0; u < height; ++u) {
      for (std::size_t v = 0; v < spectrum.half_width(); ++v) {
        Complex sum{};
        for (std::size_t h = 0; h < height; ++h) {
          for (std::size_t w = 0; w < width; ++w) {
            const std::size_t k = ((h * u) % height * width + (w * v) % width * height) % period;
            sum += roots[k] * image.at(h, w, c);
          }
        }
        spectrum.at(u, v, c) = sum;
      }
    }
  }
  return spectrum;
}

std::vector<Complex> full_spectrum(const Spectrum& spectrum, std::size_t channel) {
  const std::size_t height = spectrum.height();
  const std::size_t width = spectrum.full_width();
  const std::size_t half = spectrum.half_width();
  require(channel < spectrum.channels(), "full_spectrum: channel out of range");
  std::vector<Complex> full(height * width);
  for (std::size_t u = 0; u < height; ++u) {
    for (std::size_t v = 0; v < width; ++v) {
      full[u * width + v] = v < half ? spectrum.at(u, v, channel)
                                     : std::conj(spectrum.at((height - u) % height, width - v, channel));
    }
  }
  return full;
}

}  // namespace fda
