#include "fda/image_ops.hpp"

#include <algorithm>
#include <cmath>

#include "fda/error.hpp"

namespace fda {

void CropParams::validate() const {
  require(out_height >= 1 && out_width >= 1, "crop: output size must be positive");
  require(out_height <= 16384 && out_width <= 16384, "crop: output size exceeds 16384");
  require(std::isfinite(area_low) && std::isfinite(area_high) && std::isfinite(aspect_low) &&
              std::isfinite(aspect_high),
          "crop: area and aspect bounds must be finite");
  require(area_low > 0.0 && area_low <= area_high && area_high <= 1.0,
          "crop: require 0 < area_low <= area_high <= 1");
  require(aspect_low > 0.0 && aspect_low <= aspect_high,
          "crop: require 0 < aspect_low <= aspect_high");
}

void JitterParams::validate() const {
  require(std::isfinite(brightness) && std::isfinite(contrast) && std::isfinite(saturation) &&
              std::isfinite(hue),
          "color_jitter: strengths must be finite");
  require(brightness >= 0.0 && contrast >= 0.0 && saturation >= 0.0 && hue >= 0.0,
          "color_jitter: strengths must be non-negative");
  require(hue <= 0.5, "color_jitter: hue strength must not exceed 0.5");
}

void BlurParams::validate() const {
  require(kernel_size >= 3 && kernel_size % 2 == 1, "gaussian_blur: kernel size must be odd and >= 3");
  require(kernel_size <= 1001, "gaussian_blur: kernel size exceeds 1001");
  require(std::isfinite(sigma_low) && std::isfinite(sigma_high), "gaussian_blur: sigma bounds must be finite");
  require(sigma_low > 0.0 && sigma_low <= sigma_high,
          "gaussian_blur: require 0 < sigma_low <= sigma_high");
}

void SolarizeParams::validate() const {
  require(threshold >= 0.0 && threshold <= 1.0, "solarize: threshold must lie in [0, 1]");
}

std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) noexcept {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return m < static_cast<std::ptrdiff_t>(n) ? static_cast<std::size_t>(m)
                                             : static_cast<std::size_t>(period - 1 - m);
}

// ---------------------------------------------------------------------------
// Random resized crop

CropRect sample_crop(std::size_t height, std::size_t width, const CropParams& params,
                     RandomState& rng) {
  params.validate();
  const double area = static_cast<double>(height) * static_cast<double>(width);
  const double log_low = std::log(params.aspect_low);
  const double log_high = std::log(params.aspect_high);
  for (int attempt = 0; attempt < 10; ++attempt) {
    const double target = area * rng.uniform(params.area_low, params.area_high);
    const double aspect = std::exp(rng.uniform(log_low, log_high));
    const auto w = static_cast<std::int64_t>(std::llround(std::sqrt(target * aspect)));
    const auto h = static_cast<std::int64_t>(std::llround(std::sqrt(target / aspect)));
    if (w > 0 && h > 0 && w <= static_cast<std::int64_t>(width) &&
        h <= static_cast<std::int64_t>(height)) {
      const auto top = rng.integer(0, static_cast<std::int64_t>(height) - h);
      const auto left = rng.integer(0, static_cast<std::int64_t>(width) - w);
      return {static_cast<std::size_t>(top), static_cast<std::size_t>(left),
              static_cast<std::size_t>(h), static_cast<std::size_t>(w)};
    }
  }

  const double ratio = static_cast<double>(width) / static_cast<double>(height);
  std::size_t w = width;
  std::size_t h = height;
  if (ratio < params.aspect_low) {
    h = static_cast<std::size_t>(std::llround(static_cast<double>(width) / params.aspect_low));
  } else if (ratio > params.aspect_high) {
    w = static_cast<std::size_t>(std::llround(static_cast<double>(height) * params.aspect_high));
  }
  h = std::clamp<std::size_t>(h, 1, height);
  w = std::clamp<std::size_t>(w, 1, width);
  return {(height - h) / 2, (width - w) / 2, h, w};
}

namespace {

double keys_cubic(double x) noexcept {
  constexpr double a = -0.5;
  x = std::abs(x);
  if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
  return 0.0;
}

struct Taps {
  std::vector<std::size_t> index;  // 4 per output sample
  std::vector<double> weight;
};

// Source taps for resampling [offset, offset + extent) onto `out` samples.
Taps resample_taps(std::size_t offset, std::size_t extent, std::size_t out) {
  Taps taps;
  taps.index.resize(4 * out);
  taps.weight.resize(4 * out);
  const double scale = static_cast<double>(extent) / static_cast<double>(out);
  for (std::size_t i = 0; i < out; ++i) {
    const double src = (static_cast<double>(i) + 0.5) * scale - 0.5;
    const double base = std::floor(src);
    const double t = src - base;
    for (int k = 0; k < 4; ++k) {
      const auto pos = static_cast<std::int64_t>(base) + k - 1;
      const auto clamped = std::clamp<std::int64_t>(pos, 0, static_cast<std::int64_t>(extent) - 1);
      taps.index[4 * i + k] = offset + static_cast<std::size_t>(clamped);
      taps.weight[4 * i + k] = keys_cubic(t - static_cast<double>(k - 1));
    }
  }
  return taps;
}

}  // namespace

ImageTensor resized_crop(const ImageTensor& image, const CropRect& rect, std::size_t out_height,
                         std::size_t out_width) {
  require(rect.height >= 1 && rect.width >= 1 && rect.top + rect.height <= image.height() &&
              rect.left + rect.width <= image.width(),
          "resized_crop: rectangle outside image");
  require(out_height >= 1 && out_width >= 1, "resized_crop: output size must be positive");
  const std::size_t channels = image.channels();
  const Taps cols = resample_taps(rect.left, rect.width, out_width);
  const Taps rows = resample_taps(rect.top, rect.height, out_height);

  // Horizontal pass over every source row, then vertical.
  ImageTensor horizontal(image.height(), out_width, channels);
  const auto src_rows = static_cast<std::ptrdiff_t>(rect.height);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < src_rows; ++r) {
    const std::size_t h = rect.top + static_cast<std::size_t>(r);
    for (std::size_t x = 0; x < out_width; ++x) {
      for (std::size_t c = 0; c < channels; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += cols.weight[4 * x + k] * image.at(h, cols.index[4 * x + k], c);
        horizontal.at(h, x, c) = acc;
      }
    }
  }

  ImageTensor out(out_height, out_width, channels);
  const auto dst_rows = static_cast<std::ptrdiff_t>(out_height);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t yy = 0; yy < dst_rows; ++yy) {
    const auto y = static_cast<std::size_t>(yy);
    for (std::size_t x = 0; x < out_width; ++x) {
      for (std::size_t c = 0; c < channels; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += rows.weight[4 * y + k] * horizontal.at(rows.index[4 * y + k], x, c);
        out.at(y, x, c) = std::clamp(acc, 0.0, 1.0);
      }
    }
  }
  return out;
}

ImageTensor random_resized_crop(const ImageTensor& image, const CropParams& params,
                                RandomState& rng) {
  require(image.height() >= 2 && image.width() >= 2, "random_resized_crop: image must be at least 2x2");
  const CropRect rect = sample_crop(image.height(), image.width(), params, rng);
  return resized_crop(image, rect, params.out_height, params.out_width);
}

// ---------------------------------------------------------------------------
// Color jitter

namespace {

constexpr double kLumaR = 0.299;
constexpr double kLumaB = 0.114;

void require_rgb(const ImageTensor& image, const char* op) {
  require(image.channels() == 3, std::string(op) + ": expected a 3-channel image");
}

// Weights 0.299 / 0.587 / 0.114, written relative to green so that neutral
// pixels (and white in particular) map to themselves exactly.
double luma(const double* px) noexcept {
  return px[1] + kLumaR * (px[0] - px[1]) + kLumaB * (px[2] - px[1]);
}

void blend_towards(std::span<double> data, double factor, auto&& other) {
  for (std::size_t i = 0; i < data.size(); i += 3) {
    const double g = other(&data[i]);
    for (std::size_t c = 0; c < 3; ++c) {
      data[i + c] = std::clamp(factor * data[i + c] + (1.0 - factor) * g, 0.0, 1.0);
    }
  }
}

void rotate_hue(double* px, double offset) noexcept {
  const double r = px[0], g = px[1], b = px[2];
  const double max = std::max({r, g, b});
  const double min = std::min({r, g, b});
  const double delta = max - min;
  if (delta <= 0.0) return;  // achromatic: hue undefined, nothing to rotate

  double hue;
  if (max == r) {
    hue = (g - b) / delta;
  } else if (max == g) {
    hue = 2.0 + (b - r) / delta;
  } else {
    hue = 4.0 + (r - g) / delta;
  }
  // hue / 6 lies in [-1/6, 1) and |offset| <= 0.5, so one fold suffices.
  hue = hue / 6.0 + offset;
  if (hue < 0.0) hue += 1.0;
  if (hue >= 1.0) hue -= 1.0;

  // With s = delta / max: v (1 - s) = max - delta, and likewise for q, t.
  const double value = max;
  const double h6 = hue * 6.0;
  // h6 >= 0, so truncation is floor; h6 can round up to exactly 6.
  const int sector = std::min(static_cast<int>(h6), 5);
  const double f = h6 - sector;
  const double p = max - delta;
  const double q = max - delta * f;
  const double t = max - delta * (1.0 - f);
  switch (sector) {
    case 0: px[0] = value; px[1] = t; px[2] = p; break;
    case 1: px[0] = q; px[1] = value; px[2] = p; break;
    case 2: px[0] = p; px[1] = value; px[2] = t; break;
    case 3: px[0] = p; px[1] = q; px[2] = value; break;
    case 4: px[0] = t; px[1] = p; px[2] = value; break;
    default: px[0] = value; px[1] = p; px[2] = q; break;
  }
}

}  // namespace

JitterSample sample_jitter(const JitterParams& params, RandomState& rng) {
  params.validate();
  JitterSample s;
  s.brightness = rng.uniform(std::max(0.0, 1.0 - params.brightness), 1.0 + params.brightness);
  s.contrast = rng.uniform(std::max(0.0, 1.0 - params.contrast), 1.0 + params.contrast);
  s.saturation = rng.uniform(std::max(0.0, 1.0 - params.saturation), 1.0 + params.saturation);
  s.hue = params.hue > 0.0 ? rng.uniform(-params.hue, params.hue) : 0.0;
  for (std::size_t i = s.order.size() - 1; i > 0; --i) {
    std::swap(s.order[i], s.order[rng.below(i + 1)]);
  }
  return s;
}

ImageTensor apply_color_jitter(const ImageTensor& image, const JitterSample& sample) {
  require_rgb(image, "color_jitter");
  ImageTensor out = image;
  auto data = out.data();
  for (const JitterStep step : sample.order) {
    switch (step) {
      case JitterStep::brightness:
        if (sample.brightness == 1.0) break;
        for (double& v : data) v = std::clamp(v * sample.brightness, 0.0, 1.0);
        break;
      case JitterStep::contrast: {
        if (sample.contrast == 1.0) break;
        double mean = 0.0;
        for (std::size_t i = 0; i < data.size(); i += 3) mean += luma(&data[i]);
        mean /= static_cast<double>(data.size() / 3);
        blend_towards(data, sample.contrast, [mean](const double*) { return mean; });
        break;
      }
      case JitterStep::saturation:
        if (sample.saturation == 1.0) break;
        blend_towards(data, sample.saturation, [](const double* px) { return luma(px); });
        break;
      case JitterStep::hue:
        if (sample.hue == 0.0) break;
        for (std::size_t i = 0; i < data.size(); i += 3) rotate_hue(&data[i], sample.hue);
        break;
    }
  }
  out.clamp01();
  return out;
}

ImageTensor color_jitter(const ImageTensor& image, const JitterParams& params, RandomState& rng) {
  require_rgb(image, "color_jitter");
  return apply_color_jitter(image, sample_jitter(params, rng));
}

ImageTensor grayscale(const ImageTensor& image) {
  require_rgb(image, "grayscale");
  ImageTensor out = image;
  auto data = out.data();
  for (std::size_t i = 0; i < data.size(); i += 3) {
    const double y = luma(&data[i]);
    data[i] = data[i + 1] = data[i + 2] = y;
  }
  return out;
}

ImageTensor horizontal_flip(const ImageTensor& image) {
  ImageTensor out(image.height(), image.width(), image.channels());
  const std::size_t w_last = image.width() - 1;
  for (std::size_t h = 0; h < image.height(); ++h) {
    for (std::size_t w = 0; w < image.width(); ++w) {
      for (std::size_t c = 0; c < image.channels(); ++c) out.at(h, w_last - w, c) = image.at(h, w, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gaussian blur

std::vector<double> gaussian_kernel(double sigma, std::size_t size) {
  require(size >= 1 && size % 2 == 1, "gaussian_kernel: size must be odd");
  require(sigma > 0.0 && std::isfinite(sigma), "gaussian_kernel: sigma must be positive");
  const auto radius = static_cast<std::ptrdiff_t>(size / 2);
  std::vector<double> taps(size);
  double total = 0.0;
  for (std::ptrdiff_t i = -radius; i <= radius; ++i) {
    const double x = static_cast<double>(i);
    taps[static_cast<std::size_t>(i + radius)] = std::exp(-x * x / (2.0 * sigma * sigma));
    total += taps[static_cast<std::size_t>(i + radius)];
  }
  for (double& t : taps) t /= total;
  return taps;
}

double sample_blur_sigma(const BlurParams& params, RandomState& rng) {
  params.validate();
  return rng.uniform(params.sigma_low, params.sigma_high);
}

namespace {

// dst[i] = sum over k of taps[k] * sources[k][i], taps in ascending order.
// Accumulating a block across every tap before storing keeps the partial
// sums in registers; the per-element summation order is the plain one.
[[gnu::target_clones("avx2", "default")]] void accumulate_taps(const double* taps, const double* const* sources,
                                                               std::size_t tap_count, std::size_t n, double* dst) {
  constexpr std::size_t kBlock = 16;
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    double acc[kBlock] = {};
    for (std::size_t k = 0; k < tap_count; ++k) {
      const double t = taps[k];
      const double* src = sources[k] + i;
      for (std::size_t j = 0; j < kBlock; ++j) acc[j] += t * src[j];
    }
    for (std::size_t j = 0; j < kBlock; ++j) dst[i + j] = acc[j];
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < tap_count; ++k) acc += taps[k] * sources[k][i];
    dst[i] = acc;
  }
}

}  // namespace

ImageTensor apply_gaussian_blur(const ImageTensor& image, double sigma, std::size_t kernel_size) {
  require(kernel_size >= 3 && kernel_size % 2 == 1, "gaussian_blur: kernel size must be odd and >= 3");
  const auto taps = gaussian_kernel(sigma, kernel_size);
  const auto radius = static_cast<std::ptrdiff_t>(kernel_size / 2);
  const std::size_t height = image.height();
  const std::size_t width = image.width();
  const std::size_t channels = image.channels();

  // Taps that underflowed to exactly zero contribute nothing; skip them.
  std::size_t first = 0;
  while (taps[first] == 0.0) ++first;
  const std::size_t last = kernel_size - 1 - first;

  const std::size_t row_stride = width * channels;
  ImageTensor horizontal(height, width, channels);
  ImageTensor out(height, width, channels);
  const auto rows = static_cast<std::ptrdiff_t>(height);

#pragma omp parallel
  {
    // One source row with `radius` mirrored pixels on each side.
    std::vector<double> padded((width + 2 * static_cast<std::size_t>(radius)) * channels);
    std::vector<const double*> sources(kernel_size);

#pragma omp for schedule(static)
    for (std::ptrdiff_t hh = 0; hh < rows; ++hh) {
      const double* src = image.data().data() + static_cast<std::size_t>(hh) * row_stride;
      for (std::ptrdiff_t x = -radius; x < static_cast<std::ptrdiff_t>(width) + radius; ++x) {
        const std::size_t from = reflect_index(x, width) * channels;
        const std::size_t to = static_cast<std::size_t>(x + radius) * channels;
        for (std::size_t c = 0; c < channels; ++c) padded[to + c] = src[from + c];
      }
      for (std::size_t k = first; k <= last; ++k) sources[k - first] = padded.data() + k * channels;
      accumulate_taps(taps.data() + first, sources.data(), last - first + 1, row_stride,
                      horizontal.data().data() + static_cast<std::size_t>(hh) * row_stride);
    }

#pragma omp for schedule(static)
    for (std::ptrdiff_t hh = 0; hh < rows; ++hh) {
      for (std::size_t k = first; k <= last; ++k) {
        const std::size_t src_row = reflect_index(hh + static_cast<std::ptrdiff_t>(k) - radius, height);
        sources[k - first] = horizontal.data().data() + src_row * row_stride;
      }
      double* dst = out.data().data() + static_cast<std::size_t>(hh) * row_stride;
      accumulate_taps(taps.data() + first, sources.data(), last - first + 1, row_stride, dst);
      for (std::size_t i = 0; i < row_stride; ++i) dst[i] = std::clamp(dst[i], 0.0, 1.0);
    }
  }
  return out;
}

ImageTensor gaussian_blur(const ImageTensor& image, const BlurParams& params, RandomState& rng) {
  params.validate();
  return apply_gaussian_blur(image, sample_blur_sigma(params, rng), params.kernel_size);
}

ImageTensor solarize(const ImageTensor& image, const SolarizeParams& params) {
  params.validate();
  ImageTensor out = image;
  for (double& v : out.data()) {
    if (v >= params.threshold) v = 1.0 - v;
  }
  return out;
}

}  // namespace fda
