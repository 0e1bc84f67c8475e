#include "fda/fda_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fda/error.hpp"

namespace fda {

void AmplitudeRescaleParams::validate() const {
  require(std::isfinite(low) && std::isfinite(high), "amplitude_rescale: bounds must be finite");
  require(low > 0.0, "amplitude_rescale: lower bound m must be positive");
  require(low <= high, "amplitude_rescale: require m <= n");
}

void PhaseShiftParams::validate() const {
  require(std::isfinite(low) && std::isfinite(high), "phase_shift: bounds must be finite");
  require(low >= 0.0, "phase_shift: lower bound p must be non-negative");
  require(low <= high, "phase_shift: require p <= q");
}

void FrequencyMaskParams::validate() const {
  require(std::isfinite(low) && std::isfinite(high), "frequency_mask: bounds must be finite");
  require(low >= 0.0 && high <= 1.0, "frequency_mask: k range must lie in [0, 1]");
  require(low <= high, "frequency_mask: require k_low <= k_high");
}

void GaussianMixtureParams::validate() const {
  require(components >= 1, "gaussian_mixture: need at least one component");
  require(components <= 4096, "gaussian_mixture: more than 4096 components");
  require(std::isfinite(sigma_low) && std::isfinite(sigma_high),
          "gaussian_mixture: sigma bounds must be finite");
  require(sigma_low > 0.0, "gaussian_mixture: sigma lower bound must be positive");
  require(sigma_low <= sigma_high, "gaussian_mixture: require sigma_low <= sigma_high");
}

AmplitudeRescaleSample sample_amplitude_rescale(const AmplitudeRescaleParams& params,
                                                RandomState& rng) {
  params.validate();
  return {params.low, params.high, rng.next_u64()};
}

PhaseShiftSample sample_phase_shift(const PhaseShiftParams& params, RandomState& rng) {
  params.validate();
  const double theta = rng.uniform(params.low, params.high);
  const bool negative = rng.bernoulli(0.5);
  return {negative ? -theta : theta};
}

FrequencyMaskSample sample_frequency_mask(const FrequencyMaskParams& params, RandomState& rng) {
  params.validate();
  const double k = rng.uniform(params.low, params.high);
  return {k, rng.next_u64()};
}

GaussianMixtureSample sample_gaussian_mixture(const GaussianMixtureParams& params,
                                              std::size_t height, std::size_t half_width,
                                              RandomState& rng) {
  params.validate();
  require(height >= 1 && half_width >= 1, "gaussian_mixture: empty spectrum grid");
  GaussianMixtureSample sample;
  sample.invert = params.invert;
  sample.components.reserve(params.components);
  for (std::size_t j = 0; j < params.components; ++j) {
    GaussianComponent g;
    g.center_u = static_cast<double>(rng.integer(0, static_cast<std::int64_t>(height) - 1));
    g.center_v = static_cast<double>(rng.integer(0, static_cast<std::int64_t>(half_width) - 1));
    g.sigma_u = rng.uniform(params.sigma_low, params.sigma_high);
    g.sigma_v = rng.uniform(params.sigma_low, params.sigma_high);
    sample.components.push_back(g);
  }
  return sample;
}

std::vector<double> amplitude_noise(std::size_t channels, std::size_t plane_size,
                                    const AmplitudeRescaleSample& sample) {
  std::vector<double> noise(channels * plane_size);
  const RandomState base(sample.noise_seed);
  const auto n_channels = static_cast<std::ptrdiff_t>(channels);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < n_channels; ++c) {
    RandomState stream = base.split(static_cast<std::uint64_t>(c));
    double* plane = noise.data() + static_cast<std::size_t>(c) * plane_size;
    for (std::size_t i = 0; i < plane_size; ++i) plane[i] = stream.uniform(sample.low, sample.high);
  }
  return noise;
}

Spectrum apply_amplitude_rescale(const Spectrum& spectrum, const AmplitudeRescaleSample& sample) {
  require(sample.low > 0.0 && sample.low <= sample.high,
          "amplitude_rescale: require 0 < m <= n");
  Spectrum out = spectrum;
  const auto noise = amplitude_noise(spectrum.channels(), spectrum.plane_size(), sample);
  auto bins = out.data();
  // Scaling the complex bin by a positive real scales the amplitude and
  // leaves atan2(imag, real) unchanged.
  for (std::size_t i = 0; i < bins.size(); ++i) bins[i] *= noise[i];
  return out;
}

Spectrum apply_phase_shift(const Spectrum& spectrum, const PhaseShiftSample& sample) {
  require(std::isfinite(sample.shift), "phase_shift: shift must be finite");
  Spectrum out = spectrum;
  const double cr = std::cos(sample.shift);
  const double ci = std::sin(sample.shift);
  for (Complex& b : out.data()) {
    b = {b.real() * cr - b.imag() * ci, b.real() * ci + b.imag() * cr};
  }
  return out;
}

std::size_t frequency_mask_zero_count(std::size_t bins, double fraction) {
  require(bins >= 1, "frequency_mask: empty grid");
  require(fraction >= 0.0 && fraction <= 1.0, "frequency_mask: fraction must lie in [0, 1]");
  return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(bins - 1)));
}

std::vector<std::uint8_t> frequency_mask(std::size_t height, std::size_t half_width,
                                         const FrequencyMaskSample& sample) {
  const std::size_t bins = height * half_width;
  const std::size_t zeros = frequency_mask_zero_count(bins, sample.fraction);
  std::vector<std::uint8_t> mask(bins, 1);

  // Partial Fisher-Yates over every bin except the DC bin at index 0.
  std::vector<std::size_t> candidates(bins - 1);
  std::iota(candidates.begin(), candidates.end(), std::size_t{1});
  RandomState rng(sample.mask_seed);
  for (std::size_t i = 0; i < zeros; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
    mask[candidates[i]] = 0;
  }
  return mask;
}

Spectrum apply_frequency_mask(const Spectrum& spectrum, const FrequencyMaskSample& sample) {
  const auto mask = frequency_mask(spectrum.height(), spectrum.half_width(), sample);
  Spectrum out = spectrum;
  for (std::size_t c = 0; c < out.channels(); ++c) {
    auto plane = out.plane(c);
    for (std::size_t i = 0; i < plane.size(); ++i) {
      if (mask[i] == 0) plane[i] = Complex{};
    }
  }
  return out;
}

std::vector<double> gaussian_mixture_mask(std::size_t height, std::size_t half_width,
                                          const GaussianMixtureSample& sample) {
  require(!sample.components.empty(), "gaussian_mixture: need at least one component");
  for (const auto& g : sample.components) {
    require(g.sigma_u > 0.0 && g.sigma_v > 0.0, "gaussian_mixture: sigma must be positive");
  }

  // Each component is separable: exp(-(a + b)) = exp(-a) exp(-b).
  const std::size_t n = sample.components.size();
  std::vector<double> along_u(n * height);
  std::vector<double> along_v(n * half_width);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& g = sample.components[j];
    for (std::size_t u = 0; u < height; ++u) {
      const double d = static_cast<double>(u) - g.center_u;
      along_u[j * height + u] = std::exp(-d * d / (2.0 * g.sigma_u * g.sigma_u));
    }
    for (std::size_t v = 0; v < half_width; ++v) {
      const double d = static_cast<double>(v) - g.center_v;
      along_v[j * half_width + v] = std::exp(-d * d / (2.0 * g.sigma_v * g.sigma_v));
    }
  }

  std::vector<double> mask(height * half_width, 0.0);
  const auto rows = static_cast<std::ptrdiff_t>(height);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t u = 0; u < rows; ++u) {
    double* row = mask.data() + static_cast<std::size_t>(u) * half_width;
    for (std::size_t j = 0; j < n; ++j) {
      const double gu = along_u[j * height + static_cast<std::size_t>(u)];
      const double* gv = along_v.data() + j * half_width;
      for (std::size_t v = 0; v < half_width; ++v) row[v] = std::max(row[v], gu * gv[v]);
    }
    for (std::size_t v = 0; v < half_width; ++v) {
      row[v] = std::min(1.0, row[v]);
      if (sample.invert) row[v] = 1.0 - row[v];
    }
  }
  return mask;
}

Spectrum apply_gaussian_mixture(const Spectrum& spectrum, const GaussianMixtureSample& sample) {
  const auto mask = gaussian_mixture_mask(spectrum.height(), spectrum.half_width(), sample);
  Spectrum out = spectrum;
  for (std::size_t c = 0; c < out.channels(); ++c) {
    auto plane = out.plane(c);
    for (std::size_t i = 0; i < plane.size(); ++i) plane[i] *= mask[i];
  }
  return out;
}

Spectrum amplitude_rescale(const Spectrum& spectrum, const AmplitudeRescaleParams& params,
                           RandomState& rng) {
  return apply_amplitude_rescale(spectrum, sample_amplitude_rescale(params, rng));
}

Spectrum phase_shift(const Spectrum& spectrum, const PhaseShiftParams& params, RandomState& rng) {
  return apply_phase_shift(spectrum, sample_phase_shift(params, rng));
}

Spectrum random_frequency_mask(const Spectrum& spectrum, const FrequencyMaskParams& params,
                               RandomState& rng) {
  return apply_frequency_mask(spectrum, sample_frequency_mask(params, rng));
}

Spectrum gaussian_mixture_mask(const Spectrum& spectrum, const GaussianMixtureParams& params,
                               RandomState& rng) {
  return apply_gaussian_mixture(
      spectrum, sample_gaussian_mixture(params, spectrum.height(), spectrum.half_width(), rng));
}

}  // namespace fda
