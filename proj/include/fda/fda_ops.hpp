#pragma once

#include <cstdint>
#include <vector>

#include "fda/random.hpp"
#include "fda/spectrum.hpp"

namespace fda {

// Each operator is split into a sampling step, which consumes the random
// stream and returns plain values, and an apply step that is a pure function
// of (spectrum, sample). The one-call forms compose the two.

/// Noise bounds [m, n) for amplitude rescale.
struct AmplitudeRescaleParams {
  double low = 0.8;
  double high = 1.75;
  void validate() const;
};

/// Range [p, q) of the phase shift magnitude.
struct PhaseShiftParams {
  double low = 0.4;
  double high = 0.7;
  void validate() const;
};

/// Range [k_low, k_high) of the fraction of bins zeroed.
struct FrequencyMaskParams {
  double low = 0.01;
  double high = 0.1;
  void validate() const;
};

struct GaussianMixtureParams {
  std::size_t components = 20;
  double sigma_low = 10.0;
  double sigma_high = 15.0;
  /// Use 1 - M (notch) instead of M (pass-band).
  bool invert = false;
  void validate() const;
};

/// The noise plane is regenerated from this seed, one plane per channel.
struct AmplitudeRescaleSample {
  double low = 1.0;
  double high = 1.0;
  std::uint64_t noise_seed = 0;
  friend bool operator==(const AmplitudeRescaleSample&, const AmplitudeRescaleSample&) = default;
};

/// Signed shift applied to every bin: theta or -theta.
struct PhaseShiftSample {
  double shift = 0.0;
  friend bool operator==(const PhaseShiftSample&, const PhaseShiftSample&) = default;
};

struct FrequencyMaskSample {
  double fraction = 0.0;
  std::uint64_t mask_seed = 0;
  friend bool operator==(const FrequencyMaskSample&, const FrequencyMaskSample&) = default;
};

struct GaussianComponent {
  double center_u = 0.0;
  double center_v = 0.0;
  double sigma_u = 1.0;
  double sigma_v = 1.0;
  friend bool operator==(const GaussianComponent&, const GaussianComponent&) = default;
};

struct GaussianMixtureSample {
  std::vector<GaussianComponent> components;
  bool invert = false;
  friend bool operator==(const GaussianMixtureSample&, const GaussianMixtureSample&) = default;
};

// Sampling.
AmplitudeRescaleSample sample_amplitude_rescale(const AmplitudeRescaleParams& params,
                                                RandomState& rng);
PhaseShiftSample sample_phase_shift(const PhaseShiftParams& params, RandomState& rng);
FrequencyMaskSample sample_frequency_mask(const FrequencyMaskParams& params, RandomState& rng);
/// Origins are integer bins on the half-spectrum grid of the given shape.
GaussianMixtureSample sample_gaussian_mixture(const GaussianMixtureParams& params,
                                              std::size_t height, std::size_t half_width,
                                              RandomState& rng);

// Deterministic application.
Spectrum apply_amplitude_rescale(const Spectrum& spectrum, const AmplitudeRescaleSample& sample);
Spectrum apply_phase_shift(const Spectrum& spectrum, const PhaseShiftSample& sample);
Spectrum apply_frequency_mask(const Spectrum& spectrum, const FrequencyMaskSample& sample);
Spectrum apply_gaussian_mixture(const Spectrum& spectrum, const GaussianMixtureSample& sample);

/// Row-major H x half_width binary mask, shared by all channels. Bin (0, 0)
/// is always 1 and exactly round(fraction * (H * half_width - 1)) bins are 0.
std::vector<std::uint8_t> frequency_mask(std::size_t height, std::size_t half_width,
                                         const FrequencyMaskSample& sample);

/// Number of bins a frequency mask zeroes on a grid with `bins` entries.
std::size_t frequency_mask_zero_count(std::size_t bins, double fraction);

/// Row-major H x half_width mixture mask min(1, max_j G_j(u, v)), or its
/// complement when sample.invert is set.
std::vector<double> gaussian_mixture_mask(std::size_t height, std::size_t half_width,
                                          const GaussianMixtureSample& sample);

/// Per-channel noise plane used by amplitude rescale, in spectrum layout.
std::vector<double> amplitude_noise(std::size_t channels, std::size_t plane_size,
                                    const AmplitudeRescaleSample& sample);

// One-call forms.
Spectrum amplitude_rescale(const Spectrum& spectrum, const AmplitudeRescaleParams& params,
                           RandomState& rng);
Spectrum phase_shift(const Spectrum& spectrum, const PhaseShiftParams& params, RandomState& rng);
Spectrum random_frequency_mask(const Spectrum& spectrum, const FrequencyMaskParams& params,
                               RandomState& rng);
Spectrum gaussian_mixture_mask(const Spectrum& spectrum, const GaussianMixtureParams& params,
                               RandomState& rng);

}  // namespace fda
