#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fda/image.hpp"
#include "fda/spectrum.hpp"

namespace fda {

/// Real, image-shaped view of a half-spectrum: column 2v holds Re F(., v),
/// column 2v + 1 holds Im F(., v) for v < W/2, each channel min-max rescaled
/// to [0, 1]. The Nyquist column v = W/2 does not fit and is dropped.
struct FrequencyImage {
  ImageTensor image;
  /// Per-channel (min, max) of the interleaved values before rescaling.
  std::optional<std::vector<std::pair<double, double>>> scaling;
};

/// Requires 3 channels and an even full width. A channel whose values are
/// all equal rescales to 0.
FrequencyImage encode_frequency_image(const Spectrum& spectrum);

/// Inverts the rescale and de-interleaves. The dropped Nyquist column comes
/// back as zero. Throws InvalidInput when scaling metadata is missing.
Spectrum decode_frequency_image(const FrequencyImage& frequency_image);

}  // namespace fda
