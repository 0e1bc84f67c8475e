#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fda/image.hpp"
#include "fda/random.hpp"

namespace fda {

struct CropParams {
  std::size_t out_height = 224;
  std::size_t out_width = 224;
  double area_low = 0.08;
  double area_high = 1.0;
  double aspect_low = 3.0 / 4.0;
  double aspect_high = 4.0 / 3.0;
  void validate() const;
};

/// Maximum perturbation strengths; hue is in fractional turns.
struct JitterParams {
  double brightness = 0.4;
  double contrast = 0.4;
  double saturation = 0.2;
  double hue = 0.1;
  void validate() const;
};

struct BlurParams {
  double sigma_low = 0.1;
  double sigma_high = 2.0;
  std::size_t kernel_size = 23;
  void validate() const;
};

struct SolarizeParams {
  double threshold = 0.5;
  void validate() const;
};

/// Source rectangle of a resized crop.
struct CropRect {
  std::size_t top = 0;
  std::size_t left = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  friend bool operator==(const CropRect&, const CropRect&) = default;
};

enum class JitterStep : int { brightness = 0, contrast = 1, saturation = 2, hue = 3 };

struct JitterSample {
  double brightness = 1.0;
  double contrast = 1.0;
  double saturation = 1.0;
  double hue = 0.0;
  std::array<JitterStep, 4> order{JitterStep::brightness, JitterStep::contrast,
                                  JitterStep::saturation, JitterStep::hue};
  friend bool operator==(const JitterSample&, const JitterSample&) = default;
};

/// Rejection-samples the crop rectangle (10 attempts, then a centred crop
/// with the aspect ratio clamped to the allowed range).
CropRect sample_crop(std::size_t height, std::size_t width, const CropParams& params,
                     RandomState& rng);

/// Bicubic (Keys, a = -0.5) resize of image[rect] to out_height x out_width,
/// clamped to [0, 1]. Samples are taken at pixel centres with edge replication.
ImageTensor resized_crop(const ImageTensor& image, const CropRect& rect, std::size_t out_height,
                         std::size_t out_width);

ImageTensor random_resized_crop(const ImageTensor& image, const CropParams& params,
                                RandomState& rng);

JitterSample sample_jitter(const JitterParams& params, RandomState& rng);
ImageTensor apply_color_jitter(const ImageTensor& image, const JitterSample& sample);
ImageTensor color_jitter(const ImageTensor& image, const JitterParams& params, RandomState& rng);

/// ITU-R 601 luma replicated to all three channels.
ImageTensor grayscale(const ImageTensor& image);

ImageTensor horizontal_flip(const ImageTensor& image);

/// Normalized 1D Gaussian taps of odd length.
std::vector<double> gaussian_kernel(double sigma, std::size_t size);

double sample_blur_sigma(const BlurParams& params, RandomState& rng);
/// Separable blur with half-sample symmetric padding (... c b a | a b c ...).
ImageTensor apply_gaussian_blur(const ImageTensor& image, double sigma, std::size_t kernel_size);
ImageTensor gaussian_blur(const ImageTensor& image, const BlurParams& params, RandomState& rng);

/// v >= threshold -> 1 - v.
ImageTensor solarize(const ImageTensor& image, const SolarizeParams& params);

/// Maps an arbitrary integer offset into [0, n) by mirroring about the edges.
std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) noexcept;

}  // namespace fda
