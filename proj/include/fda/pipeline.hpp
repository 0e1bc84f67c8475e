#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fda/fda_ops.hpp"
#include "fda/image.hpp"
#include "fda/image_ops.hpp"
#include "fda/random.hpp"

namespace fda {

enum class ViewOrder { fda_first, image_aug_first };

/// One broken invariant, addressed by its dotted config path.
struct Violation {
  std::string field;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Stochastic augmentation policy for one view. Every stage fires
/// independently with its probability; crop always fires.
struct ViewConfig {
  CropParams crop;
  double crop_probability = 1.0;

  JitterParams color_jitter;
  double color_jitter_probability = 0.8;
  double grayscale_probability = 0.2;
  double horizontal_flip_probability = 0.5;
  BlurParams gaussian_blur;
  double gaussian_blur_probability = 1.0;
  SolarizeParams solarize;
  double solarize_probability = 0.0;

  AmplitudeRescaleParams amplitude_rescale;
  double amplitude_rescale_probability = 0.2;
  PhaseShiftParams phase_shift;
  double phase_shift_probability = 0.2;
  FrequencyMaskParams frequency_mask;
  double frequency_mask_probability = 0.5;
  GaussianMixtureParams gaussian_mixture;
  double gaussian_mixture_probability = 0.2;

  ViewOrder order = ViewOrder::fda_first;

  /// All broken invariants; field paths are prefixed with `prefix`.
  std::vector<Violation> check(std::string_view prefix = "") const;
  /// Throws InvalidInput naming the first offending field.
  void validate() const;
};

/// Left view of the reference recipe: image augmentations plus all four
/// Fourier-domain operators.
ViewConfig default_left_view();
/// Right view: image augmentations only, light blur.
ViewConfig default_right_view();

struct PipelineConfig {
  ViewConfig left = default_left_view();
  ViewConfig right = default_right_view();
  std::uint64_t seed = 0;
};

enum class OpKind {
  crop,
  color_jitter,
  grayscale,
  horizontal_flip,
  gaussian_blur,
  solarize,
  amplitude_rescale,
  phase_shift,
  frequency_mask,
  gaussian_mixture,
};

std::string_view op_name(OpKind kind) noexcept;
bool is_fourier_op(OpKind kind) noexcept;

struct BlurSample {
  double sigma = 1.0;
  std::size_t kernel_size = 23;
  friend bool operator==(const BlurSample&, const BlurSample&) = default;
};

using OpSample = std::variant<std::monostate, CropRect, JitterSample, BlurSample, SolarizeParams,
                              AmplitudeRescaleSample, PhaseShiftSample, FrequencyMaskSample,
                              GaussianMixtureSample>;

struct AppliedOp {
  OpKind kind;
  OpSample sample;
};

/// Ordered record of the operators a view actually applied, with every
/// sampled parameter. replay() reproduces the view from it bit-exactly.
struct OpTrace {
  ViewOrder order = ViewOrder::fda_first;
  std::size_t out_height = 0;
  std::size_t out_width = 0;
  std::vector<AppliedOp> ops;

  bool contains(OpKind kind) const noexcept;
  std::vector<OpKind> kinds() const;
};

/// Draws every gate and parameter for one view of an image of the given
/// size without touching pixels.
OpTrace plan_view(std::size_t height, std::size_t width, const ViewConfig& config,
                  const RandomState& rng);

/// Executes a trace: crop, then the operators in order. Consecutive
/// Fourier-domain operators share one forward/inverse transform, and the
/// result of each inversion is clamped to [0, 1].
ImageTensor replay(const ImageTensor& image, const OpTrace& trace);

ImageTensor augment_view(const ImageTensor& image, const ViewConfig& config, const RandomState& rng);

OpTrace applied_ops_trace(const ImageTensor& image, const ViewConfig& config, const RandomState& rng);

struct ViewPair {
  ImageTensor left;
  ImageTensor right;
  OpTrace left_trace;
  OpTrace right_trace;
};

/// Two views from independent substreams of `rng`.
ViewPair make_views(const ImageTensor& image, const PipelineConfig& config, const RandomState& rng);

/// Two views seeded from config.seed.
ViewPair make_views(const ImageTensor& image, const PipelineConfig& config);

}  // namespace fda
