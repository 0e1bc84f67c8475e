#include "fda/pipeline.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "fda/error.hpp"
#include "fda/spectral.hpp"

namespace fda {

namespace {

void check_probability(std::vector<Violation>& out, const std::string& field, double p) {
  if (!(p >= 0.0 && p <= 1.0)) out.push_back({field, "probability must lie in [0, 1]"});
}

// Runs a params validate() and records its message against `field`.
template <class Params>
void check_params(std::vector<Violation>& out, const std::string& field, const Params& params) {
  try {
    params.validate();
  } catch (const InvalidInput& e) {
    out.push_back({field, e.what()});
  }
}

}  // namespace

std::vector<Violation> ViewConfig::check(std::string_view prefix) const {
  const std::string p(prefix);
  std::vector<Violation> out;
  check_params(out, p + "crop", crop);
  if (crop.out_height < 2 || crop.out_width < 2) {
    out.push_back({p + "crop.size", "output must be at least 2x2"});
  }
  if (crop_probability != 1.0) out.push_back({p + "crop.probability", "crop probability must be 1.0"});

  check_params(out, p + "color_jitter", color_jitter);
  check_probability(out, p + "color_jitter.probability", color_jitter_probability);
  check_probability(out, p + "grayscale.probability", grayscale_probability);
  check_probability(out, p + "horizontal_flip.probability", horizontal_flip_probability);
  check_params(out, p + "gaussian_blur", gaussian_blur);
  check_probability(out, p + "gaussian_blur.probability", gaussian_blur_probability);
  check_params(out, p + "solarize.threshold", solarize);
  check_probability(out, p + "solarize.probability", solarize_probability);

  check_params(out, p + "amplitude_rescale.range", amplitude_rescale);
  check_probability(out, p + "amplitude_rescale.probability", amplitude_rescale_probability);
  check_params(out, p + "phase_shift.range", phase_shift);
  check_probability(out, p + "phase_shift.probability", phase_shift_probability);
  check_params(out, p + "frequency_mask.range", frequency_mask);
  check_probability(out, p + "frequency_mask.probability", frequency_mask_probability);
  check_params(out, p + "gaussian_mixture", gaussian_mixture);
  check_probability(out, p + "gaussian_mixture.probability", gaussian_mixture_probability);
  return out;
}

void ViewConfig::validate() const {
  const auto violations = check();
  if (!violations.empty()) {
    throw InvalidInput(violations.front().field + ": " + violations.front().message);
  }
}

ViewConfig default_left_view() { return ViewConfig{}; }

ViewConfig default_right_view() {
  ViewConfig view;
  view.gaussian_blur_probability = 0.1;
  view.amplitude_rescale_probability = 0.0;
  view.phase_shift_probability = 0.0;
  view.frequency_mask_probability = 0.0;
  view.gaussian_mixture_probability = 0.0;
  return view;
}

std::string_view op_name(OpKind kind) noexcept {
  switch (kind) {
    case OpKind::crop: return "crop";
    case OpKind::color_jitter: return "color_jitter";
    case OpKind::grayscale: return "grayscale";
    case OpKind::horizontal_flip: return "horizontal_flip";
    case OpKind::gaussian_blur: return "gaussian_blur";
    case OpKind::solarize: return "solarize";
    case OpKind::amplitude_rescale: return "amplitude_rescale";
    case OpKind::phase_shift: return "phase_shift";
    case OpKind::frequency_mask: return "frequency_mask";
    case OpKind::gaussian_mixture: return "gaussian_mixture";
  }
  return "unknown";
}

bool is_fourier_op(OpKind kind) noexcept {
  return kind == OpKind::amplitude_rescale || kind == OpKind::phase_shift ||
         kind == OpKind::frequency_mask || kind == OpKind::gaussian_mixture;
}

bool OpTrace::contains(OpKind kind) const noexcept {
  for (const auto& op : ops) {
    if (op.kind == kind) return true;
  }
  return false;
}

std::vector<OpKind> OpTrace::kinds() const {
  std::vector<OpKind> out;
  out.reserve(ops.size());
  for (const auto& op : ops) out.push_back(op.kind);
  return out;
}

OpTrace plan_view(std::size_t height, std::size_t width, const ViewConfig& config,
                  const RandomState& rng) {
  config.validate();
  require(height >= 2 && width >= 2, "augment_view: image must be at least 2x2");

  OpTrace trace;
  trace.order = config.order;
  trace.out_height = config.crop.out_height;
  trace.out_width = config.crop.out_width;

  // Every operator draws from its own substream, so changing one gate
  // leaves the other operators' draws untouched.
  auto stream = [&rng](OpKind kind) { return rng.split(op_name(kind)); };

  {
    RandomState r = stream(OpKind::crop);
    trace.ops.push_back({OpKind::crop, sample_crop(height, width, config.crop, r)});
  }

  std::vector<AppliedOp> image_block;
  if (RandomState r = stream(OpKind::color_jitter); r.bernoulli(config.color_jitter_probability)) {
    image_block.push_back({OpKind::color_jitter, sample_jitter(config.color_jitter, r)});
  }
  if (RandomState r = stream(OpKind::grayscale); r.bernoulli(config.grayscale_probability)) {
    image_block.push_back({OpKind::grayscale, std::monostate{}});
  }
  if (RandomState r = stream(OpKind::horizontal_flip); r.bernoulli(config.horizontal_flip_probability)) {
    image_block.push_back({OpKind::horizontal_flip, std::monostate{}});
  }
  if (RandomState r = stream(OpKind::gaussian_blur); r.bernoulli(config.gaussian_blur_probability)) {
    image_block.push_back({OpKind::gaussian_blur,
                           BlurSample{sample_blur_sigma(config.gaussian_blur, r),
                                      config.gaussian_blur.kernel_size}});
  }
  if (RandomState r = stream(OpKind::solarize); r.bernoulli(config.solarize_probability)) {
    image_block.push_back({OpKind::solarize, config.solarize});
  }

  std::vector<AppliedOp> fourier_block;
  if (RandomState r = stream(OpKind::amplitude_rescale);
      r.bernoulli(config.amplitude_rescale_probability)) {
    fourier_block.push_back(
        {OpKind::amplitude_rescale, sample_amplitude_rescale(config.amplitude_rescale, r)});
  }
  if (RandomState r = stream(OpKind::phase_shift); r.bernoulli(config.phase_shift_probability)) {
    fourier_block.push_back({OpKind::phase_shift, sample_phase_shift(config.phase_shift, r)});
  }
  if (RandomState r = stream(OpKind::frequency_mask); r.bernoulli(config.frequency_mask_probability)) {
    fourier_block.push_back({OpKind::frequency_mask, sample_frequency_mask(config.frequency_mask, r)});
  }
  if (RandomState r = stream(OpKind::gaussian_mixture);
      r.bernoulli(config.gaussian_mixture_probability)) {
    fourier_block.push_back(
        {OpKind::gaussian_mixture,
         sample_gaussian_mixture(config.gaussian_mixture, trace.out_height,
                                 trace.out_width / 2 + 1, r)});
  }

  auto& first = config.order == ViewOrder::fda_first ? fourier_block : image_block;
  auto& second = config.order == ViewOrder::fda_first ? image_block : fourier_block;
  trace.ops.insert(trace.ops.end(), first.begin(), first.end());
  trace.ops.insert(trace.ops.end(), second.begin(), second.end());
  return trace;
}

namespace {

ImageTensor apply_image_op(const ImageTensor& image, const AppliedOp& op) {
  switch (op.kind) {
    case OpKind::color_jitter: return apply_color_jitter(image, std::get<JitterSample>(op.sample));
    case OpKind::grayscale: return grayscale(image);
    case OpKind::horizontal_flip: return horizontal_flip(image);
    case OpKind::gaussian_blur: {
      const auto& b = std::get<BlurSample>(op.sample);
      return apply_gaussian_blur(image, b.sigma, b.kernel_size);
    }
    case OpKind::solarize: return solarize(image, std::get<SolarizeParams>(op.sample));
    default: break;
  }
  throw InvalidInput("replay: not an image-space operator: " + std::string(op_name(op.kind)));
}

Spectrum apply_fourier_op(const Spectrum& spectrum, const AppliedOp& op) {
  switch (op.kind) {
    case OpKind::amplitude_rescale:
      return apply_amplitude_rescale(spectrum, std::get<AmplitudeRescaleSample>(op.sample));
    case OpKind::phase_shift: return apply_phase_shift(spectrum, std::get<PhaseShiftSample>(op.sample));
    case OpKind::frequency_mask:
      return apply_frequency_mask(spectrum, std::get<FrequencyMaskSample>(op.sample));
    case OpKind::gaussian_mixture:
      return apply_gaussian_mixture(spectrum, std::get<GaussianMixtureSample>(op.sample));
    default: break;
  }
  throw InvalidInput("replay: not a Fourier-domain operator: " + std::string(op_name(op.kind)));
}

}  // namespace

ImageTensor replay(const ImageTensor& image, const OpTrace& trace) {
  require(!trace.ops.empty() && trace.ops.front().kind == OpKind::crop,
          "replay: trace must start with a crop");
  ImageTensor current = resized_crop(image, std::get<CropRect>(trace.ops.front().sample),
                                     trace.out_height, trace.out_width);
  std::optional<Spectrum> spectrum;
  auto invert = [&] {
    current = inverse_rfft2(*spectrum);
    current.clamp01();
    spectrum.reset();
  };

  for (std::size_t i = 1; i < trace.ops.size(); ++i) {
    const AppliedOp& op = trace.ops[i];
    if (is_fourier_op(op.kind)) {
      if (!spectrum) spectrum = forward_rfft2(current);
      spectrum = apply_fourier_op(*spectrum, op);
    } else {
      if (spectrum) invert();
      current = apply_image_op(current, op);
    }
  }
  if (spectrum) invert();
  return current;
}

OpTrace applied_ops_trace(const ImageTensor& image, const ViewConfig& config, const RandomState& rng) {
  return plan_view(image.height(), image.width(), config, rng);
}

ImageTensor augment_view(const ImageTensor& image, const ViewConfig& config, const RandomState& rng) {
  return replay(image, plan_view(image.height(), image.width(), config, rng));
}

ViewPair make_views(const ImageTensor& image, const PipelineConfig& config, const RandomState& rng) {
  ViewPair pair;
  pair.left_trace = plan_view(image.height(), image.width(), config.left, rng.split("left"));
  pair.right_trace = plan_view(image.height(), image.width(), config.right, rng.split("right"));
  pair.left = replay(image, pair.left_trace);
  pair.right = replay(image, pair.right_trace);
  return pair;
}

ViewPair make_views(const ImageTensor& image, const PipelineConfig& config) {
  return make_views(image, config, RandomState(config.seed));
}

}  // namespace fda
