#include "fda/batch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <omp.h>
#include <spdlog/spdlog.h>

#include "fda/config.hpp"
#include "fda/error.hpp"
#include "fda/fda_ops.hpp"
#include "fda/freq_encoding.hpp"
#include "fda/image_io.hpp"
#include "fda/random.hpp"
#include "fda/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace fda {

std::uint64_t image_seed(std::uint64_t master_seed, std::string_view relative_path) {
  return mix64(master_seed ^ mix64(fnv1a64(relative_path)));
}

json to_json(const RunManifest& manifest) {
  json files = json::array();
  for (const auto& f : manifest.files) {
    files.push_back({{"input", f.input},
                     {"seed", f.seed},
                     {"outputs", f.outputs},
                     {"left_trace_digest", f.left_trace_digest},
                     {"right_trace_digest", f.right_trace_digest}});
  }
  json failures = json::array();
  for (const auto& f : manifest.failures) failures.push_back({{"input", f.input}, {"error", f.error}});
  return {{"tool_version", manifest.tool_version},
          {"config_hash", manifest.config_hash},
          {"master_seed", manifest.master_seed},
          {"config", manifest.config},
          {"files", files},
          {"failures", failures}};
}

namespace {

std::vector<std::string> list_inputs(const fs::path& root) {
  std::vector<std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    if (!is_supported_image(entry.path())) {
      spdlog::debug("skipping non-image file {}", entry.path().string());
      continue;
    }
    out.push_back(fs::relative(entry.path(), root).generic_string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string output_name(const std::string& relative, std::string_view suffix) {
  const fs::path rel(relative);
  fs::path name = rel.parent_path() / (rel.stem().string() + std::string(suffix) + ".png");
  return name.generic_string();
}

struct Outcome {
  std::optional<FileRecord> record;
  std::optional<FileFailure> failure;
};

Outcome process_file(const BatchOptions& options, const std::string& relative) {
  Outcome outcome;
  try {
    const ImageTensor image = read_image(options.input_dir / relative);
    FileRecord record;
    record.input = relative;
    record.seed = image_seed(options.config.seed, relative);
    const RandomState stream(record.seed);
    const OpTrace left = plan_view(image.height(), image.width(), options.config.left, stream.split("left"));
    const OpTrace right = plan_view(image.height(), image.width(), options.config.right, stream.split("right"));
    record.left_trace_digest = trace_digest(left);
    record.right_trace_digest = trace_digest(right);

    auto emit = [&](const OpTrace& trace, std::string_view view) {
      const ImageTensor out = replay(image, trace);
      const std::string name = output_name(relative, std::string("_") + std::string(view));
      write_png(options.output_dir / name, out);
      record.outputs.push_back(name);
      if (options.emit_frequency_images) {
        if (out.width() % 2 != 0 || out.channels() != 3) {
          spdlog::warn("{}: frequency image needs an even-width RGB view, skipped", relative);
          return;
        }
        const FrequencyImage freq = encode_frequency_image(forward_rfft2(out));
        const std::string freq_name = output_name(relative, std::string("_") + std::string(view) + "_freq");
        write_png(options.output_dir / freq_name, freq.image);
        record.outputs.push_back(freq_name);
      }
    };
    if (options.views != ViewSelection::right) emit(left, "left");
    if (options.views != ViewSelection::left) emit(right, "right");
    outcome.record = std::move(record);
  } catch (const std::exception& e) {
    spdlog::error("{}: {}", relative, e.what());
    outcome.failure = FileFailure{relative, e.what()};
  }
  return outcome;
}

}  // namespace

RunManifest run_batch(const BatchOptions& options) {
  const auto violations = validate_config(options.config);
  if (!violations.empty()) {
    throw InvalidInput(violations.front().field + ": " + violations.front().message);
  }
  require(fs::is_directory(options.input_dir), "input directory does not exist: " + options.input_dir.string());
  fs::create_directories(options.output_dir);

  RunManifest manifest;
  manifest.master_seed = options.config.seed;
  manifest.config = to_json(options.config);
  manifest.config_hash = config_hash(options.config);

  const auto inputs = list_inputs(options.input_dir);
  for (const auto& rel : inputs) fs::create_directories((options.output_dir / rel).parent_path());
  spdlog::info("augmenting {} images with {} workers", inputs.size(), options.workers);

  std::vector<Outcome> outcomes(inputs.size());
  const auto count = static_cast<std::ptrdiff_t>(inputs.size());
  const int workers = static_cast<int>(std::max<std::size_t>(1, options.workers));
  // One image per worker; kernels inside run serially as nested regions.
  const int saved_levels = omp_get_max_active_levels();
  omp_set_max_active_levels(1);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    outcomes[static_cast<std::size_t>(i)] = process_file(options, inputs[static_cast<std::size_t>(i)]);
  }
  omp_set_max_active_levels(saved_levels);

  for (auto& o : outcomes) {
    if (o.record) manifest.files.push_back(std::move(*o.record));
    if (o.failure) manifest.failures.push_back(std::move(*o.failure));
  }
  std::ofstream(options.output_dir / "manifest.json") << to_json(manifest).dump(2) << '\n';
  spdlog::info("wrote {} records, {} failures", manifest.files.size(), manifest.failures.size());
  return manifest;
}

// ---------------------------------------------------------------------------
// Preview

namespace {

// log(1 + A), rows rolled so the DC row sits in the middle, scaled by the
// global maximum.
ImageTensor amplitude_view(const Spectrum& spectrum) {
  const std::size_t height = spectrum.height();
  const std::size_t half = spectrum.half_width();
  ImageTensor out(height, half, spectrum.channels());
  double peak = 0.0;
  for (std::size_t c = 0; c < spectrum.channels(); ++c) {
    for (std::size_t u = 0; u < height; ++u) {
      for (std::size_t v = 0; v < half; ++v) {
        const double a = std::log1p(std::abs(spectrum.at(u, v, c)));
        out.at((u + height / 2) % height, v, c) = a;
        peak = std::max(peak, a);
      }
    }
  }
  if (peak > 0.0) {
    for (double& x : out.data()) x /= peak;
  }
  return out;
}

ImageTensor phase_view(const Spectrum& spectrum) {
  const PolarSpectrum polar = decompose(spectrum);
  const std::size_t height = spectrum.height();
  const std::size_t half = spectrum.half_width();
  ImageTensor out(height, half, spectrum.channels());
  for (std::size_t c = 0; c < spectrum.channels(); ++c) {
    for (std::size_t u = 0; u < height; ++u) {
      for (std::size_t v = 0; v < half; ++v) {
        const double p = polar.phase[(c * height + u) * half + v];
        out.at((u + height / 2) % height, v, c) = (p + std::numbers::pi) / (2.0 * std::numbers::pi);
      }
    }
  }
  return out;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

PreviewBundle preview_image(const ImageTensor& image, const PipelineConfig& config, std::uint64_t seed) {
  config.left.validate();
  const RandomState rng(seed);
  PreviewBundle bundle;
  {
    RandomState crop_rng = rng.split("preview.crop");
    bundle.base = random_resized_crop(image, config.left.crop, crop_rng);
  }
  const Spectrum spectrum = forward_rfft2(bundle.base);
  bundle.amplitude = amplitude_view(spectrum);
  bundle.phase = phase_view(spectrum);
  if (spectrum.channels() == 3 && spectrum.full_width() % 2 == 0) {
    bundle.frequency = encode_frequency_image(spectrum).image;
  }

  auto add = [&](std::string op, std::string label, const Spectrum& augmented) {
    ImageTensor out = inverse_rfft2(augmented);
    out.clamp01();
    bundle.entries.push_back({std::move(op), std::move(label), std::move(out), amplitude_view(augmented)});
  };

  for (const auto& [m, n] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {0.8, 1.75}, {0.5, 2.5}}) {
    const AmplitudeRescaleSample s{m, n, rng.split("preview.amplitude").next_u64()};
    add("amplitude_rescale", "m=" + fixed(m) + ",n=" + fixed(n), apply_amplitude_rescale(spectrum, s));
  }
  for (double theta : {0.0, 0.4, 0.55, 0.7}) {
    add("phase_shift", "theta=" + fixed(theta), apply_phase_shift(spectrum, PhaseShiftSample{theta}));
  }
  for (double k : {0.0, 0.01, 0.1, 0.5, 1.0}) {
    const FrequencyMaskSample s{k, rng.split("preview.mask").next_u64()};
    add("frequency_mask", "k=" + fixed(k), apply_frequency_mask(spectrum, s));
  }
  {
    const GaussianMixtureSample flat{{GaussianComponent{0.0, 0.0, 1e9, 1e9}}, false};
    add("gaussian_mixture", "flat", apply_gaussian_mixture(spectrum, flat));
    const GaussianMixtureSample low_pass{{GaussianComponent{0.0, 0.0, 8.0, 8.0}}, false};
    add("gaussian_mixture", "low_pass_sigma=8", apply_gaussian_mixture(spectrum, low_pass));
    for (const auto& [lo, hi] : std::vector<std::pair<double, double>>{{10.0, 15.0}, {5.0, 8.0}}) {
      GaussianMixtureParams params = config.left.gaussian_mixture;
      params.sigma_low = lo;
      params.sigma_high = hi;
      RandomState g = rng.split("preview.mixture");
      const auto s = sample_gaussian_mixture(params, spectrum.height(), spectrum.half_width(), g);
      add("gaussian_mixture", "sigma=" + fixed(lo) + "-" + fixed(hi), apply_gaussian_mixture(spectrum, s));
    }
  }
  return bundle;
}

PreviewBundle preview(const fs::path& input_file, const PipelineConfig& config, std::uint64_t seed,
                      const std::optional<fs::path>& output_dir) {
  PreviewBundle bundle = preview_image(read_image(input_file), config, seed);
  if (!output_dir) return bundle;

  fs::create_directories(*output_dir);
  json index = {{"input", input_file.filename().string()}, {"seed", seed}, {"entries", json::array()}};
  write_png(*output_dir / "base.png", bundle.base);
  write_png(*output_dir / "amplitude.png", bundle.amplitude);
  write_png(*output_dir / "phase.png", bundle.phase);
  if (!bundle.frequency.empty()) write_png(*output_dir / "frequency.png", bundle.frequency);
  for (std::size_t i = 0; i < bundle.entries.size(); ++i) {
    const auto& e = bundle.entries[i];
    char stem[64];
    std::snprintf(stem, sizeof stem, "%02zu_%s", i, e.op.c_str());
    const std::string image_name = std::string(stem) + ".png";
    const std::string amp_name = std::string(stem) + "_amplitude.png";
    write_png(*output_dir / image_name, e.image);
    write_png(*output_dir / amp_name, e.amplitude);
    index["entries"].push_back({{"op", e.op}, {"strength", e.label}, {"image", image_name}, {"amplitude", amp_name}});
  }
  std::ofstream(*output_dir / "preview.json") << index.dump(2) << '\n';
  return bundle;
}

}  // namespace fda
