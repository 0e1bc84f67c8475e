#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fda/image.hpp"
#include "fda/pipeline.hpp"

namespace fda {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class ViewSelection { left, right, both };

struct BatchOptions {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  PipelineConfig config;
  std::size_t workers = 1;
  ViewSelection views = ViewSelection::both;
  bool emit_frequency_images = false;
};

struct FileRecord {
  std::string input;  // relative to input_dir, '/'-separated
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;  // relative to output_dir
  std::string left_trace_digest;
  std::string right_trace_digest;
};

struct FileFailure {
  std::string input;
  std::string error;
};

struct RunManifest {
  std::string tool_version{kToolVersion};
  std::string config_hash;
  std::uint64_t master_seed = 0;
  nlohmann::json config;
  std::vector<FileRecord> files;  // sorted by input path
  std::vector<FileFailure> failures;
};

nlohmann::json to_json(const RunManifest& manifest);

/// Per-image stream seed: depends only on the master seed and the relative
/// path, so results do not depend on visit order or worker count.
std::uint64_t image_seed(std::uint64_t master_seed, std::string_view relative_path);

/// Augments every PNG/JPEG under input_dir (recursively) with the two-view
/// pipeline, mirroring the directory layout into output_dir as
/// <stem>_left.png / <stem>_right.png (plus <stem>_<view>_freq.png when
/// frequency images are requested), and writes output_dir/manifest.json.
/// Undecodable files are logged and listed under failures.
RunManifest run_batch(const BatchOptions& options);

struct PreviewEntry {
  std::string op;
  std::string label;  // strength, e.g. "theta=0.55"
  ImageTensor image;
  ImageTensor amplitude;  // log-amplitude visualization of the augmented spectrum
};

struct PreviewBundle {
  ImageTensor base;  // cropped input every entry starts from
  ImageTensor amplitude;
  ImageTensor phase;
  ImageTensor frequency;
  std::vector<PreviewEntry> entries;
};

/// Operator gallery for one image: each Fourier-domain operator at a sweep
/// of strengths, plus amplitude, phase and frequency-image visualizations of
/// the crop. When output_dir is given the bundle is written there as PNGs
/// with a preview.json index.
PreviewBundle preview(const std::filesystem::path& input_file, const PipelineConfig& config,
                      std::uint64_t seed,
                      const std::optional<std::filesystem::path>& output_dir = std::nullopt);

/// Same, starting from an in-memory image.
PreviewBundle preview_image(const ImageTensor& image, const PipelineConfig& config, std::uint64_t seed);

}  // namespace fda
