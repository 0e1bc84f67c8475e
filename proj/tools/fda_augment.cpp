// Batch Fourier-domain augmentation tool.
//
//   fda_augment --input-dir in/ --output-dir out/ --config views.json --seed 7 --workers 8
//   fda_augment --preview photo.png --output-dir gallery/
//   fda_augment --config views.json --validate-only
//
// Exit codes: 0 success, 1 config error, 2 partial failures.

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "fda/batch.hpp"
#include "fda/config.hpp"
#include "fda/error.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("fda");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::info);
  if (const char* level = std::getenv("FDA_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

void report(const std::vector<fda::Violation>& violations) {
  for (const auto& v : violations) spdlog::error("config: {}: {}", v.field, v.message);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-domain augmentation of image directories"};
  std::string input_dir;
  std::string output_dir;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  std::string order;
  std::string views = "both";
  std::string preview_file;
  bool emit_frequency = false;
  bool validate_only = false;

  app.add_option("--input-dir", input_dir, "Directory of PNG/JPEG inputs (searched recursively)");
  app.add_option("--output-dir", output_dir, "Destination for views, previews and manifest.json");
  app.add_option("--config", config_path, "JSON pipeline config; omitted fields keep defaults");
  app.add_option("--seed", seed, "Master seed (overrides the config's seed)");
  app.add_option("--workers", workers, "Parallel workers")->check(CLI::Range(1, 1024));
  app.add_option("--order", order, "Override both views' order")
      ->check(CLI::IsMember({"fda-first", "image-first"}));
  app.add_option("--views", views, "Which views to write")->check(CLI::IsMember({"left", "right", "both"}));
  app.add_option("--preview", preview_file, "Write an operator gallery for one image");
  app.add_flag("--emit-frequency-images", emit_frequency, "Also write frequency images of each view");
  app.add_flag("--validate-only", validate_only, "Check the config, print it resolved, and exit");
  CLI11_PARSE(app, argc, argv);

  setup_logging();

  fda::ConfigReport report_result = config_path.empty() ? fda::ConfigReport{} : fda::load_config(config_path);
  if (report_result.ok()) {
    if (seed) report_result.config.seed = *seed;
    if (!order.empty()) {
      const auto o = fda::parse_order(order);
      report_result.config.left.order = o;
      report_result.config.right.order = o;
    }
  }

  if (validate_only) {
    const nlohmann::json out = {
        {"valid", report_result.ok()},
        {"violations", [&] {
           nlohmann::json list = nlohmann::json::array();
           for (const auto& v : report_result.violations) list.push_back(fda::to_json(v));
           return list;
         }()},
        {"config", fda::to_json(report_result.config)}};
    std::cout << out.dump(2) << '\n';
    return report_result.ok() ? 0 : kExitConfig;
  }
  if (!report_result.ok()) {
    report(report_result.violations);
    return kExitConfig;
  }

  try {
    if (!preview_file.empty()) {
      if (output_dir.empty()) {
        spdlog::error("--preview needs --output-dir");
        return kExitConfig;
      }
      const auto bundle = fda::preview(preview_file, report_result.config, report_result.config.seed, output_dir);
      spdlog::info("wrote {} preview entries to {}", bundle.entries.size(), output_dir);
      return 0;
    }

    if (input_dir.empty() || output_dir.empty()) {
      spdlog::error("--input-dir and --output-dir are required");
      return kExitConfig;
    }
    fda::BatchOptions options;
    options.input_dir = input_dir;
    options.output_dir = output_dir;
    options.config = report_result.config;
    options.workers = workers;
    options.views = views == "left" ? fda::ViewSelection::left
                    : views == "right" ? fda::ViewSelection::right
                                       : fda::ViewSelection::both;
    options.emit_frequency_images = emit_frequency;
    const auto manifest = fda::run_batch(options);
    return manifest.failures.empty() ? 0 : kExitPartial;
  } catch (const fda::InvalidInput& e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitPartial;
  }
}
