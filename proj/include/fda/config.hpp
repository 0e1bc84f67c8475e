#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fda/pipeline.hpp"

namespace fda {

/// Result of reading a pipeline config. `config` holds every field that
/// parsed, with defaults for the rest; it is only usable when `violations`
/// is empty.
struct ConfigReport {
  PipelineConfig config;
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Reads a config document. Every field is optional; missing fields keep the
/// reference defaults. Type errors, unknown keys and broken invariants are
/// reported as violations, never thrown.
ConfigReport parse_config(const nlohmann::json& doc);
ConfigReport parse_config_text(const std::string& text);
ConfigReport load_config(const std::filesystem::path& path);

/// All invariant violations of an in-memory config.
std::vector<Violation> validate_config(const PipelineConfig& config);

/// Fully resolved config, defaults expanded.
nlohmann::json to_json(const PipelineConfig& config);
nlohmann::json to_json(const ViewConfig& view);
nlohmann::json to_json(const Violation& violation);

/// FNV-1a of the canonical serialized config, as 16 hex digits.
std::string config_hash(const PipelineConfig& config);

std::string_view order_name(ViewOrder order) noexcept;
/// "fda-first" or "image-first"; throws InvalidInput otherwise.
ViewOrder parse_order(std::string_view name);

nlohmann::json trace_to_json(const OpTrace& trace);
/// FNV-1a of the serialized trace, as 16 hex digits.
std::string trace_digest(const OpTrace& trace);

std::string hex64(std::uint64_t value);

}  // namespace fda
