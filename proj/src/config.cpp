#include "fda/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "fda/error.hpp"
#include "fda/random.hpp"

namespace fda {

using nlohmann::json;

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string_view order_name(ViewOrder order) noexcept {
  return order == ViewOrder::fda_first ? "fda-first" : "image-first";
}

ViewOrder parse_order(std::string_view name) {
  if (name == "fda-first") return ViewOrder::fda_first;
  if (name == "image-first") return ViewOrder::image_aug_first;
  throw InvalidInput("order must be 'fda-first' or 'image-first'");
}

// ---------------------------------------------------------------------------
// Reading

namespace {

// Walks one JSON object, reporting type errors against dotted paths.
class Reader {
public:
  Reader(const json& node, std::string path, std::vector<Violation>& out)
      : node_(node), path_(std::move(path)), out_(out) {
    if (!node_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool valid() const { return node_.is_object(); }

  void number(const char* key, double& target) {
    if (const json* v = find(key)) {
      if (v->is_number()) {
        target = v->get<double>();
      } else {
        fail(field(key), "expected a number");
      }
    }
  }

  void count(const char* key, std::size_t& target) {
    if (const json* v = find(key)) {
      if (v->is_number_unsigned() || (v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
        target = v->get<std::size_t>();
      } else {
        fail(field(key), "expected a non-negative integer");
      }
    }
  }

  void seed(const char* key, std::uint64_t& target) {
    if (const json* v = find(key)) {
      if (v->is_number_unsigned() || (v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
        target = v->get<std::uint64_t>();
      } else {
        fail(field(key), "expected a non-negative integer");
      }
    }
  }

  void flag(const char* key, bool& target) {
    if (const json* v = find(key)) {
      if (v->is_boolean()) {
        target = v->get<bool>();
      } else {
        fail(field(key), "expected true or false");
      }
    }
  }

  template <class T>
  void pair(const char* key, T& first, T& second) {
    if (const json* v = find(key)) {
      const bool shape_ok = v->is_array() && v->size() == 2 && (*v)[0].is_number() && (*v)[1].is_number();
      if (!shape_ok) {
        fail(field(key), "expected a two-element numeric array");
        return;
      }
      if constexpr (std::is_integral_v<T>) {
        if (!(*v)[0].is_number_integer() || !(*v)[1].is_number_integer() || (*v)[0].get<std::int64_t>() < 0 ||
            (*v)[1].get<std::int64_t>() < 0) {
          fail(field(key), "expected two non-negative integers");
          return;
        }
      }
      first = (*v)[0].get<T>();
      second = (*v)[1].get<T>();
    }
  }

  void order(const char* key, ViewOrder& target) {
    if (const json* v = find(key)) {
      try {
        target = parse_order(v->is_string() ? v->get<std::string>() : std::string());
      } catch (const InvalidInput& e) {
        fail(field(key), e.what());
      }
    }
  }

  /// Child object reader, or nullopt when absent.
  std::optional<Reader> child(const char* key) {
    if (const json* v = find(key)) return Reader(*v, field(key), out_);
    return std::nullopt;
  }

  void reject_unknown() const {
    if (!valid()) return;
    for (const auto& item : node_.items()) {
      if (!seen_.contains(item.key())) out_.push_back({field(item.key()), "unknown field"});
    }
  }

private:
  const json* find(const std::string& key) {
    seen_.insert(key);
    if (!valid()) return nullptr;
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  void fail(std::string f, std::string message) { out_.push_back({std::move(f), std::move(message)}); }

  const json& node_;
  std::string path_;
  std::vector<Violation>& out_;
  std::set<std::string> seen_;
};

void read_view(Reader& r, ViewConfig& view) {
  if (auto s = r.child("crop")) {
    s->pair("size", view.crop.out_height, view.crop.out_width);
    s->pair("area", view.crop.area_low, view.crop.area_high);
    s->pair("aspect", view.crop.aspect_low, view.crop.aspect_high);
    s->number("probability", view.crop_probability);
    s->reject_unknown();
  }
  if (auto s = r.child("color_jitter")) {
    s->number("brightness", view.color_jitter.brightness);
    s->number("contrast", view.color_jitter.contrast);
    s->number("saturation", view.color_jitter.saturation);
    s->number("hue", view.color_jitter.hue);
    s->number("probability", view.color_jitter_probability);
    s->reject_unknown();
  }
  if (auto s = r.child("grayscale")) {
    s->number("probability", view.grayscale_probability);
    s->reject_unknown();
  }
  if (auto s = r.child("horizontal_flip")) {
    s->number("probability", view.horizontal_flip_probability);
    s->reject_unknown();
  }
  if (auto s = r.child("gaussian_blur")) {
    s->pair("sigma", view.gaussian_blur.sigma_low, view.gaussian_blur.sigma_high);
    s->count("kernel_size", view.gaussian_blur.kernel_size);
    s->number("probability", view.gaussian_blur_probability);
    s->reject_unknown();
  }
  if (auto s = r.child("solarize")) {
    s->number("threshold", view.solarize.threshold);
    s->number("probability", view.solarize_probability);
    s->reject_unknown();
  }
  if (auto s = r.child("amplitude_rescale")) {
    s->pair("range", view.amplitude_rescale.low, view.amplitude_rescale.high);
    s->number("probability", view.amplitude_rescale_probability);
    s->reject_unknown();
  }
  if (auto s = r.child("phase_shift")) {
    s->pair("range", view.phase_shift.low, view.phase_shift.high);
    s->number("probability", view.phase_shift_probability);
    s->reject_unknown();
  }
  if (auto s = r.child("frequency_mask")) {
    s->pair("range", view.frequency_mask.low, view.frequency_mask.high);
    s->number("probability", view.frequency_mask_probability);
    s->reject_unknown();
  }
  if (auto s = r.child("gaussian_mixture")) {
    s->count("components", view.gaussian_mixture.components);
    s->pair("sigma", view.gaussian_mixture.sigma_low, view.gaussian_mixture.sigma_high);
    s->flag("invert", view.gaussian_mixture.invert);
    s->number("probability", view.gaussian_mixture_probability);
    s->reject_unknown();
  }
  r.order("order", view.order);
  r.reject_unknown();
}

}  // namespace

ConfigReport parse_config(const json& doc) {
  ConfigReport report;
  Reader root(doc, "", report.violations);
  if (!root.valid()) return report;
  root.seed("seed", report.config.seed);
  if (auto left = root.child("left"); left && left->valid()) read_view(*left, report.config.left);
  if (auto right = root.child("right"); right && right->valid()) read_view(*right, report.config.right);
  root.reject_unknown();
  if (report.violations.empty()) report.violations = validate_config(report.config);
  return report;
}

ConfigReport parse_config_text(const std::string& text) {
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    ConfigReport report;
    report.violations.push_back({"<root>", "not valid JSON"});
    return report;
  }
  return parse_config(doc);
}

ConfigReport load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ConfigReport report;
    report.violations.push_back({"<file>", "cannot read " + path.string()});
    return report;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

std::vector<Violation> validate_config(const PipelineConfig& config) {
  auto out = config.left.check("left.");
  auto right = config.right.check("right.");
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

// ---------------------------------------------------------------------------
// Writing

json to_json(const ViewConfig& v) {
  return {
      {"order", order_name(v.order)},
      {"crop",
       {{"size", {v.crop.out_height, v.crop.out_width}},
        {"area", {v.crop.area_low, v.crop.area_high}},
        {"aspect", {v.crop.aspect_low, v.crop.aspect_high}},
        {"probability", v.crop_probability}}},
      {"color_jitter",
       {{"brightness", v.color_jitter.brightness},
        {"contrast", v.color_jitter.contrast},
        {"saturation", v.color_jitter.saturation},
        {"hue", v.color_jitter.hue},
        {"probability", v.color_jitter_probability}}},
      {"grayscale", {{"probability", v.grayscale_probability}}},
      {"horizontal_flip", {{"probability", v.horizontal_flip_probability}}},
      {"gaussian_blur",
       {{"sigma", {v.gaussian_blur.sigma_low, v.gaussian_blur.sigma_high}},
        {"kernel_size", v.gaussian_blur.kernel_size},
        {"probability", v.gaussian_blur_probability}}},
      {"solarize", {{"threshold", v.solarize.threshold}, {"probability", v.solarize_probability}}},
      {"amplitude_rescale",
       {{"range", {v.amplitude_rescale.low, v.amplitude_rescale.high}},
        {"probability", v.amplitude_rescale_probability}}},
      {"phase_shift",
       {{"range", {v.phase_shift.low, v.phase_shift.high}}, {"probability", v.phase_shift_probability}}},
      {"frequency_mask",
       {{"range", {v.frequency_mask.low, v.frequency_mask.high}},
        {"probability", v.frequency_mask_probability}}},
      {"gaussian_mixture",
       {{"components", v.gaussian_mixture.components},
        {"sigma", {v.gaussian_mixture.sigma_low, v.gaussian_mixture.sigma_high}},
        {"invert", v.gaussian_mixture.invert},
        {"probability", v.gaussian_mixture_probability}}},
  };
}

json to_json(const PipelineConfig& config) {
  return {{"seed", config.seed}, {"left", to_json(config.left)}, {"right", to_json(config.right)}};
}

json to_json(const Violation& violation) {
  return {{"field", violation.field}, {"message", violation.message}};
}

std::string config_hash(const PipelineConfig& config) { return hex64(fnv1a64(to_json(config).dump())); }

namespace {

json sample_to_json(const OpSample& sample) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return json::object();
        } else if constexpr (std::is_same_v<T, CropRect>) {
          return {{"top", s.top}, {"left", s.left}, {"height", s.height}, {"width", s.width}};
        } else if constexpr (std::is_same_v<T, JitterSample>) {
          json order = json::array();
          for (auto step : s.order) order.push_back(static_cast<int>(step));
          return {{"brightness", s.brightness}, {"contrast", s.contrast}, {"saturation", s.saturation},
                  {"hue", s.hue}, {"order", order}};
        } else if constexpr (std::is_same_v<T, BlurSample>) {
          return {{"sigma", s.sigma}, {"kernel_size", s.kernel_size}};
        } else if constexpr (std::is_same_v<T, SolarizeParams>) {
          return {{"threshold", s.threshold}};
        } else if constexpr (std::is_same_v<T, AmplitudeRescaleSample>) {
          return {{"low", s.low}, {"high", s.high}, {"noise_seed", s.noise_seed}};
        } else if constexpr (std::is_same_v<T, PhaseShiftSample>) {
          return {{"shift", s.shift}};
        } else if constexpr (std::is_same_v<T, FrequencyMaskSample>) {
          return {{"fraction", s.fraction}, {"mask_seed", s.mask_seed}};
        } else {
          json comps = json::array();
          for (const auto& g : s.components) {
            comps.push_back({g.center_u, g.center_v, g.sigma_u, g.sigma_v});
          }
          return {{"components", comps}, {"invert", s.invert}};
        }
      },
      sample);
}

}  // namespace

json trace_to_json(const OpTrace& trace) {
  json ops = json::array();
  for (const auto& op : trace.ops) ops.push_back({{"op", op_name(op.kind)}, {"params", sample_to_json(op.sample)}});
  return {{"order", order_name(trace.order)},
          {"size", {trace.out_height, trace.out_width}},
          {"ops", ops}};
}

std::string trace_digest(const OpTrace& trace) { return hex64(fnv1a64(trace_to_json(trace).dump())); }

}  // namespace fda
