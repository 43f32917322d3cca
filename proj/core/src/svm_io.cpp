#include "json.hpp"

#include "stylo/error.hpp"
#include "stylo/svm.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "stylo-svm";
constexpr int kVersion = 1;

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("model file: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("model file: bad value for '") + key + "'");
  }
}

}  // namespace

std::string model_to_json(const SvmModel& model) {
  json config = {
      {"C", model.config.c},
      {"gamma", model.config.gamma ? json(*model.config.gamma) : json("scale")},
      {"kkt_tolerance", model.config.kkt_tolerance},
      {"max_passes", model.config.max_passes},
      {"seed", model.config.seed},
      {"class_weighted", model.config.class_weighted},
      {"max_iterations", model.config.max_iterations},
  };
  json j = {
      {"format", kFormat},
      {"version", kVersion},
      {"config", config},
      {"gamma", model.gamma},
      {"C", model.c},
      {"class_C", model.class_c},
      {"bias", model.bias},
      {"feature_names", model.feature_names},
      {"registry_version", model.registry_version},
      {"normalization", nullptr},
      {"selected_features", nullptr},
      {"support_vectors", model.support_vectors},
      {"dual_coefficients", model.dual_coefficients},
  };
  if (model.normalization) j["normalization"] = {{"min", model.normalization->min}, {"max", model.normalization->max}};
  if (model.selected_features) j["selected_features"] = *model.selected_features;
  return j.dump(1) + "\n";
}

SvmModel model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what(), 0);
  }
  if (!j.is_object() || field<std::string>(j, "format") != kFormat) {
    throw ValidationError("not a stylo SVM model file");
  }
  if (const int version = field<int>(j, "version"); version != kVersion) {
    throw ValidationError("unsupported model format version " + std::to_string(version));
  }
  SvmModel m;
  const json& config = j.at("config");
  m.config.c = field<double>(config, "C");
  if (config.at("gamma").is_string()) {
    if (config.at("gamma") != "scale") throw ValidationError("model file: unknown gamma policy");
  } else {
    m.config.gamma = field<double>(config, "gamma");
  }
  m.config.kkt_tolerance = field<double>(config, "kkt_tolerance");
  m.config.max_passes = field<int>(config, "max_passes");
  m.config.seed = field<std::uint64_t>(config, "seed");
  m.config.class_weighted = field<bool>(config, "class_weighted");
  m.config.max_iterations = field<std::size_t>(config, "max_iterations");
  m.gamma = field<double>(j, "gamma");
  m.c = field<double>(j, "C");
  m.class_c = field<std::array<double, 2>>(j, "class_C");
  m.bias = field<double>(j, "bias");
  m.feature_names = field<std::vector<std::string>>(j, "feature_names");
  m.registry_version = field<std::string>(j, "registry_version");
  if (!j.at("normalization").is_null()) {
    MinMaxParams p;
    p.feature_names = m.feature_names;
    p.min = field<std::vector<double>>(j.at("normalization"), "min");
    p.max = field<std::vector<double>>(j.at("normalization"), "max");
    m.normalization = std::move(p);
  }
  if (!j.at("selected_features").is_null()) {
    m.selected_features = field<std::vector<std::string>>(j, "selected_features");
  }
  m.support_vectors = field<std::vector<std::vector<double>>>(j, "support_vectors");
  m.dual_coefficients = field<std::vector<double>>(j, "dual_coefficients");
  validate_model(m);
  return m;
}

void save_model(const SvmModel& model, const std::string& path) { write_file(path, model_to_json(model)); }

SvmModel load_model(const std::string& path) { return model_from_json(read_file(path)); }

}  // namespace stylo
