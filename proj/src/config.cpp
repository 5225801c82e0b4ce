#include "amp/config.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace amp {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config key \"" + path + "\" " + what);
}

[[noreturn]] void fail_unknown(const std::string& path) {
  throw std::invalid_argument("unknown config key \"" + path + "\"");
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expects a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expects an integer");
  return j.get<int>();
}

std::uint64_t as_seed(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  fail(path, "expects a non-negative integer");
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expects true or false");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expects a string");
  return j.get<std::string>();
}

template <typename E>
struct EnumName {
  E value;
  const char* name;
};

const EnumName<PlantKind> kPlantNames[] = {
    {PlantKind::EXAMPLE1, "example1"},
    {PlantKind::EXAMPLE2, "example2"},
};

const EnumName<Safeguard> kSafeguardNames[] = {
    {Safeguard::CLAMP, "clamp"},
    {Safeguard::SKIP, "skip"},
};

const EnumName<FeedbackSource> kFeedbackNames[] = {
    {FeedbackSource::MODEL_HISTORY, "model_history"},
    {FeedbackSource::PLANT_HISTORY, "plant_history"},
};

const EnumName<RefShape> kRefShapeNames[] = {
    {RefShape::SINE, "sine"},
    {RefShape::CONSTANT, "constant"},
};

const EnumName<ScheduleKind> kScheduleNames[] = {
    {ScheduleKind::CONSTANT, "constant"},
    {ScheduleKind::LINEAR_RAMP, "linear_ramp"},
    {ScheduleKind::STEP, "step"},
};

const EnumName<Family> kFamilyNames[] = {
    {Family::HAAR, "haar"},     {Family::DB2, "db2"},
    {Family::DB3, "db3"},       {Family::DB4, "db4"},
    {Family::DB5, "db5"},       {Family::BIOR3_1, "bior3_1"},
    {Family::BIOR3_3, "bior3_3"},
};

const EnumName<Kind> kKindNames[] = {
    {Kind::SCALING, "scaling"},
    {Kind::WAVELET, "wavelet"},
};

template <typename E, std::size_t N>
E parse_enum(const json& j, const std::string& path,
             const EnumName<E> (&table)[N]) {
  const std::string name = as_string(j, path);
  for (const EnumName<E>& entry : table) {
    if (name == entry.name) return entry.value;
  }
  std::string expected;
  for (const EnumName<E>& entry : table) {
    if (!expected.empty()) expected += ", ";
    expected += entry.name;
  }
  fail(path, "has unknown value \"" + name + "\" (expected one of: " +
                 expected + ")");
}

template <typename E, std::size_t N>
const char* enum_name(E value, const EnumName<E> (&table)[N]) {
  for (const EnumName<E>& entry : table) {
    if (entry.value == value) return entry.name;
  }
  return "?";
}

std::vector<double> as_number_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expects an array of numbers");
  std::vector<double> values;
  values.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    values.push_back(
        as_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return values;
}

std::vector<std::complex<double>> as_poles(const json& j,
                                           const std::string& path) {
  if (!j.is_array()) fail(path, "expects an array of poles");
  std::vector<std::complex<double>> poles;
  poles.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string item_path = path + "[" + std::to_string(i) + "]";
    const json& item = j[i];
    if (item.is_number()) {
      poles.emplace_back(item.get<double>(), 0.0);
    } else if (item.is_array() && item.size() == 2) {
      poles.emplace_back(as_number(item[0], item_path + "[0]"),
                         as_number(item[1], item_path + "[1]"));
    } else {
      fail(item_path, "expects a real number or a [re, im] pair");
    }
  }
  return poles;
}

void apply_reference(ReferenceSpec& ref, const json& j,
                     const std::string& prefix) {
  if (!j.is_object()) fail(prefix, "expects an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix + "." + key;
    if (key == "shape") {
      ref.shape = parse_enum(value, path, kRefShapeNames);
    } else if (key == "amplitude") {
      ref.amplitude = as_number(value, path);
    } else if (key == "frequency") {
      ref.frequency = as_number(value, path);
    } else {
      fail_unknown(path);
    }
  }
}

void apply_schedule(ParamSchedule& schedule, const json& j,
                    const std::string& prefix) {
  if (!j.is_object()) fail(prefix, "expects an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix + "." + key;
    if (key == "kind") {
      schedule.kind = parse_enum(value, path, kScheduleNames);
    } else if (key == "start") {
      schedule.start_value = as_number(value, path);
    } else if (key == "end") {
      schedule.end_value = as_number(value, path);
    } else if (key == "t_start") {
      schedule.t_start = as_number(value, path);
    } else if (key == "t_end") {
      schedule.t_end = as_number(value, path);
    } else {
      fail_unknown(path);
    }
  }
}

void apply_regressor(RegressorConfig& regressor, const json& j,
                     const std::string& prefix) {
  if (!j.is_object()) fail(prefix, "expects an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix + "." + key;
    if (key == "p") {
      regressor.p = as_int(value, path);
    } else if (key == "q") {
      regressor.q = as_int(value, path);
    } else {
      fail_unknown(path);
    }
  }
}

void apply_scalarization(ScalarizationMap& map, const json& j,
                         const std::string& prefix) {
  if (!j.is_object()) fail(prefix, "expects an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix + "." + key;
    if (key == "weights") {
      map.weights = as_number_array(value, path);
    } else if (key == "offset") {
      map.offset = as_number(value, path);
    } else {
      fail_unknown(path);
    }
  }
}

DictionaryEntry parse_entry(const json& j, const std::string& prefix) {
  if (!j.is_object()) fail(prefix, "expects an object");
  DictionaryEntry entry;
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix + "." + key;
    if (key == "family") {
      entry.family = parse_enum(value, path, kFamilyNames);
    } else if (key == "kind") {
      entry.kind = parse_enum(value, path, kKindNames);
    } else if (key == "shifts") {
      entry.shifts = as_int(value, path);
    } else if (key == "scale") {
      entry.scale = as_number(value, path);
    } else {
      fail_unknown(path);
    }
  }
  return entry;
}

void apply_dictionary(DictionaryConfig& dictionary, const json& j,
                      const std::string& prefix) {
  if (!j.is_object()) fail(prefix, "expects an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix + "." + key;
    if (key == "levels") {
      dictionary.levels = as_int(value, path);
    } else if (key == "entries") {
      if (!value.is_array()) fail(path, "expects an array of entries");
      std::vector<DictionaryEntry> entries;
      entries.reserve(value.size());
      for (std::size_t i = 0; i < value.size(); ++i) {
        entries.push_back(
            parse_entry(value[i], path + "[" + std::to_string(i) + "]"));
      }
      dictionary.entries = std::move(entries);
    } else if (key == "scalarization") {
      apply_scalarization(dictionary.scalarization, value, path);
    } else {
      fail_unknown(path);
    }
  }
}

void apply_noise(SimConfig& config, const json& j, const std::string& prefix) {
  if (!j.is_object()) fail(prefix, "expects an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix + "." + key;
    if (key == "std") {
      config.noise_std = as_number(value, path);
    } else {
      fail_unknown(path);
    }
  }
}

}  // namespace

void apply_json(SimConfig& config, const json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("config root must be a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "plant") {
      config.plant = parse_enum(value, key, kPlantNames);
    } else if (key == "schedule") {
      apply_schedule(config.schedule, value, key);
    } else if (key == "dictionary") {
      apply_dictionary(config.dictionary, value, key);
    } else if (key == "regressor") {
      apply_regressor(config.regressor, value, key);
    } else if (key == "poles") {
      config.poles = as_poles(value, key);
    } else if (key == "s_coefficients") {
      config.s_coefficients = as_number_array(value, key);
    } else if (key == "reference") {
      apply_reference(config.reference, value, key);
    } else if (key == "ts") {
      config.ts = as_number(value, key);
    } else if (key == "duration") {
      config.duration = as_number(value, key);
    } else if (key == "noise") {
      apply_noise(config, value, key);
    } else if (key == "seed") {
      config.seed = as_seed(value, key);
    } else if (key == "epsilon") {
      config.epsilon = as_number(value, key);
    } else if (key == "safeguard") {
      config.safeguard = parse_enum(value, key, kSafeguardNames);
    } else if (key == "feedback") {
      config.feedback = parse_enum(value, key, kFeedbackNames);
    } else if (key == "oracle") {
      config.oracle = as_bool(value, key);
    } else if (key == "window_start") {
      config.window_start = as_number(value, key);
    } else {
      fail_unknown(key);
    }
  }
}

void apply_override(SimConfig& config, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("override must look like key=value: \"" +
                                assignment + "\"");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);

  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = text;  // bare words become strings

  // Build {"a": {"b": value}} from "a.b" so the merge reuses the same
  // key checking (and error wording) as file configs.
  json doc = value;
  std::size_t end = key.size();
  while (true) {
    const std::size_t dot = key.rfind('.', end - 1);
    const std::size_t start = (dot == std::string::npos) ? 0 : dot + 1;
    doc = json{{key.substr(start, end - start), std::move(doc)}};
    if (dot == std::string::npos || dot == 0) break;
    end = dot;
  }
  apply_json(config, doc);
}

json load_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::invalid_argument("config not found: " + path);
  }
  json doc = json::parse(file, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw std::invalid_argument("config is not valid JSON: " + path);
  }
  return doc;
}

SimConfig custom_base(const json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("config root must be a JSON object");
  }
  PlantKind plant = PlantKind::EXAMPLE1;
  if (doc.contains("plant")) {
    plant = parse_enum(doc.at("plant"), "plant", kPlantNames);
  }
  return example_config(plant);
}

json config_to_json(const SimConfig& config) {
  json entries = json::array();
  for (const DictionaryEntry& entry : config.dictionary.entries) {
    entries.push_back({{"family", enum_name(entry.family, kFamilyNames)},
                       {"kind", enum_name(entry.kind, kKindNames)},
                       {"shifts", entry.shifts},
                       {"scale", entry.scale}});
  }
  json poles = json::array();
  for (const std::complex<double>& pole : config.poles) {
    poles.push_back({pole.real(), pole.imag()});
  }
  return json{
      {"plant", enum_name(config.plant, kPlantNames)},
      {"schedule",
       {{"kind", enum_name(config.schedule.kind, kScheduleNames)},
        {"start", config.schedule.start_value},
        {"end", config.schedule.end_value},
        {"t_start", config.schedule.t_start},
        {"t_end", config.schedule.t_end}}},
      {"dictionary",
       {{"levels", config.dictionary.levels},
        {"entries", entries},
        {"scalarization",
         {{"weights", config.dictionary.scalarization.weights},
          {"offset", config.dictionary.scalarization.offset}}}}},
      {"regressor",
       {{"p", config.regressor.p}, {"q", config.regressor.q}}},
      {"poles", poles},
      {"s_coefficients", config.s_coefficients},
      {"reference",
       {{"shape", enum_name(config.reference.shape, kRefShapeNames)},
        {"amplitude", config.reference.amplitude},
        {"frequency", config.reference.frequency}}},
      {"ts", config.ts},
      {"duration", config.duration},
      {"noise", {{"std", config.noise_std}}},
      {"seed", config.seed},
      {"epsilon", config.epsilon},
      {"safeguard", enum_name(config.safeguard, kSafeguardNames)},
      {"feedback", enum_name(config.feedback, kFeedbackNames)},
      {"oracle", config.oracle},
      {"window_start", config.window_start},
  };
}

}  // namespace amp
