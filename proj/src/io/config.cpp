#include "bpc/io/config.hpp"

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <toml.hpp>
#include <variant>

#include "bpc/error.hpp"

namespace bpc::io {
namespace {

using Value = std::variant<double, bool, std::string>;

[[noreturn]] void bad_type(std::string_view key, std::string_view expected) {
  throw Error(ErrorKind::usage,
              "config key '" + std::string(key) + "' expects " + std::string(expected));
}

double as_number(std::string_view key, const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  bad_type(key, "a number");
}

bool as_bool(std::string_view key, const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  bad_type(key, "true or false");
}

void set_key(ModelConfig& c, std::string_view key, const Value& v) {
  auto& pr = c.prefs;
  if (key == "matching.s") {
    c.matching.s = as_number(key, v);
  } else if (key == "matching.omega") {
    c.matching.omega = as_number(key, v);
  } else if (key == "preferences.delta") {
    pr.delta = as_number(key, v);
  } else if (key == "preferences.sigma") {
    pr.sigma = as_number(key, v);
  } else if (key == "preferences.pi_star") {
    pr.pi_star = as_number(key, v);
  } else if (key == "preferences.kappa") {
    pr.kappa_plus = pr.kappa_minus = as_number(key, v);
  } else if (key == "preferences.kappa_plus") {
    pr.kappa_plus = as_number(key, v);
  } else if (key == "preferences.kappa_minus") {
    pr.kappa_minus = as_number(key, v);
  } else if (key == "preferences.labor_force") {
    pr.labor_force = as_number(key, v);
  } else if (key == "policy.phi") {
    c.policy.phi = as_number(key, v);
  } else if (key == "policy.enforce_zlb") {
    c.policy.enforce_zlb = as_bool(key, v);
  } else if (key == "policy.intercept") {
    if (const auto* s = std::get_if<std::string>(&v)) {
      if (*s != "efficient") bad_type(key, "a number or \"efficient\"");
      c.policy.intercept.reset();
    } else {
      c.policy.intercept = as_number(key, v);
    }
  } else {
    throw Error(ErrorKind::usage, "unknown config key '" + std::string(key) + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_failure, "cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ModelConfig parse_config_toml(std::string_view text, ModelConfig base) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    throw Error(ErrorKind::io_failure, std::string("malformed TOML config: ") +
                                           std::string(e.description()));
  }
  for (const auto& [section, node] : root) {
    const auto* table = node.as_table();
    if (!table) {
      throw Error(ErrorKind::usage,
                  "config entry '" + std::string(section.str()) + "' must be a section");
    }
    for (const auto& [name, item] : *table) {
      const std::string key = std::string(section.str()) + "." + std::string(name.str());
      if (const auto d = item.value<double>(); d && (item.is_floating_point() || item.is_integer())) {
        set_key(base, key, *d);
      } else if (const auto b = item.value<bool>(); b && item.is_boolean()) {
        set_key(base, key, *b);
      } else if (const auto s = item.value<std::string>()) {
        set_key(base, key, *s);
      } else {
        bad_type(key, "a scalar value");
      }
    }
  }
  return base;
}

ModelConfig parse_config_json(std::string_view text, ModelConfig base) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::io_failure, std::string("malformed JSON config: ") + e.what());
  }
  if (!root.is_object()) throw Error(ErrorKind::usage, "JSON config must be an object");
  for (const auto& [section, table] : root.items()) {
    if (!table.is_object()) {
      throw Error(ErrorKind::usage, "config entry '" + section + "' must be a section");
    }
    for (const auto& [name, item] : table.items()) {
      const std::string key = section + "." + name;
      if (item.is_number()) {
        set_key(base, key, item.get<double>());
      } else if (item.is_boolean()) {
        set_key(base, key, item.get<bool>());
      } else if (item.is_string()) {
        set_key(base, key, item.get<std::string>());
      } else {
        bad_type(key, "a scalar value");
      }
    }
  }
  return base;
}

ModelConfig load_config(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext != ".toml" && ext != ".json") {
    throw Error(ErrorKind::usage, "config file must end in .toml or .json: " + path.string());
  }
  const std::string text = read_file(path);
  return ext == ".toml" ? parse_config_toml(text) : parse_config_json(text);
}

void apply_override(ModelConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw Error(ErrorKind::usage,
                "override must look like section.key=value: '" + std::string(assignment) + "'");
  }
  const auto key = assignment.substr(0, eq);
  const auto text = assignment.substr(eq + 1);
  if (text == "true" || text == "false") {
    set_key(config, key, text == "true");
    return;
  }
  double number = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), number);
  if (ec == std::errc{} && ptr == text.data() + text.size() && !text.empty()) {
    set_key(config, key, number);
  } else {
    set_key(config, key, std::string(text));
  }
}

std::string config_to_json(const ModelConfig& c) {
  nlohmann::ordered_json j;
  j["matching"] = {{"s", c.matching.s}, {"omega", c.matching.omega}};
  j["preferences"] = {{"delta", c.prefs.delta},
                      {"sigma", c.prefs.sigma},
                      {"pi_star", c.prefs.pi_star},
                      {"kappa_plus", c.prefs.kappa_plus},
                      {"kappa_minus", c.prefs.kappa_minus},
                      {"labor_force", c.prefs.labor_force}};
  j["policy"]["intercept"] =
      c.policy.intercept ? nlohmann::ordered_json(*c.policy.intercept) : "efficient";
  j["policy"]["phi"] = c.policy.phi;
  j["policy"]["enforce_zlb"] = c.policy.enforce_zlb;
  return j.dump(2) + "\n";
}

}  // namespace bpc::io
