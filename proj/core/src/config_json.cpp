#include "tmdyn/config_json.hpp"

#include <istream>
#include <iterator>
#include <json.hpp>

#include "tmdyn/error.hpp"

namespace tmdyn {

namespace {

using nlohmann::json;

double number_at(const json& node, const std::string& path) {
  if (!node.is_number()) throw Error(ErrorCode::kConfigError, path, "expected a number");
  return node.get<double>();
}

void unknown_key(const std::string& path, UnknownKeys policy, std::vector<std::string>* warnings) {
  if (policy == UnknownKeys::kError) throw Error(ErrorCode::kConfigError, path, "unknown key");
  if (warnings) warnings->push_back(path);
}

}  // namespace

TMConfig parse_config_json(const std::string& text, UnknownKeys policy,
                           std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigError, "", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kConfigError, "", "config must be a JSON object");

  TMConfig cfg;
  for (const auto& [key, node] : doc.items()) {
    if (key == "init") {
      if (!node.is_object()) throw Error(ErrorCode::kConfigError, "init", "expected an object");
      for (const auto& [sub, value] : node.items()) {
        const std::string path = "init." + sub;
        if (sub == "m" || sub == "r_plus" || sub == "r_minus" || sub == "q") {
          set_config_field(cfg, path, number_at(value, path));
        } else {
          unknown_key(path, policy, warnings);
        }
      }
      continue;
    }
    if (key == "rho" || key == "delta_plus" || key == "delta_minus" || key == "v_norm" ||
        key == "t_pm" || key == "m_star_plus" || key == "m_star_minus" || key == "eta") {
      set_config_field(cfg, key, number_at(node, key));
    } else {
      unknown_key(key, policy, warnings);
    }
  }
  return cfg;
}

TMConfig read_config_json(std::istream& in, UnknownKeys policy,
                          std::vector<std::string>* warnings) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_config_json(text, policy, warnings);
}

std::string config_to_json(const TMConfig& cfg, int indent) {
  json doc = {
      {"rho", cfg.rho},
      {"delta_plus", cfg.delta_plus},
      {"delta_minus", cfg.delta_minus},
      {"v_norm", cfg.v_norm},
      {"t_pm", cfg.t_pm},
      {"m_star_plus", cfg.m_star_plus},
      {"m_star_minus", cfg.m_star_minus},
      {"eta", cfg.eta},
      {"init",
       {{"m", cfg.init.m}, {"r_plus", cfg.init.r_plus}, {"r_minus", cfg.init.r_minus},
        {"q", cfg.init.q}}},
  };
  return doc.dump(indent);
}

}  // namespace tmdyn
