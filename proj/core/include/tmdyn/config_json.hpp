#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tmdyn/config.hpp"

namespace tmdyn {

enum class UnknownKeys { kError, kWarn };

/// Parses the flat config document
///   {rho, delta_plus, delta_minus, v_norm, t_pm, m_star_plus, m_star_minus,
///    eta, init: {m, r_plus, r_minus, q}}
/// Missing keys keep their TMConfig defaults; `init` may be omitted (zero
/// init). Unknown keys throw Error(kConfigError) with the key path, or are
/// appended to `warnings` under UnknownKeys::kWarn. The result is not
/// validated; call validate_config.
TMConfig parse_config_json(const std::string& text, UnknownKeys policy = UnknownKeys::kError,
                           std::vector<std::string>* warnings = nullptr);
TMConfig read_config_json(std::istream& in, UnknownKeys policy = UnknownKeys::kError,
                          std::vector<std::string>* warnings = nullptr);

/// Serializes with round-trip precision.
std::string config_to_json(const TMConfig& cfg, int indent = 2);

}  // namespace tmdyn
