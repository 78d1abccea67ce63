#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "bpc/dynamics.hpp"

// Model configuration files. Both formats use the same sections:
//
//   [matching]     s, omega
//   [preferences]  delta, sigma, pi_star, kappa (sets both sides),
//                  kappa_plus, kappa_minus, labor_force
//   [policy]       intercept (number or "efficient"), phi, enforce_zlb
//
// Missing keys keep their defaults. Unknown sections or keys are rejected.

namespace bpc::io {

/// Chooses the parser by extension (.toml or .json). An unreadable or
/// malformed file raises Error{io_failure}; unknown keys or wrongly typed
/// values raise Error{usage}.
ModelConfig load_config(const std::filesystem::path& path);

ModelConfig parse_config_toml(std::string_view text, ModelConfig base = default_config());
ModelConfig parse_config_json(std::string_view text, ModelConfig base = default_config());

/// Applies one "section.key=value" override, e.g. "policy.phi=0.5".
void apply_override(ModelConfig& config, std::string_view assignment);

/// Pretty-printed JSON that parse_config_json reads back unchanged.
std::string config_to_json(const ModelConfig& config);

}  // namespace bpc::io
