// Copyright 2026 The nonrecip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "nonrecip/device.hpp"
#include "nonrecip/io.hpp"
#include "nonrecip/models.hpp"

/// Scenario configuration: flat `key = value` text with optional per-transmon
/// sections. Every key carries its unit in its name.
///
///   model = single_excitation
///   tau_ns = 145
///   lambda = 0.4974
///
///   [a]
///   alpha_mhz = 220
///   gamma_khz = 3
///
/// Inside section [a], `alpha_mhz` is the same key as the flat `alpha_a_mhz`.
namespace nonrecip {

struct ScenarioConfig {
  ModelKind model = ModelKind::SingleExcitation;
  double tau_ns = 145.0;
  std::optional<double> lambda = 0.4974;
  std::optional<double> target_phase_rad;
  double lambda_lo = 0.1;  ///< bracket for solving target_phase_rad
  double lambda_hi = 1.0;
  double g_a_mhz = 10.0;
  double g_b_mhz = 10.0;
  double delta_mhz = 345.0;
  double nu_mhz = 345.0;
  double omega_m_ghz = 5.0;
  std::array<double, 3> alpha_mhz{220.0, 210.0, 230.0};  ///< A, M, B
  std::array<double, 3> gamma_khz{3.0, 4.0, 5.0};        ///< A, M, B
  bool noise = true;
  std::optional<double> step_ns;
  std::size_t record_stride = 100;
  std::size_t samples = kDefaultPulseSamples;
  std::size_t ensemble_count = 1001;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;

  void validate() const {
    if (lambda.has_value() == target_phase_rad.has_value()) {
      throw ConfigError("exactly one of lambda and target_phase_rad must be given");
    }
    if (!(tau_ns > 0.0)) throw ConfigError("tau_ns must be positive");
    if (!(lambda_lo > 0.0) || !(lambda_lo < lambda_hi)) throw ConfigError("need 0 < lambda_lo < lambda_hi");
    if (samples < 2) throw ConfigError("samples must be at least 2");
    if (ensemble_count < 2) throw ConfigError("ensemble_count must be at least 2");
    if (record_stride == 0) throw ConfigError("record_stride must be at least 1");
    if (step_ns && !(*step_ns > 0.0)) throw ConfigError("step_ns must be positive");
    chain().validate();
  }

  ChainSpec chain() const {
    ChainSpec c;
    const double omega_m = ghz_to_rad_per_ns(omega_m_ghz);
    const double delta = mhz_to_rad_per_ns(delta_mhz);
    c.a = {"A", omega_m + delta, mhz_to_rad_per_ns(alpha_mhz[0]), khz_to_rad_per_ns(gamma_khz[0])};
    c.m = {"M", omega_m, mhz_to_rad_per_ns(alpha_mhz[1]), khz_to_rad_per_ns(gamma_khz[1])};
    c.b = {"B", omega_m + delta, mhz_to_rad_per_ns(alpha_mhz[2]), khz_to_rad_per_ns(gamma_khz[2])};
    c.g_a = mhz_to_rad_per_ns(g_a_mhz);
    c.g_b = mhz_to_rad_per_ns(g_b_mhz);
    c.nu_a = c.nu_b = mhz_to_rad_per_ns(nu_mhz);
    c.levels = (model == ModelKind::FullThreeLevel) ? 3 : 2;
    return c;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': '" + value + "' is not a number");
  return out;
}

inline std::size_t parse_count(const std::string& key, const std::string& value) {
  std::size_t out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': '" + value + "' is not a count");
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "on") return true;
  if (value == "false" || value == "off") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + value + "'");
}

inline int transmon_slot(char c) { return c == 'a' ? 0 : c == 'm' ? 1 : c == 'b' ? 2 : -1; }

}  // namespace detail

/// Parses scenario text on top of the defaults. Unknown keys are errors.
inline ScenarioConfig parse_scenario(std::string_view text) {
  ScenarioConfig c;
  bool saw_lambda = false, saw_target = false;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string s = detail::trim(line);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      section = detail::trim(std::string_view(s).substr(1, s.size() - 2));
      if (section.size() != 1 || detail::transmon_slot(section[0]) < 0) {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    std::string key = detail::trim(std::string_view(s).substr(0, eq));
    std::string value = detail::trim(std::string_view(s).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);

    if (!section.empty()) {
      // alpha_mhz inside [a] -> alpha_a_mhz
      const auto us = key.find('_');
      if (us == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": bad key " + key);
      key = key.substr(0, us) + "_" + section + key.substr(us);
    }

    if (key == "model") {
      c.model = parse_model_kind(value);
    } else if (key == "tau_ns") {
      c.tau_ns = detail::parse_double(key, value);
    } else if (key == "lambda") {
      c.lambda = detail::parse_double(key, value);
      saw_lambda = true;
    } else if (key == "target_phase_rad") {
      c.target_phase_rad = detail::parse_double(key, value);
      saw_target = true;
    } else if (key == "lambda_lo") {
      c.lambda_lo = detail::parse_double(key, value);
    } else if (key == "lambda_hi") {
      c.lambda_hi = detail::parse_double(key, value);
    } else if (key == "g_a_mhz") {
      c.g_a_mhz = detail::parse_double(key, value);
    } else if (key == "g_b_mhz") {
      c.g_b_mhz = detail::parse_double(key, value);
    } else if (key == "delta_mhz") {
      c.delta_mhz = detail::parse_double(key, value);
    } else if (key == "nu_mhz") {
      c.nu_mhz = detail::parse_double(key, value);
    } else if (key == "omega_m_ghz") {
      c.omega_m_ghz = detail::parse_double(key, value);
    } else if (key == "noise") {
      c.noise = detail::parse_bool(key, value);
    } else if (key == "step_ns") {
      c.step_ns = detail::parse_double(key, value);
    } else if (key == "record_stride") {
      c.record_stride = detail::parse_count(key, value);
    } else if (key == "samples") {
      c.samples = detail::parse_count(key, value);
    } else if (key == "ensemble_count") {
      c.ensemble_count = detail::parse_count(key, value);
    } else if (key.size() == 11 && (key.starts_with("alpha_") && key.ends_with("_mhz"))) {
      const int slot = detail::transmon_slot(key[6]);
      if (slot < 0) throw ConfigError("unknown key '" + key + "'");
      c.alpha_mhz[slot] = detail::parse_double(key, value);
    } else if (key.size() == 11 && (key.starts_with("gamma_") && key.ends_with("_khz"))) {
      const int slot = detail::transmon_slot(key[6]);
      if (slot < 0) throw ConfigError("unknown key '" + key + "'");
      c.gamma_khz[slot] = detail::parse_double(key, value);
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (saw_lambda && saw_target) throw ConfigError("give either lambda or target_phase_rad, not both");
  if (saw_target) c.lambda.reset();
  c.validate();
  return c;
}

inline ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str());
}

inline std::string serialize(const ScenarioConfig& c) {
  using io::format_number;
  std::string out;
  auto put = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  put("model", to_string(c.model));
  put("tau_ns", format_number(c.tau_ns));
  if (c.lambda) put("lambda", format_number(*c.lambda));
  if (c.target_phase_rad) put("target_phase_rad", format_number(*c.target_phase_rad));
  put("lambda_lo", format_number(c.lambda_lo));
  put("lambda_hi", format_number(c.lambda_hi));
  put("g_a_mhz", format_number(c.g_a_mhz));
  put("g_b_mhz", format_number(c.g_b_mhz));
  put("delta_mhz", format_number(c.delta_mhz));
  put("nu_mhz", format_number(c.nu_mhz));
  put("omega_m_ghz", format_number(c.omega_m_ghz));
  put("noise", c.noise ? "true" : "false");
  if (c.step_ns) put("step_ns", format_number(*c.step_ns));
  put("record_stride", std::to_string(c.record_stride));
  put("samples", std::to_string(c.samples));
  put("ensemble_count", std::to_string(c.ensemble_count));
  const char* names[] = {"a", "m", "b"};
  for (int k = 0; k < 3; ++k) {
    out += std::string("\n[") + names[k] + "]\n";
    put("alpha_mhz", format_number(c.alpha_mhz[k]));
    put("gamma_khz", format_number(c.gamma_khz[k]));
  }
  return out;
}

}  // namespace nonrecip
