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

#include <numbers>
#include <stdexcept>
#include <string>

/// Units and the error hierarchy shared by every module.
///
/// Frequencies are angular frequencies in rad/ns and times are in ns
/// throughout the library. Helpers below convert from the lab units used in
/// configuration files (MHz, GHz, kHz, all meaning 2*pi*f).
namespace nonrecip {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double mhz_to_rad_per_ns(double mhz) { return kTwoPi * mhz * 1e-3; }
constexpr double ghz_to_rad_per_ns(double ghz) { return kTwoPi * ghz; }
constexpr double khz_to_rad_per_ns(double khz) { return kTwoPi * khz * 1e-6; }

constexpr double rad_per_ns_to_mhz(double w) { return w / (kTwoPi * 1e-3); }
constexpr double rad_per_ns_to_ghz(double w) { return w / kTwoPi; }
constexpr double rad_per_ns_to_khz(double w) { return w / (kTwoPi * 1e-6); }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (time off the grid, bad dims).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A requested effective coupling cannot be produced by any drive amplitude.
class UnattainableDriveError : public Error {
 public:
  UnattainableDriveError(const std::string& what, double worst_time_ns, double worst_ratio)
      : Error(what), worst_time_ns_(worst_time_ns), worst_ratio_(worst_ratio) {}
  double worst_time_ns() const { return worst_time_ns_; }
  double worst_ratio() const { return worst_ratio_; }

 private:
  double worst_time_ns_;
  double worst_ratio_;
};

class RootFindingError : public Error {
 public:
  using Error::Error;
};

class IntegratorError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nonrecip
