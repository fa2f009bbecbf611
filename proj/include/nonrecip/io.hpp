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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nonrecip/invariant.hpp"
#include "nonrecip/metrics.hpp"

/// CSV and JSON output. Numbers are written with 17 significant digits, '.'
/// as decimal separator and LF line endings so reruns are byte-identical.
namespace nonrecip::io {

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(const std::vector<double>& row) {
    if (row.size() != header_.size()) throw DomainError("csv row width does not match header");
    rows_.push_back(row);
  }

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
    out += '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format_number(row[i]);
      }
      out += '\n';
    }
    return out;
  }

  void write(const std::filesystem::path& path) const { write_text(path, str()); }

  static void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw Error("failed writing " + path.string());
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

inline CsvTable pulse_table(const PulsePair& pulses) {
  CsvTable t({"t_ns", "gprime_a_rad_per_ns", "gprime_b_rad_per_ns"});
  for (std::size_t k = 0; k < pulses.size(); ++k) t.add_row({pulses.times()[k], pulses.g_a()[k], pulses.g_b()[k]});
  return t;
}

inline CsvTable drive_table(const DriveWaveform& drives) {
  CsvTable t({"t_ns", "eta_a", "eta_b"});
  for (std::size_t k = 0; k < drives.times().size(); ++k) {
    t.add_row({drives.times()[k], drives.eta_a()[k], drives.eta_b()[k]});
  }
  return t;
}

inline CsvTable sweep_table(const PhaseSweep& sweep) {
  CsvTable t({"lambda", "theta_plus_rad", "theta_plus_reduced_rad"});
  for (const auto& p : sweep.points) t.add_row({p.lambda, p.theta_plus, p.theta_plus_reduced});
  return t;
}

inline CsvTable transfer_table(const TransferReport& r) {
  CsvTable t({"t_ns", "p_100", "p_010", "p_001", "leakage", "fidelity"});
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    t.add_row({r.times[k], r.populations[0][k], r.populations[1][k], r.populations[2][k], r.leakage[k],
               r.fidelity_curve[k]});
  }
  return t;
}

inline CsvTable ensemble_table(const EnsembleReport& r) {
  CsvTable t({"t_ns", "fidelity"});
  for (std::size_t k = 0; k < r.times.size(); ++k) t.add_row({r.times[k], r.fidelity_curve[k]});
  return t;
}

using nlohmann::ordered_json;

inline ordered_json complex_array(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

inline ordered_json to_json(const TransferReport& r) {
  ordered_json j;
  j["model"] = r.model;
  j["noise"] = r.noise;
  j["initial"] = r.initial;
  j["target_basis"] = single_excitation_basis().names();
  j["target"] = complex_array(r.target.amplitudes());
  j["fidelity"] = r.fidelity;
  j["final_populations"] = {{"100", r.populations[0].back()}, {"010", r.populations[1].back()},
                            {"001", r.populations[2].back()}};
  j["final_leakage"] = r.final_leakage;
  j["samples"] = r.times.size();
  return j;
}

inline ordered_json to_json(const EnsembleReport& r) {
  ordered_json j;
  j["model"] = r.model;
  j["noise"] = r.noise;
  j["count"] = r.count;
  j["theta_min"] = r.theta_min;
  j["theta_max"] = r.theta_max;
  j["fidelity"] = r.fidelity;
  j["initial_fidelity"] = r.fidelity_curve.front();
  j["samples"] = r.times.size();
  return j;
}

inline void write_json(const std::filesystem::path& path, const ordered_json& j) {
  CsvTable::write_text(path, j.dump(2) + "\n");
}

}  // namespace nonrecip::io
