// SPDX-License-Identifier: Apache-2.0
//
// irsrobust: robust beamforming and quasi-static IRS phase-shift design
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace irs {

/// Uniform rectangular array: rows x cols elements, spacing d/lambda.
struct UraGeometry {
  int rows = 1;
  int cols = 1;
  double spacing = 0.5;

  int size() const { return rows * cols; }
};

/// Azimuth / elevation pair in radians.
struct AnglePair {
  double azimuth = 0.0;
  double elevation = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Large-scale power of one link: either an explicit alpha or a
/// (distance, path-loss exponent) pair resolved as 1 / (1000 d^exponent).
struct LinkGain {
  std::optional<double> alpha;
  std::optional<double> distance;
  std::optional<double> exponent;
  bool distance_from_layout = false;  // distance was computed from coordinates

  double resolve() const;
};

struct BsConfig {
  UraGeometry array;
  double tx_power = 1.0;  // watts
  double rician_irs = 0.0;  // K_{k,r}
  AnglePair departure;  // BS_k -> IRS, seen at the BS
  AnglePair irs_arrival{0.7853981633974483, 0.7853981633974483};  // BS_k -> IRS, seen at the IRS
  LinkGain direct;  // BS_k -> user 0
  LinkGain to_irs;  // BS_k -> IRS
  double alpha_self = 1.0;  // BS_k -> user k; cancels under MRT
  std::optional<Point2> position;
};

struct IrsConfig {
  UraGeometry array{8, 8, 0.5};
  double rician_user = 0.0;  // K_{r,0}
  AnglePair user_departure;  // IRS -> user 0
  LinkGain to_user;
  std::optional<Point2> position;
};

/// Every deterministic scenario parameter. Index 0 of `bs` is the serving BS.
struct SystemConfig {
  std::vector<BsConfig> bs;
  IrsConfig irs;
  double noise_power = 1e-12;  // watts
  double err_std_cascaded = 0.0;  // delta_1
  double err_std_direct = 0.0;  // delta_2
  double success_prob = 0.95;  // rho
  bool los_only = false;  // infinite Rician factor on every IRS link
  std::optional<Point2> user_position;

  int num_interferers() const { return static_cast<int>(bs.size()) - 1; }
  int irs_size() const { return irs.array.size(); }

  /// Throws ConfigError describing the first violated invariant.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// alpha = 1 / (1000 d^exponent), i.e. -30 - 10 exponent log10(d) dB.
double pathloss_alpha(double distance, double exponent);

/// Fills every link distance that is not given explicitly from the BS / IRS /
/// user coordinates. Links with an explicit alpha are left untouched.
void apply_layout(SystemConfig& cfg);

/// Moves user 0 onto the perpendicular bisector of BS 1 and BS 2 at distance
/// d00 from BS 0 and refreshes position-derived distances. Needs positions
/// for BS 0..2.
void place_user_on_bisector(SystemConfig& cfg, double d00);

/// Parses the key = value config format. `source` is used in messages.
SystemConfig parse_config(const std::string& text, const std::string& source = "<string>");
SystemConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const SystemConfig& cfg);

/// FNV-1a over the canonical text, hex encoded.
std::string config_hash(const SystemConfig& cfg);

/// Evaluates the small arithmetic language accepted for config values:
/// numbers, pi, sqrt(.), + - * / and parentheses.
double eval_expression(const std::string& expr);

}  // namespace irs
