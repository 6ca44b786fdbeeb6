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

#include "irsrobust/config.hpp"
#include "irsrobust/evaluate.hpp"
#include "irsrobust/io.hpp"
#include "irsrobust/ssca.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace irs {

/// irs_size: M_r = N_r. rician: K_{0,r} = K_{r,0}. err_std: delta_1 = delta_2.
/// err_std_rel: delta_1, delta_2 as multiples of the per-entry channel std of
/// G_{0,0} and h_{0,0}. dist_user: d_{0,0} along the bisector. dist_irs: IRS x.
enum class SweepAxis { IrsSize, Rician, ErrStd, ErrStdRel, DistUser, DistIrs };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& s);

struct SweepSpec {
  std::string config_path;  // relative paths resolve against the spec file
  SweepAxis axis = SweepAxis::IrsSize;
  std::vector<double> values;
  std::vector<std::string> designs;
  std::vector<std::string> scenarios{"ergodic"};
  int slots = 10000;
  SscaSettings ssca;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on a malformed spec.
SweepSpec sweep_spec_from_json(const json& j, const std::string& base_dir = ".");
json sweep_spec_to_json(const SweepSpec& spec);

/// Copy of `base` with the axis set to `value`.
SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value);

struct SweepCell {
  std::string scenario;
  double value = 0.0;
  std::string design;
  std::uint64_t design_seed = 0;
  std::uint64_t eval_seed = 0;
  bool ok = false;
  std::string error;
  Estimate result;
  double success_prob = 0.0;
};

/// Design seeds depend on (scenario, value, design); evaluation seeds depend on
/// (scenario, value) only, so designs in a row see the same channel draws.
std::vector<SweepCell> plan_sweep(const SweepSpec& spec);

/// Fills one planned cell. Failures are stored in the cell, not thrown.
void run_cell(SweepCell& cell, const SweepSpec& spec, const SystemConfig& base);

std::vector<SweepCell> run_sweep(const SweepSpec& spec, const SystemConfig& base, int jobs = 1);

/// Writes <scenario>_<axis>.csv per scenario plus manifest.json into out_dir.
void write_sweep_outputs(const SweepSpec& spec, const SystemConfig& base, const std::vector<SweepCell>& cells,
                         const std::string& out_dir);

}  // namespace irs
