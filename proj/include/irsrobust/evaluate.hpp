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

#include "irsrobust/beamform.hpp"
#include "irsrobust/channel.hpp"
#include "irsrobust/config.hpp"
#include "irsrobust/csi.hpp"
#include "irsrobust/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace irs {

/// Sample mean with its standard error (sample std / sqrt(n)).
struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

Estimate estimate_of(const std::vector<double>& samples);

struct EvalSettings {
  int num_slots = 10000;
  std::uint64_t seed = 0;
  int jobs = 1;  // worker threads for the slot loop
  FallbackSettings fallback;
};

struct EvaluationReport {
  std::string scenario;  // ergodic or goodput
  std::string design_tag;
  std::optional<Estimate> ergodic_rate;
  std::optional<Estimate> avg_goodput;  // rho * E[r]
  std::optional<Estimate> empirical_goodput;  // E[1{C >= r} r]
  std::optional<Estimate> mean_rate;  // E[r]
  double success_prob = 0.0;
  int num_slots = 0;
  std::uint64_t seed = 0;
  int fallback_slots = 0;
  int degenerate_slots = 0;
  std::string config_hash;
};

/// Slot s uses the stream derive_seed(settings.seed, s), so the report does
/// not depend on `jobs`. Throws std::invalid_argument when num_slots < 2.
EvaluationReport eval_ergodic(const DesignResult& design, const SystemConfig& cfg, const ChannelStatistics& stats,
                              const EvalSettings& settings);

/// Throws std::invalid_argument when the design has no rate rule.
EvaluationReport eval_goodput(const DesignResult& design, const SystemConfig& cfg, const ChannelStatistics& stats,
                              const EvalSettings& settings);

/// Brute-force mean of |(v^H G_k + h_k^H) h_kk / ||h_kk|||^2; entry k per BS,
/// entry 0 is 0.
std::vector<double> oracle_interference(const CVector& v, const SystemConfig& cfg, const ChannelStatistics& stats,
                                        int num_draws, Rng& rng);

/// Error pair (dG, dh) in E that minimizes the MRT gain, scaled down so the
/// gain stops at 0 when the set reaches past it.
CsiSample worst_case_errors(const CVector& v, const CsiSample& csi, const ErrorSetRadii& radii);

struct WorstCaseResult {
  double analytic_gain = 0.0;  // |(v^H G + h^H) w| at the analytic point
  double analytic_capacity = 0.0;
  double probe_min_gain = 0.0;  // smallest gain over random points of E
  double probe_min_capacity = 0.0;
};

WorstCaseResult oracle_worst_case(const CVector& v, const CsiSample& csi, const ErrorSetRadii& radii,
                                  const Denominator& denom, const SystemConfig& cfg, int num_draws, Rng& rng);

}  // namespace irs
