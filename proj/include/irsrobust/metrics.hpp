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

#include "irsrobust/channel.hpp"
#include "irsrobust/config.hpp"
#include "irsrobust/csi.hpp"
#include "irsrobust/types.hpp"

#include <cstdint>
#include <functional>

namespace irs {

/// Interference-plus-noise power sigma^2 + sum_{k>=1} P_k g_k(v), in watts.
struct Denominator {
  double value = 0.0;
};

/// g_k(v) for interferer k >= 1. Throws std::domain_error for k == 0.
double interference_stat(const CVector& v, const ChannelStatistics& stats, int k);

Denominator denominator(const CVector& v, const ChannelStatistics& stats, const SystemConfig& cfg);

/// Row vector v^H G_hat + h_hat^H.
CRowVector effective_channel(const CVector& v, const CsiSample& csi);

/// Variance of (v^H dG + dh^H) w for unit-modulus v and unit w.
double effective_error_variance(const SystemConfig& cfg);

/// Bernstein-adjusted power for squared magnitude s, clamped at 0.
double bernstein_power(double s, double sigma_e2, double success_prob);

double signal_er(const CVector& v, const CsiSample& csi, const CVector& w, const SystemConfig& cfg);
double signal_gp1(const CVector& v, const CsiSample& csi, const CVector& w, const ErrorSetRadii& radii);
double signal_gp2(const CVector& v, const CsiSample& csi, const CVector& w, const SystemConfig& cfg);

/// log2(1 + P_0 |(v^H G + h^H) w|^2 / denom) on the true channel.
double capacity(const CVector& v, const CVector& w, const ChannelRealization& true_channel,
                const Denominator& denom, const SystemConfig& cfg);

using CsiSampler = std::function<CsiSample(Rng&)>;

/// Jensen upper bound on the ergodic rate, with the expectation of g_0^ER
/// replaced by a sample mean over `num_samples` CSI draws.
double ergodic_rate_upper_bound(const CVector& v, const SystemConfig& cfg, const ChannelStatistics& stats,
                                const CsiSampler& sampler, int num_samples, Rng& rng);

/// Complex multiply-add counter used to check per-slot cost.
std::uint64_t& op_counter();

void require_unit_norm(const CVector& w, const char* where);

}  // namespace irs
