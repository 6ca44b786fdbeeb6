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
#include "irsrobust/ssca.hpp"

#include <string>

namespace irs {

enum class BaselineKind { NonRobustNoInterf, NonRobustWithInterf, RobustNoInterf, RobustWithInterf };

std::string baseline_tag(BaselineKind kind);

/// LoS phase alignment v_n = exp(j(angle a_n(phi_{r,0}) - angle a_n(delta_{0,r}))).
/// With `literal` set, v_n = exp(j angle(a_n(delta_{0,r}) - a_n(phi_{r,0}))) instead.
DesignResult baseline_v1(const SystemConfig& cfg, const ChannelStatistics& stats, bool literal = false);

/// SSCA on the ergodic objective with perfect CSIT (delta_1 = delta_2 = 0).
DesignResult baseline_v2(const SystemConfig& cfg, const ChannelStatistics& stats, const SscaSettings& settings);

/// The proposed design of `kind` with every interferer power set to zero.
DesignResult baseline_robust_no_interf(DesignKind kind, const SystemConfig& cfg, const ChannelStatistics& stats,
                                       const SscaSettings& settings);

/// SSCA on P_0 ||v^H G_bar_0||^2 / (sigma^2 + sum_{k>=1} P_k ||v^H G_bar_k||^2).
DesignResult baseline_v4(const SystemConfig& cfg, const ChannelStatistics& stats, const SscaSettings& settings);

/// Deterministic LoS ratio used by baseline_v4, with its gradient.
ObjectiveValue los_ratio_objective(const CVector& v, const SystemConfig& cfg, const ChannelStatistics& stats);

/// Dispatch on er, gp1, gp2, b1, b2, b3, b4. `b3_kind` selects the design
/// optimized by b3. Throws std::invalid_argument on unknown tags.
DesignResult make_design(const std::string& tag, const SystemConfig& cfg, const ChannelStatistics& stats,
                         const SscaSettings& settings, DesignKind b3_kind = DesignKind::ER,
                         bool b1_literal = false);

}  // namespace irs
