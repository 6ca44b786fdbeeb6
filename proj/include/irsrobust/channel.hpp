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
#include "irsrobust/types.hpp"

#include <vector>

namespace irs {

/// Phase difference of element (m, n) (1-based) relative to element (1, 1):
/// 2 pi (d/lambda) sin(el) ((m-1) cos(az) + (n-1) sin(az)).
double steering_phase(const UraGeometry& geom, const AnglePair& ang, int m, int n);

/// Row-vectorized array response. Element (m, n) sits at index
/// (m-1) * cols + (n-1), i.e. the column index varies fastest. This ordering
/// is used for every BS-side and IRS-side vector in the library.
CRowVector steering_vector(const UraGeometry& geom, const AnglePair& ang);

/// Large-scale powers after resolving distances / explicit values.
struct ResolvedGains {
  std::vector<double> direct;  // alpha_{k,0}
  std::vector<double> to_irs;  // alpha_{k,r}
  std::vector<double> self;  // alpha_{k,k}
  double irs_user = 0.0;  // alpha_{r,0}
};

/// Everything about the channel that stays fixed over the considered period.
struct ChannelStatistics {
  std::vector<CMatrix> los_bs_irs;  // normalized LoS H_bar_{k,r}, M_rN_r x M_kN_k
  CRowVector los_irs_user;  // normalized LoS h_bar^H_{r,0}, 1 x M_rN_r
  std::vector<CRowVector> irs_arrival;  // a(delta_{k,r}), 1 x M_rN_r
  std::vector<CMatrix> cascaded_los;  // G_bar_{k,0}, scaled by sqrt(alpha alpha tau)
  std::vector<CMatrix> cascaded_gram;  // G_bar_{k,0} G_bar_{k,0}^H
  std::vector<double> tau;
  ResolvedGains alphas;
  std::vector<int> bs_sizes;
  int irs_size = 0;

  // Weights applied to LoS / NLoS parts of the IRS links.
  std::vector<double> los_weight_bs_irs, nlos_weight_bs_irs;
  double los_weight_irs_user = 0.0, nlos_weight_irs_user = 1.0;
};

/// One slot's true channels.
struct ChannelRealization {
  std::vector<CMatrix> cascaded;  // G_{k,0}
  std::vector<CVector> direct;  // h_{k,0}
  std::vector<CVector> interferer_self;  // h_{k,k}; entry 0 unused (empty)
};

double rician_tau(double k_bs_irs, double k_irs_user);

ChannelStatistics build_statistics(const SystemConfig& cfg);

/// Draws a complete realization, interferer links included.
ChannelRealization sample_realization(const ChannelStatistics& stats, const SystemConfig& cfg,
                                      Rng& rng);

/// Draws only the serving links G_{0,0}, h_{0,0}. This is all the optimizer
/// and the evaluators need, since interference enters through its statistics.
ChannelRealization sample_serving(const ChannelStatistics& stats, Rng& rng);

}  // namespace irs
