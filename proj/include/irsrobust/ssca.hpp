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
#include "irsrobust/metrics.hpp"
#include "irsrobust/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace irs {

struct SscaSettings {
  double tau = 1.0;
  double rho_exponent = 0.6;  // rho^(t) = t^-rho_exponent
  double omega_exponent = 0.9;  // omega^(t) = t^-omega_exponent
  int samples_per_iter = 16;
  int max_iters = 2000;
  std::uint64_t seed = 0;
  bool random_init = false;  // uniform random phases instead of the LoS warm start

  double rho(int t) const { return std::pow(static_cast<double>(t), -rho_exponent); }
  double omega(int t) const { return std::pow(static_cast<double>(t), -omega_exponent); }

  /// Throws std::invalid_argument on tau <= 0, bad exponents or counts.
  void validate() const;
};

/// Surrogate coefficients after `iteration` completed iterations.
struct SurrogateState {
  double c0 = 0.0;
  CVector c1;
  CVector v;
  int iteration = 0;
};

/// Objective value and conjugate Wirtinger gradient d/dv* (first-order
/// change 2 Re{gradient^H dv}).
struct ObjectiveValue {
  double value = 0.0;
  CVector gradient;
};

/// Denominator and its conjugate Wirtinger gradient.
struct DenominatorTerms {
  double value = 0.0;
  CVector gradient;
};

DenominatorTerms denominator_terms(const CVector& v, const ChannelStatistics& stats, const SystemConfig& cfg);

double objective_sample(DesignKind kind, const CVector& v, const CsiSample& csi, const SystemConfig& cfg,
                        const ChannelStatistics& stats, const ErrorSetRadii& radii);

CVector objective_gradient(DesignKind kind, const CVector& v, const CsiSample& csi, const SystemConfig& cfg,
                           const ChannelStatistics& stats, const ErrorSetRadii& radii);

/// Value and gradient with a precomputed denominator.
ObjectiveValue objective_terms(DesignKind kind, const CVector& v, const CsiSample& csi, const SystemConfig& cfg,
                               const ErrorSetRadii& radii, const DenominatorTerms& denom);

/// c <- rho^(t) * mean(batch) + (1 - rho^(t)) * c, with t = state.iteration + 1.
/// Throws std::invalid_argument on an empty batch.
SurrogateState update_surrogate(const SurrogateState& state, const std::vector<ObjectiveValue>& batch,
                                const SscaSettings& settings);

SurrogateState update_surrogate(const SurrogateState& state, const std::vector<CsiSample>& batch,
                                const SscaSettings& settings, DesignKind kind, const SystemConfig& cfg,
                                const ChannelStatistics& stats, const ErrorSetRadii& radii);

struct SubproblemSolution {
  CVector v;
  int degenerate = 0;  // elements where tau v + c1 vanished
};

/// v_bar_n = (tau v_n + c1_n) / |tau v_n + c1_n|.
SubproblemSolution solve_subproblem(const SurrogateState& state, const SscaSettings& settings);

/// Surrogate c0 + 2 Re{c1^H (x - v)} - tau ||x - v||^2 at x.
double surrogate_value(const SurrogateState& state, const SscaSettings& settings, const CVector& x);

/// v <- (1 - omega^(t)) v + omega^(t) v_bar and advances the iteration count.
SurrogateState step(const SurrogateState& state, const CVector& v_bar, const SscaSettings& settings);

/// Sample-mean objective over `count` draws at v.
using BatchObjective = std::function<ObjectiveValue(const CVector& v, int count, Rng& rng)>;

struct SscaOutput {
  CVector v;  // projected to unit modulus
  std::vector<TraceRow> trace;
  int degenerate_steps = 0;
};

/// Algorithm loop shared by every SSCA-based design. Iteration t draws its
/// batch from a stream seeded by derive_seed(settings.seed, t).
SscaOutput run_ssca(const BatchObjective& objective, const CVector& v0, const SscaSettings& settings);

/// Phases of the dominant left singular vector of G_bar_{0,0} (all ones when it
/// vanishes), or uniform random phases when settings.random_init is set.
CVector initial_phases(const ChannelStatistics& stats, const SscaSettings& settings);

DesignResult optimize(DesignKind kind, const SystemConfig& cfg, const ChannelStatistics& stats,
                      const SscaSettings& settings);

}  // namespace irs
