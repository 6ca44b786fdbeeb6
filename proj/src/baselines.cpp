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

#include "irsrobust/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace irs {

std::string baseline_tag(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::NonRobustNoInterf: return "b1";
    case BaselineKind::NonRobustWithInterf: return "b2";
    case BaselineKind::RobustNoInterf: return "b3";
    case BaselineKind::RobustWithInterf: return "b4";
  }
  return "?";
}

namespace {

// Baselines keep their own objective but share the GP1 rate rule.
DesignResult relabel(DesignResult d, const std::string& tag, const SystemConfig& cfg, bool keep_rate = false) {
  d.tag = tag;
  if (!keep_rate || d.rate_kind == RateKind::None) d.rate_kind = RateKind::GP1;
  d.config_hash = config_hash(cfg);
  return d;
}

}  // namespace

DesignResult baseline_v1(const SystemConfig& cfg, const ChannelStatistics& stats, bool literal) {
  const CRowVector& a_user = stats.los_irs_user;  // a(phi_{r,0})
  const CRowVector& a_arrival = stats.irs_arrival.at(0);  // a(delta_{0,r})
  CVector v(stats.irs_size);
  for (int n = 0; n < stats.irs_size; ++n) {
    const double phase = literal ? std::arg(a_arrival(n) - a_user(n)) : std::arg(a_user(n)) - std::arg(a_arrival(n));
    v(n) = std::polar(1.0, phase);
  }
  return relabel(assemble_design(DesignKind::ER, v, cfg, error_set_radii(cfg)), "b1", cfg);
}

DesignResult baseline_v2(const SystemConfig& cfg, const ChannelStatistics& stats, const SscaSettings& settings) {
  SystemConfig perfect = cfg;
  perfect.err_std_cascaded = 0.0;
  perfect.err_std_direct = 0.0;
  return relabel(optimize(DesignKind::ER, perfect, stats, settings), "b2", cfg);
}

DesignResult baseline_robust_no_interf(DesignKind kind, const SystemConfig& cfg, const ChannelStatistics& stats,
                                       const SscaSettings& settings) {
  SystemConfig quiet = cfg;
  for (std::size_t k = 1; k < quiet.bs.size(); ++k) quiet.bs[k].tx_power = 0.0;
  return relabel(optimize(kind, quiet, stats, settings), "b3", cfg, true);
}

ObjectiveValue los_ratio_objective(const CVector& v, const SystemConfig& cfg, const ChannelStatistics& stats) {
  const CVector num_grad = stats.cascaded_gram.at(0) * v;
  const double num = cfg.bs.at(0).tx_power * std::real(v.dot(num_grad));
  double den = cfg.noise_power;
  CVector den_grad = CVector::Zero(v.size());
  for (std::size_t k = 1; k < cfg.bs.size(); ++k) {
    const double p = cfg.bs[k].tx_power;
    if (p == 0.0) continue;
    const CVector gk = stats.cascaded_gram[k] * v;
    den += p * std::real(v.dot(gk));
    den_grad += p * gk;
  }
  ObjectiveValue out;
  out.value = num / den;
  out.gradient = (cfg.bs.at(0).tx_power * num_grad * den - num * den_grad) / (den * den);
  return out;
}

DesignResult baseline_v4(const SystemConfig& cfg, const ChannelStatistics& stats, const SscaSettings& settings) {
  const BatchObjective objective = [&](const CVector& v, int, Rng&) {
    return los_ratio_objective(v, cfg, stats);
  };
  const SscaOutput run = run_ssca(objective, initial_phases(stats, settings), settings);
  DesignResult d = assemble_design(DesignKind::ER, run.v, cfg, error_set_radii(cfg));
  d.trace = run.trace;
  d.seed = settings.seed;
  d.iterations = settings.max_iters;
  d.samples_per_iter = 0;
  d.degenerate_steps = run.degenerate_steps;
  return relabel(std::move(d), "b4", cfg);
}

DesignResult make_design(const std::string& tag, const SystemConfig& cfg, const ChannelStatistics& stats,
                         const SscaSettings& settings, DesignKind b3_kind, bool b1_literal) {
  if (tag == "er" || tag == "gp1" || tag == "gp2") return optimize(design_kind_from_string(tag), cfg, stats, settings);
  if (tag == "b1") return baseline_v1(cfg, stats, b1_literal);
  if (tag == "b2") return baseline_v2(cfg, stats, settings);
  if (tag == "b3") return baseline_robust_no_interf(b3_kind, cfg, stats, settings);
  if (tag == "b4") return baseline_v4(cfg, stats, settings);
  throw std::invalid_argument("unknown design tag '" + tag + "'");
}

}  // namespace irs
