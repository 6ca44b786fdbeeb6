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

#include "irsrobust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace irs {

std::uint64_t& op_counter() {
  thread_local std::uint64_t count = 0;
  return count;
}

void require_unit_norm(const CVector& w, const char* where) {
  if (std::abs(w.norm() - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(where) + ": beamformer must have unit norm");
}

double interference_stat(const CVector& v, const ChannelStatistics& stats, int k) {
  if (k < 1 || k >= static_cast<int>(stats.bs_sizes.size()))
    throw std::domain_error("interference_stat: k must index an interfering BS");
  const double los = std::real(v.dot(stats.cascaded_gram[k] * v)) / stats.bs_sizes[k];
  const double scattered =
      stats.alphas.to_irs[k] * stats.alphas.irs_user * stats.irs_size * (1.0 - stats.tau[k]);
  return los + scattered + stats.alphas.direct[k];
}

Denominator denominator(const CVector& v, const ChannelStatistics& stats, const SystemConfig& cfg) {
  Denominator d{cfg.noise_power};
  for (std::size_t k = 1; k < cfg.bs.size(); ++k)
    d.value += cfg.bs[k].tx_power * interference_stat(v, stats, static_cast<int>(k));
  return d;
}

CRowVector effective_channel(const CVector& v, const CsiSample& csi) {
  op_counter() += static_cast<std::uint64_t>(csi.est_cascaded.size() + csi.est_direct.size());
  return v.adjoint() * csi.est_cascaded + csi.est_direct.adjoint();
}

double effective_error_variance(const SystemConfig& cfg) {
  const double d1 = cfg.err_std_cascaded;
  const double d2 = cfg.err_std_direct;
  return d1 * d1 * cfg.irs_size() + d2 * d2;
}

double bernstein_power(double s, double sigma_e2, double success_prob) {
  const double l = std::log(1.0 / (1.0 - success_prob));
  const double penalty = std::sqrt(2.0 * l * (sigma_e2 * sigma_e2 + 2.0 * sigma_e2 * s));
  return std::max(0.0, s + sigma_e2 - penalty);
}

namespace {

double projected_power(const CVector& v, const CsiSample& csi, const CVector& w) {
  op_counter() += static_cast<std::uint64_t>(w.size());
  return std::norm((effective_channel(v, csi) * w).value());
}

}  // namespace

double signal_er(const CVector& v, const CsiSample& csi, const CVector& w, const SystemConfig& cfg) {
  require_unit_norm(w, "signal_er");
  const double d1 = cfg.err_std_cascaded;
  const double d2 = cfg.err_std_direct;
  return projected_power(v, csi, w) + d2 * d2 + cfg.irs_size() * d1 * d1;
}

double signal_gp1(const CVector& v, const CsiSample& csi, const CVector& w, const ErrorSetRadii& radii) {
  require_unit_norm(w, "signal_gp1");
  const double margin = radii.eps_cascaded * std::sqrt(static_cast<double>(v.size())) + radii.eps_direct;
  const double inner = std::sqrt(projected_power(v, csi, w)) - margin;
  return inner > 0.0 ? inner * inner : 0.0;
}

double signal_gp2(const CVector& v, const CsiSample& csi, const CVector& w, const SystemConfig& cfg) {
  require_unit_norm(w, "signal_gp2");
  return bernstein_power(projected_power(v, csi, w), effective_error_variance(cfg), cfg.success_prob);
}

double capacity(const CVector& v, const CVector& w, const ChannelRealization& true_channel,
                const Denominator& denom, const SystemConfig& cfg) {
  require_unit_norm(w, "capacity");
  const cdouble gain = ((v.adjoint() * true_channel.cascaded.at(0) + true_channel.direct.at(0).adjoint()) * w).value();
  return std::log2(1.0 + cfg.bs.at(0).tx_power * std::norm(gain) / denom.value);
}

double ergodic_rate_upper_bound(const CVector& v, const SystemConfig& cfg, const ChannelStatistics& stats,
                                const CsiSampler& sampler, int num_samples, Rng& rng) {
  if (num_samples < 1) throw std::invalid_argument("ergodic_rate_upper_bound: num_samples must be >= 1");
  double sum = 0.0;
  for (int i = 0; i < num_samples; ++i) {
    const CsiSample csi = sampler(rng);
    const CRowVector e = effective_channel(v, csi);
    const double n = e.norm();
    CVector w;
    if (n > 0.0) {
      w = e.adjoint() / n;
    } else {
      w = CVector::Zero(e.size());
      w(0) = 1.0;
    }
    sum += signal_er(v, csi, w, cfg);
  }
  const double mean = sum / num_samples;
  return std::log2(1.0 + cfg.bs.at(0).tx_power * mean / denominator(v, stats, cfg).value);
}

}  // namespace irs
