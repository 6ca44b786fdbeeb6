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

#include "irsrobust/channel.hpp"

#include <cmath>
#include <numbers>

namespace irs {

double steering_phase(const UraGeometry& geom, const AnglePair& ang, int m, int n) {
  return 2.0 * std::numbers::pi * geom.spacing * std::sin(ang.elevation) *
         ((m - 1) * std::cos(ang.azimuth) + (n - 1) * std::sin(ang.azimuth));
}

CRowVector steering_vector(const UraGeometry& geom, const AnglePair& ang) {
  CRowVector a(geom.size());
  for (int m = 1; m <= geom.rows; ++m)
    for (int n = 1; n <= geom.cols; ++n)
      a((m - 1) * geom.cols + (n - 1)) = std::polar(1.0, steering_phase(geom, ang, m, n));
  return a;
}

double rician_tau(double k_bs_irs, double k_irs_user) {
  return k_bs_irs * k_irs_user / ((k_bs_irs + 1.0) * (k_irs_user + 1.0));
}

ChannelStatistics build_statistics(const SystemConfig& cfg) {
  cfg.validate();
  ChannelStatistics s;
  const std::size_t n_bs = cfg.bs.size();
  s.irs_size = cfg.irs_size();
  s.alphas.irs_user = cfg.irs.to_user.resolve();
  s.los_irs_user = steering_vector(cfg.irs.array, cfg.irs.user_departure);
  if (cfg.los_only) {
    s.los_weight_irs_user = 1.0;
    s.nlos_weight_irs_user = 0.0;
  } else {
    const double k = cfg.irs.rician_user;
    s.los_weight_irs_user = std::sqrt(k / (k + 1.0));
    s.nlos_weight_irs_user = std::sqrt(1.0 / (k + 1.0));
  }

  for (std::size_t k = 0; k < n_bs; ++k) {
    const BsConfig& b = cfg.bs[k];
    s.bs_sizes.push_back(b.array.size());
    s.alphas.direct.push_back(b.direct.resolve());
    s.alphas.to_irs.push_back(b.to_irs.resolve());
    s.alphas.self.push_back(b.alpha_self);

    const CRowVector arrival = steering_vector(cfg.irs.array, b.irs_arrival);
    const CRowVector departure = steering_vector(b.array, b.departure);
    s.irs_arrival.push_back(arrival);
    s.los_bs_irs.push_back(arrival.adjoint() * departure);

    double tau = 0.0;
    if (cfg.los_only) {
      tau = 1.0;
      s.los_weight_bs_irs.push_back(1.0);
      s.nlos_weight_bs_irs.push_back(0.0);
    } else {
      tau = rician_tau(b.rician_irs, cfg.irs.rician_user);
      s.los_weight_bs_irs.push_back(std::sqrt(b.rician_irs / (b.rician_irs + 1.0)));
      s.nlos_weight_bs_irs.push_back(std::sqrt(1.0 / (b.rician_irs + 1.0)));
    }
    s.tau.push_back(tau);

    const double scale = std::sqrt(s.alphas.to_irs[k] * s.alphas.irs_user * tau);
    CMatrix g = s.los_irs_user.transpose().asDiagonal() * s.los_bs_irs.back();
    g *= scale;
    s.cascaded_gram.push_back(g * g.adjoint());
    s.cascaded_los.push_back(std::move(g));
  }
  return s;
}

namespace {

CMatrix draw_cascaded(const ChannelStatistics& s, std::size_t k, const CRowVector& irs_user, Rng& rng) {
  const int rows = s.irs_size;
  const int cols = s.bs_sizes[k];
  CMatrix h_bs_irs = s.los_weight_bs_irs[k] * s.los_bs_irs[k];
  if (s.nlos_weight_bs_irs[k] > 0.0)
    h_bs_irs += s.nlos_weight_bs_irs[k] * complex_normal_matrix(rng, rows, cols);
  h_bs_irs *= std::sqrt(s.alphas.to_irs[k]);
  return irs_user.transpose().asDiagonal() * h_bs_irs;
}

CRowVector draw_irs_user(const ChannelStatistics& s, Rng& rng) {
  CRowVector h = s.los_weight_irs_user * s.los_irs_user;
  if (s.nlos_weight_irs_user > 0.0)
    h += s.nlos_weight_irs_user * complex_normal_vector(rng, s.irs_size).transpose();
  return h * std::sqrt(s.alphas.irs_user);
}

}  // namespace

ChannelRealization sample_realization(const ChannelStatistics& stats, const SystemConfig& cfg,
                                      Rng& rng) {
  (void)cfg;
  ChannelRealization r;
  const CRowVector irs_user = draw_irs_user(stats, rng);
  for (std::size_t k = 0; k < stats.bs_sizes.size(); ++k) {
    r.cascaded.push_back(draw_cascaded(stats, k, irs_user, rng));
    r.direct.push_back(complex_normal_vector(rng, stats.bs_sizes[k], stats.alphas.direct[k]));
    if (k == 0)
      r.interferer_self.emplace_back();
    else
      r.interferer_self.push_back(complex_normal_vector(rng, stats.bs_sizes[k], stats.alphas.self[k]));
  }
  return r;
}

ChannelRealization sample_serving(const ChannelStatistics& stats, Rng& rng) {
  ChannelRealization r;
  const CRowVector irs_user = draw_irs_user(stats, rng);
  r.cascaded.push_back(draw_cascaded(stats, 0, irs_user, rng));
  r.direct.push_back(complex_normal_vector(rng, stats.bs_sizes[0], stats.alphas.direct[0]));
  r.interferer_self.emplace_back();
  return r;
}

}  // namespace irs
