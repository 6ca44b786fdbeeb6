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

#include <cmath>
#include <numbers>
#include <random>

namespace irs::test {

// Small scenario with explicit link gains, unit-scale channels.
inline SystemConfig toy_config(int bs_side, int irs_side, int interferers, double rician = 1.0) {
  SystemConfig c;
  c.noise_power = 0.1;
  c.irs.array = UraGeometry{irs_side, irs_side, 0.5};
  c.irs.rician_user = rician;
  c.irs.user_departure = {0.4, 0.7};
  c.irs.to_user.alpha = 0.8;
  for (int k = 0; k <= interferers; ++k) {
    BsConfig b;
    b.array = UraGeometry{bs_side, bs_side, 0.5};
    b.tx_power = k == 0 ? 1.0 : 0.5;
    b.rician_irs = rician;
    b.departure = {0.3 + 0.2 * k, 0.9 - 0.1 * k};
    b.irs_arrival = {0.6 + 0.3 * k, 0.5 + 0.1 * k};
    b.direct.alpha = k == 0 ? 0.3 : 0.2;
    b.to_irs.alpha = k == 0 ? 1.2 : 0.9;
    c.bs.push_back(b);
  }
  return c;
}

// Single BS, LoS-only cascade, no direct link, perfect CSIT.
inline SystemConfig los_only_config(int bs_side, int irs_side) {
  SystemConfig c = toy_config(bs_side, irs_side, 0);
  c.los_only = true;
  c.bs[0].direct.alpha = 0.0;
  return c;
}

inline CVector random_phases(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = std::polar(1.0, u(rng));
  return v;
}

inline CVector random_unit_vector(Rng& rng, int n) {
  CVector w = complex_normal_vector(rng, n);
  return w / w.norm();
}

// CSI estimate with CN(0, 1) entries and no error attached.
inline CsiSample random_estimate(Rng& rng, int irs_size, int bs_size) {
  CsiSample s;
  s.est_cascaded = complex_normal_matrix(rng, irs_size, bs_size);
  s.est_direct = complex_normal_vector(rng, bs_size);
  return s;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace irs::test
