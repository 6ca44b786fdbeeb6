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
#include "irsrobust/types.hpp"

#include <optional>

namespace irs {

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

/// Chi-square CDF with `dof` degrees of freedom.
double chi2_cdf(int dof, double x);

/// Inverse chi-square CDF. Bracketing plus safeguarded Newton on chi2_cdf,
/// converged to |F(x) - p| < 1e-10. Throws std::domain_error for p outside
/// [0, 1) or dof < 1.
double chi2_inv_cdf(int dof, double p);

/// Estimated serving-link CSI for one slot, plus the error when known.
struct CsiSample {
  CMatrix est_cascaded;  // G_hat_{0,0}, M_rN_r x M_0N_0
  CVector est_direct;  // h_hat_{0,0}, M_0N_0
  std::optional<CMatrix> err_cascaded;  // Delta G_{0,0}
  std::optional<CVector> err_direct;  // Delta h_{0,0}

  bool has_errors() const { return err_cascaded.has_value() && err_direct.has_value(); }
};

/// Radii of the bounded error set E.
struct ErrorSetRadii {
  double eps_cascaded = 0.0;
  double eps_direct = 0.0;
};

ErrorSetRadii error_set_radii(const SystemConfig& cfg);

/// Draws Delta G, Delta h with i.i.d. CN(0, delta_1^2) / CN(0, delta_2^2) entries
/// and returns the estimate G - Delta G, h - Delta h of the given true channel.
CsiSample sample_csi(const ChannelRealization& true_channel, const SystemConfig& cfg, Rng& rng);

/// Keeps the estimate of `estimate` and draws a fresh error independent of it,
/// so that estimate + error is a draw of the true channel given the estimate.
CsiSample redraw_errors(const CsiSample& estimate, const SystemConfig& cfg, Rng& rng);

/// True channel of a sample that carries its errors.
ChannelRealization reconstruct_truth(const CsiSample& sample);

/// Convenience: serving realization followed by sample_csi.
CsiSample sample_slot_csi(const ChannelStatistics& stats, const SystemConfig& cfg, Rng& rng);

/// ||Delta G||_F <= eps_1 and ||Delta h|| <= eps_2. Throws std::invalid_argument
/// when the sample carries no errors.
bool in_error_set(const CsiSample& sample, const ErrorSetRadii& radii);

}  // namespace irs
