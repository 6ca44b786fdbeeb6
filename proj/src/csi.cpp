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

#include "irsrobust/csi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace irs {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxTerms = 100000;

// Series representation, converges fast for x < a + 1.
double gamma_p_series(double a, double x, double log_prefix) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxTerms; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(log_prefix);
}

// Continued fraction for Q(a, x) (modified Lentz), used for x >= a + 1.
double gamma_q_fraction(double a, double x, double log_prefix) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefix) * h;
}

double chi2_pdf(int dof, double x) {
  if (x <= 0.0) return dof == 2 ? 0.5 : 0.0;
  const double k = dof / 2.0;
  return std::exp((k - 1.0) * std::log(x) - x / 2.0 - k * std::log(2.0) - std::lgamma(k));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("regularized_gamma_p: a must be positive");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) return gamma_p_series(a, x, log_prefix);
  return 1.0 - gamma_q_fraction(a, x, log_prefix);
}

double chi2_cdf(int dof, double x) {
  if (dof < 1) throw std::domain_error("chi2_cdf: dof must be >= 1");
  return regularized_gamma_p(dof / 2.0, x / 2.0);
}

double chi2_inv_cdf(int dof, double p) {
  if (dof < 1) throw std::domain_error("chi2_inv_cdf: dof must be >= 1");
  if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("chi2_inv_cdf: p must lie in [0, 1)");
  if (p == 0.0) return 0.0;

  double lo = 0.0;
  double hi = std::max(1.0, static_cast<double>(dof));
  while (chi2_cdf(dof, hi) < p) {
    lo = hi;
    hi *= 2.0;
  }

  // Wilson-Hilferty start, clamped into the bracket.
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 500; ++iter) {
    const double f = chi2_cdf(dof, x) - p;
    if (std::abs(f) < 1e-13) return x;
    if (f < 0.0)
      lo = x;
    else
      hi = x;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return x;
    const double pdf = chi2_pdf(dof, x);
    double next = pdf > 0.0 ? x - f / pdf : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

ErrorSetRadii error_set_radii(const SystemConfig& cfg) {
  const int bs_size = cfg.bs.at(0).array.size();
  const int irs_size = cfg.irs_size();
  const double d1 = cfg.err_std_cascaded;
  const double d2 = cfg.err_std_direct;
  ErrorSetRadii r;
  r.eps_cascaded = std::sqrt(d1 * d1 / 2.0 * chi2_inv_cdf(2 * bs_size * irs_size, cfg.success_prob));
  r.eps_direct = std::sqrt(d2 * d2 / 2.0 * chi2_inv_cdf(2 * bs_size, cfg.success_prob));
  return r;
}

CsiSample sample_csi(const ChannelRealization& true_channel, const SystemConfig& cfg, Rng& rng) {
  const CMatrix& g = true_channel.cascaded.at(0);
  const CVector& h = true_channel.direct.at(0);
  CsiSample s;
  s.err_cascaded = complex_normal_matrix(rng, g.rows(), g.cols(), cfg.err_std_cascaded * cfg.err_std_cascaded);
  s.err_direct = complex_normal_vector(rng, h.size(), cfg.err_std_direct * cfg.err_std_direct);
  s.est_cascaded = g - *s.err_cascaded;
  s.est_direct = h - *s.err_direct;
  return s;
}

CsiSample redraw_errors(const CsiSample& estimate, const SystemConfig& cfg, Rng& rng) {
  CsiSample s;
  s.est_cascaded = estimate.est_cascaded;
  s.est_direct = estimate.est_direct;
  s.err_cascaded = complex_normal_matrix(rng, s.est_cascaded.rows(), s.est_cascaded.cols(),
                                         cfg.err_std_cascaded * cfg.err_std_cascaded);
  s.err_direct = complex_normal_vector(rng, s.est_direct.size(), cfg.err_std_direct * cfg.err_std_direct);
  return s;
}

ChannelRealization reconstruct_truth(const CsiSample& sample) {
  if (!sample.has_errors()) throw std::invalid_argument("reconstruct_truth: sample carries no errors");
  ChannelRealization r;
  r.cascaded.push_back(sample.est_cascaded + *sample.err_cascaded);
  r.direct.push_back(sample.est_direct + *sample.err_direct);
  r.interferer_self.emplace_back();
  return r;
}

CsiSample sample_slot_csi(const ChannelStatistics& stats, const SystemConfig& cfg, Rng& rng) {
  const ChannelRealization truth = sample_serving(stats, rng);
  return sample_csi(truth, cfg, rng);
}

bool in_error_set(const CsiSample& sample, const ErrorSetRadii& radii) {
  if (!sample.has_errors()) throw std::invalid_argument("in_error_set: sample carries no errors");
  return sample.err_cascaded->norm() <= radii.eps_cascaded && sample.err_direct->norm() <= radii.eps_direct;
}

}  // namespace irs
