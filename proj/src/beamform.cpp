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

#include "irsrobust/beamform.hpp"

#include <cmath>
#include <stdexcept>

namespace irs {

std::string to_string(DesignKind kind) {
  switch (kind) {
    case DesignKind::ER: return "er";
    case DesignKind::GP1: return "gp1";
    case DesignKind::GP2: return "gp2";
  }
  return "?";
}

std::string to_string(RateKind kind) {
  switch (kind) {
    case RateKind::None: return "none";
    case RateKind::GP1: return "gp1";
    case RateKind::GP2: return "gp2";
    case RateKind::GP2WithFallback: return "gp2_with_fallback";
  }
  return "?";
}

DesignKind design_kind_from_string(const std::string& s) {
  if (s == "er") return DesignKind::ER;
  if (s == "gp1") return DesignKind::GP1;
  if (s == "gp2") return DesignKind::GP2;
  throw std::invalid_argument("unknown design kind '" + s + "'");
}

RateKind rate_kind_from_string(const std::string& s) {
  if (s == "none") return RateKind::None;
  if (s == "gp1") return RateKind::GP1;
  if (s == "gp2") return RateKind::GP2;
  if (s == "gp2_with_fallback") return RateKind::GP2WithFallback;
  throw std::invalid_argument("unknown rate kind '" + s + "'");
}

void require_unit_modulus(const CVector& v, const char* where, double tol) {
  for (Eigen::Index n = 0; n < v.size(); ++n)
    if (std::abs(std::abs(v(n)) - 1.0) > tol)
      throw std::invalid_argument(std::string(where) + ": phase shifts must be unit modulus");
}

Beamformer mrt_beamformer(const CVector& v, const CsiSample& csi) {
  const CRowVector e = effective_channel(v, csi);
  const double n = e.norm();
  op_counter() += static_cast<std::uint64_t>(e.size());
  Beamformer b;
  if (n > 0.0) {
    b.w = e.adjoint() / n;
  } else {
    b.w = CVector::Zero(e.size());
    b.w(0) = 1.0;
    b.degenerate = true;
  }
  return b;
}

namespace {

double rate_from_power(double power, const Denominator& denom, const SystemConfig& cfg) {
  return std::log2(1.0 + cfg.bs.at(0).tx_power * power / denom.value);
}

}  // namespace

double rate_gp1(const CVector& v, const CsiSample& csi, const ErrorSetRadii& radii, const Denominator& denom,
                const SystemConfig& cfg) {
  const Beamformer b = mrt_beamformer(v, csi);
  if (b.degenerate) return 0.0;
  return rate_from_power(signal_gp1(v, csi, b.w, radii), denom, cfg);
}

double rate_gp2(const CVector& v, const CsiSample& csi, const SystemConfig& cfg, const Denominator& denom) {
  const Beamformer b = mrt_beamformer(v, csi);
  if (b.degenerate) return 0.0;
  return rate_from_power(signal_gp2(v, csi, b.w, cfg), denom, cfg);
}

RateRule::RateRule(RateKind kind, CVector v, SystemConfig cfg, FallbackSettings fallback)
    : kind_(kind), v_(std::move(v)), cfg_(std::move(cfg)), fallback_(fallback) {
  if (kind_ == RateKind::None) throw std::invalid_argument("RateRule: design has no rate rule");
  if (fallback_.num_draws < 1) throw std::invalid_argument("RateRule: num_draws must be >= 1");
  radii_ = error_set_radii(cfg_);
}

double RateRule::conditional_success(const CsiSample& csi, const Denominator& denom, double rate, int num_draws,
                                     Rng& rng) const {
  // Given H_hat and MRT w, (v^H dG + dh^H) w ~ CN(0, sigma_e^2) exactly, so the
  // true effective gain is ||e|| + z with scalar z.
  const double a = effective_channel(v_, csi).norm();
  const double sigma_e2 = effective_error_variance(cfg_);
  // Relative slack absorbs the log2 / exp2 round trip.
  const double needed = (std::exp2(rate) - 1.0) * denom.value / cfg_.bs.at(0).tx_power * (1.0 - 1e-12);
  int hits = 0;
  for (int i = 0; i < num_draws; ++i) {
    const cdouble z = complex_normal(rng, sigma_e2);
    if (std::norm(a + z) >= needed) ++hits;
  }
  return static_cast<double>(hits) / num_draws;
}

RateDecision RateRule::operator()(const CsiSample& csi, const Denominator& denom, Rng& rng) const {
  switch (kind_) {
    case RateKind::GP1: return {rate_gp1(v_, csi, radii_, denom, cfg_), false};
    case RateKind::GP2: return {rate_gp2(v_, csi, cfg_, denom), false};
    case RateKind::GP2WithFallback: {
      const double r2 = rate_gp2(v_, csi, cfg_, denom);
      const double target = fallback_.target_prob.value_or(cfg_.success_prob);
      if (conditional_success(csi, denom, r2, fallback_.num_draws, rng) >= target) return {r2, false};
      return {rate_gp1(v_, csi, radii_, denom, cfg_), true};
    }
    case RateKind::None: break;
  }
  throw std::logic_error("RateRule: no rate rule");
}

RateRule DesignResult::rate_rule(const SystemConfig& cfg, FallbackSettings fallback) const {
  return RateRule(rate_kind, v, cfg, fallback);
}

DesignResult assemble_design(DesignKind kind, const CVector& v_opt, const SystemConfig& cfg,
                             const ErrorSetRadii& radii) {
  (void)radii;
  require_unit_modulus(v_opt, "assemble_design");
  if (v_opt.size() != cfg.irs_size())
    throw std::invalid_argument("assemble_design: phase-shift vector length does not match the IRS");
  DesignResult d;
  d.tag = to_string(kind);
  d.kind = kind;
  d.v = v_opt;
  switch (kind) {
    case DesignKind::ER: d.rate_kind = RateKind::None; break;
    case DesignKind::GP1: d.rate_kind = RateKind::GP1; break;
    case DesignKind::GP2: d.rate_kind = RateKind::GP2WithFallback; break;
  }
  d.config_hash = config_hash(cfg);
  return d;
}

}  // namespace irs
