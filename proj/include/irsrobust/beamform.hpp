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
#include "irsrobust/csi.hpp"
#include "irsrobust/metrics.hpp"
#include "irsrobust/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace irs {

enum class DesignKind { ER, GP1, GP2 };
enum class RateKind { None, GP1, GP2, GP2WithFallback };

std::string to_string(DesignKind kind);
std::string to_string(RateKind kind);
DesignKind design_kind_from_string(const std::string& s);
RateKind rate_kind_from_string(const std::string& s);

struct Beamformer {
  CVector w;
  bool degenerate = false;  // zero effective channel, first basis vector emitted
};

/// w = (v^H G_hat + h_hat^H)^H / ||.||.
Beamformer mrt_beamformer(const CVector& v, const CsiSample& csi);

double rate_gp1(const CVector& v, const CsiSample& csi, const ErrorSetRadii& radii, const Denominator& denom,
                const SystemConfig& cfg);
double rate_gp2(const CVector& v, const CsiSample& csi, const SystemConfig& cfg, const Denominator& denom);

/// MRT rule for a fixed phase-shift vector.
struct BeamformerRule {
  DesignKind kind = DesignKind::ER;
  CVector v;

  Beamformer operator()(const CsiSample& csi) const { return mrt_beamformer(v, csi); }
};

struct FallbackSettings {
  int num_draws = 10000;
  std::optional<double> target_prob;  // defaults to cfg.success_prob
};

struct RateDecision {
  double rate = 0.0;
  bool fell_back = false;
};

/// Per-slot rate adaptation r(H_hat). GP2WithFallback checks the GP2 rate
/// against conditional error draws and emits the GP1 rate when the empirical
/// success frequency falls below the target.
class RateRule {
 public:
  RateRule(RateKind kind, CVector v, SystemConfig cfg, FallbackSettings fallback = {});

  RateDecision operator()(const CsiSample& csi, const Denominator& denom, Rng& rng) const;

  /// Empirical Pr[C >= rate | H_hat] from `num_draws` conditional error draws.
  double conditional_success(const CsiSample& csi, const Denominator& denom, double rate, int num_draws,
                             Rng& rng) const;

  RateKind kind() const { return kind_; }
  const ErrorSetRadii& radii() const { return radii_; }

 private:
  RateKind kind_;
  CVector v_;
  SystemConfig cfg_;
  ErrorSetRadii radii_;
  FallbackSettings fallback_;
};

struct TraceRow {
  int t = 0;
  double c0 = 0.0;
  double c1_norm = 0.0;
  double rho = 0.0;
  double omega = 0.0;
  double movement = 0.0;
};

/// Output of any design procedure: the quasi-static phase shifts plus the
/// rules that turn per-slot CSI into (w, r).
struct DesignResult {
  std::string tag;  // er, gp1, gp2, b1..b4
  DesignKind kind = DesignKind::ER;
  CVector v;
  RateKind rate_kind = RateKind::None;
  std::vector<TraceRow> trace;
  std::uint64_t seed = 0;
  int iterations = 0;
  int samples_per_iter = 0;
  int degenerate_steps = 0;
  std::string config_hash;

  BeamformerRule beamformer() const { return {kind, v}; }
  bool has_rate_rule() const { return rate_kind != RateKind::None; }
  RateRule rate_rule(const SystemConfig& cfg, FallbackSettings fallback = {}) const;
};

/// Bundles v_opt with the rules of `kind`. Throws std::invalid_argument
/// unless |v_n| = 1 within 1e-9.
DesignResult assemble_design(DesignKind kind, const CVector& v_opt, const SystemConfig& cfg,
                             const ErrorSetRadii& radii);

void require_unit_modulus(const CVector& v, const char* where, double tol = 1e-9);

}  // namespace irs
