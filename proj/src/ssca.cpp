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

#include "irsrobust/ssca.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irs {

void SscaSettings::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("ssca: tau must be positive");
  if (!(rho_exponent > 0.5 && rho_exponent < omega_exponent && omega_exponent <= 1.0))
    throw std::invalid_argument("ssca: need 0.5 < rho_exponent < omega_exponent <= 1");
  if (samples_per_iter < 1) throw std::invalid_argument("ssca: samples_per_iter must be >= 1");
  if (max_iters < 0) throw std::invalid_argument("ssca: max_iters must be >= 0");
}

DenominatorTerms denominator_terms(const CVector& v, const ChannelStatistics& stats, const SystemConfig& cfg) {
  DenominatorTerms d;
  d.value = cfg.noise_power;
  d.gradient = CVector::Zero(v.size());
  for (std::size_t k = 1; k < cfg.bs.size(); ++k) {
    const double p = cfg.bs[k].tx_power;
    if (p == 0.0) continue;
    d.value += p * interference_stat(v, stats, static_cast<int>(k));
    d.gradient += (p / stats.bs_sizes[k]) * (stats.cascaded_gram[k] * v);
  }
  return d;
}

ObjectiveValue objective_terms(DesignKind kind, const CVector& v, const CsiSample& csi, const SystemConfig& cfg,
                               const ErrorSetRadii& radii, const DenominatorTerms& denom) {
  const CRowVector e = effective_channel(v, csi);
  const double s = e.squaredNorm();
  // d s / d v* = G_hat e^H
  const CVector ds = csi.est_cascaded * e.adjoint();

  double g = 0.0;
  CVector dg;
  switch (kind) {
    case DesignKind::ER: {
      const double d1 = cfg.err_std_cascaded;
      const double d2 = cfg.err_std_direct;
      g = s + d2 * d2 + cfg.irs_size() * d1 * d1;
      dg = ds;
      break;
    }
    case DesignKind::GP1: {
      const double margin = radii.eps_cascaded * std::sqrt(static_cast<double>(v.size())) + radii.eps_direct;
      const double norm = std::sqrt(s);
      if (norm > margin) {
        g = (norm - margin) * (norm - margin);
        dg = ((norm - margin) / norm) * ds;
      } else {
        dg = CVector::Zero(v.size());
      }
      break;
    }
    case DesignKind::GP2: {
      const double sigma_e2 = effective_error_variance(cfg);
      const double l = std::log(1.0 / (1.0 - cfg.success_prob));
      const double root = std::sqrt(2.0 * l * (sigma_e2 * sigma_e2 + 2.0 * sigma_e2 * s));
      const double raw = s + sigma_e2 - root;
      if (raw > 0.0) {
        g = raw;
        const double slope = root > 0.0 ? 1.0 - 2.0 * l * sigma_e2 / root : 1.0;
        dg = slope * ds;
      } else {
        dg = CVector::Zero(v.size());
      }
      break;
    }
  }

  const double p0 = cfg.bs.at(0).tx_power;
  ObjectiveValue out;
  out.value = p0 * g / denom.value;
  out.gradient = (p0 / (denom.value * denom.value)) * (denom.value * dg - g * denom.gradient);
  return out;
}

double objective_sample(DesignKind kind, const CVector& v, const CsiSample& csi, const SystemConfig& cfg,
                        const ChannelStatistics& stats, const ErrorSetRadii& radii) {
  return objective_terms(kind, v, csi, cfg, radii, denominator_terms(v, stats, cfg)).value;
}

CVector objective_gradient(DesignKind kind, const CVector& v, const CsiSample& csi, const SystemConfig& cfg,
                           const ChannelStatistics& stats, const ErrorSetRadii& radii) {
  return objective_terms(kind, v, csi, cfg, radii, denominator_terms(v, stats, cfg)).gradient;
}

SurrogateState update_surrogate(const SurrogateState& state, const std::vector<ObjectiveValue>& batch,
                                const SscaSettings& settings) {
  if (batch.empty()) throw std::invalid_argument("update_surrogate: empty batch");
  double mean0 = 0.0;
  CVector mean1 = CVector::Zero(state.v.size());
  for (const ObjectiveValue& o : batch) {
    mean0 += o.value;
    mean1 += o.gradient;
  }
  mean0 /= static_cast<double>(batch.size());
  mean1 /= static_cast<double>(batch.size());

  const double r = settings.rho(state.iteration + 1);
  SurrogateState next = state;
  const CVector c1_prev = state.c1.size() == state.v.size() ? state.c1 : CVector::Zero(state.v.size());
  next.c0 = r * mean0 + (1.0 - r) * state.c0;
  next.c1 = r * mean1 + (1.0 - r) * c1_prev;
  return next;
}

SurrogateState update_surrogate(const SurrogateState& state, const std::vector<CsiSample>& batch,
                                const SscaSettings& settings, DesignKind kind, const SystemConfig& cfg,
                                const ChannelStatistics& stats, const ErrorSetRadii& radii) {
  const DenominatorTerms denom = denominator_terms(state.v, stats, cfg);
  std::vector<ObjectiveValue> values;
  values.reserve(batch.size());
  for (const CsiSample& csi : batch) values.push_back(objective_terms(kind, state.v, csi, cfg, radii, denom));
  return update_surrogate(state, values, settings);
}

SubproblemSolution solve_subproblem(const SurrogateState& state, const SscaSettings& settings) {
  SubproblemSolution out;
  out.v = state.v;
  for (Eigen::Index n = 0; n < state.v.size(); ++n) {
    const cdouble num = settings.tau * state.v(n) + state.c1(n);
    const double mag = std::abs(num);
    if (mag > 0.0)
      out.v(n) = num / mag;
    else
      ++out.degenerate;
  }
  return out;
}

double surrogate_value(const SurrogateState& state, const SscaSettings& settings, const CVector& x) {
  const CVector d = x - state.v;
  return state.c0 + 2.0 * std::real(state.c1.dot(d)) - settings.tau * d.squaredNorm();
}

SurrogateState step(const SurrogateState& state, const CVector& v_bar, const SscaSettings& settings) {
  const double w = settings.omega(state.iteration + 1);
  SurrogateState next = state;
  next.v = (1.0 - w) * state.v + w * v_bar;
  next.iteration = state.iteration + 1;
  return next;
}

namespace {

CVector project_unit_modulus(const CVector& v) {
  CVector out(v.size());
  for (Eigen::Index n = 0; n < v.size(); ++n) {
    const double m = std::abs(v(n));
    out(n) = m > 0.0 ? v(n) / m : cdouble(1.0, 0.0);
  }
  return out;
}

}  // namespace

SscaOutput run_ssca(const BatchObjective& objective, const CVector& v0, const SscaSettings& settings) {
  settings.validate();
  SurrogateState state;
  state.v = v0;
  state.c1 = CVector::Zero(v0.size());

  SscaOutput out;
  out.trace.reserve(static_cast<std::size_t>(settings.max_iters));
  for (int t = 1; t <= settings.max_iters; ++t) {
    Rng rng(derive_seed(settings.seed, static_cast<std::uint64_t>(t)));
    const ObjectiveValue mean = objective(state.v, settings.samples_per_iter, rng);
    state = update_surrogate(state, std::vector<ObjectiveValue>{mean}, settings);
    const SubproblemSolution sub = solve_subproblem(state, settings);
    out.degenerate_steps += sub.degenerate > 0 ? 1 : 0;
    const CVector prev = state.v;
    state = step(state, sub.v, settings);

    TraceRow row;
    row.t = t;
    row.c0 = state.c0;
    row.c1_norm = state.c1.norm();
    row.rho = settings.rho(t);
    row.omega = settings.omega(t);
    row.movement = (state.v - prev).norm();
    out.trace.push_back(row);
  }
  out.v = project_unit_modulus(state.v);
  return out;
}

CVector initial_phases(const ChannelStatistics& stats, const SscaSettings& settings) {
  const int n = stats.irs_size;
  if (settings.random_init) {
    Rng rng(derive_seed(settings.seed, 0xFFFFFFFFFFFFFFFFULL));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    CVector v(n);
    for (int i = 0; i < n; ++i) v(i) = std::polar(1.0, phase(rng));
    return v;
  }
  const CMatrix& g = stats.cascaded_los.at(0);
  if (g.norm() == 0.0) return CVector::Ones(n);
  Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeThinU);
  return project_unit_modulus(svd.matrixU().col(0));
}

DesignResult optimize(DesignKind kind, const SystemConfig& cfg, const ChannelStatistics& stats,
                      const SscaSettings& settings) {
  const ErrorSetRadii radii = error_set_radii(cfg);
  const BatchObjective objective = [&](const CVector& v, int count, Rng& rng) {
    const DenominatorTerms denom = denominator_terms(v, stats, cfg);
    ObjectiveValue mean;
    mean.gradient = CVector::Zero(v.size());
    for (int i = 0; i < count; ++i) {
      const CsiSample csi = sample_slot_csi(stats, cfg, rng);
      const ObjectiveValue o = objective_terms(kind, v, csi, cfg, radii, denom);
      mean.value += o.value;
      mean.gradient += o.gradient;
    }
    mean.value /= count;
    mean.gradient /= static_cast<double>(count);
    return mean;
  };
  const SscaOutput run = run_ssca(objective, initial_phases(stats, settings), settings);
  DesignResult d = assemble_design(kind, run.v, cfg, radii);
  d.trace = run.trace;
  d.seed = settings.seed;
  d.iterations = settings.max_iters;
  d.samples_per_iter = settings.samples_per_iter;
  d.degenerate_steps = run.degenerate_steps;
  return d;
}

}  // namespace irs
