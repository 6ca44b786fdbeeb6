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

#include "irsrobust/evaluate.hpp"

#include "irsrobust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace irs {

Estimate estimate_of(const std::vector<double>& samples) {
  Estimate e;
  const std::size_t n = samples.size();
  if (n == 0) return e;
  double sum = 0.0;
  for (double x : samples) sum += x;
  e.mean = sum / static_cast<double>(n);
  if (n < 2) return e;
  double ss = 0.0;
  for (double x : samples) ss += (x - e.mean) * (x - e.mean);
  e.se = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  return e;
}

namespace {

// Runs body(slot) for every slot, split into contiguous ranges over `jobs` threads.
void for_each_slot(int num_slots, int jobs, const std::function<void(int)>& body) {
  jobs = std::max(1, std::min(jobs, num_slots));
  if (jobs == 1) {
    for (int s = 0; s < num_slots; ++s) body(s);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  for (int j = 0; j < jobs; ++j) {
    const int lo = static_cast<int>(static_cast<long long>(num_slots) * j / jobs);
    const int hi = static_cast<int>(static_cast<long long>(num_slots) * (j + 1) / jobs);
    workers.emplace_back([&, j, lo, hi] {
      try {
        for (int s = lo; s < hi; ++s) body(s);
      } catch (...) {
        errors[static_cast<std::size_t>(j)] = std::current_exception();
      }
    });
  }
  for (std::thread& t : workers) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

void check_inputs(const DesignResult& design, const SystemConfig& cfg, const EvalSettings& settings) {
  if (settings.num_slots < 2) throw std::invalid_argument("evaluate: num_slots must be >= 2");
  if (design.v.size() != cfg.irs_size())
    throw std::invalid_argument("evaluate: design has " + std::to_string(design.v.size()) +
                                " phase shifts but the IRS has " + std::to_string(cfg.irs_size()) + " elements");
}

EvaluationReport base_report(const std::string& scenario, const DesignResult& design, const SystemConfig& cfg,
                             const EvalSettings& settings) {
  EvaluationReport r;
  r.scenario = scenario;
  r.design_tag = design.tag;
  r.num_slots = settings.num_slots;
  r.seed = settings.seed;
  r.config_hash = config_hash(cfg);
  return r;
}

}  // namespace

EvaluationReport eval_ergodic(const DesignResult& design, const SystemConfig& cfg, const ChannelStatistics& stats,
                              const EvalSettings& settings) {
  check_inputs(design, cfg, settings);
  const Denominator denom = denominator(design.v, stats, cfg);
  const BeamformerRule rule = design.beamformer();
  std::vector<double> rates(static_cast<std::size_t>(settings.num_slots));
  std::vector<char> degenerate(rates.size(), 0);
  for_each_slot(settings.num_slots, settings.jobs, [&](int s) {
    Rng rng(derive_seed(settings.seed, static_cast<std::uint64_t>(s)));
    const ChannelRealization truth = sample_serving(stats, rng);
    const CsiSample csi = sample_csi(truth, cfg, rng);
    const Beamformer b = rule(csi);
    degenerate[static_cast<std::size_t>(s)] = b.degenerate ? 1 : 0;
    rates[static_cast<std::size_t>(s)] = capacity(design.v, b.w, truth, denom, cfg);
  });
  EvaluationReport r = base_report("ergodic", design, cfg, settings);
  r.ergodic_rate = estimate_of(rates);
  r.degenerate_slots = static_cast<int>(std::count(degenerate.begin(), degenerate.end(), 1));
  r.success_prob = 1.0;
  return r;
}

EvaluationReport eval_goodput(const DesignResult& design, const SystemConfig& cfg, const ChannelStatistics& stats,
                              const EvalSettings& settings) {
  if (!design.has_rate_rule()) throw std::invalid_argument("eval_goodput: design '" + design.tag + "' has no rate rule");
  check_inputs(design, cfg, settings);
  const Denominator denom = denominator(design.v, stats, cfg);
  const BeamformerRule bf = design.beamformer();
  const RateRule rate_rule = design.rate_rule(cfg, settings.fallback);

  const std::size_t n = static_cast<std::size_t>(settings.num_slots);
  std::vector<double> rates(n), credited(n), success(n);
  std::vector<char> fell_back(n, 0), degenerate(n, 0);
  for_each_slot(settings.num_slots, settings.jobs, [&](int s) {
    const std::size_t i = static_cast<std::size_t>(s);
    Rng rng(derive_seed(settings.seed, static_cast<std::uint64_t>(s)));
    const ChannelRealization truth = sample_serving(stats, rng);
    const CsiSample csi = sample_csi(truth, cfg, rng);
    const Beamformer b = bf(csi);
    const RateDecision d = rate_rule(csi, denom, rng);
    const double c = capacity(design.v, b.w, truth, denom, cfg);
    // Relative slack absorbs rounding when the rate equals the capacity.
    const bool ok = c >= d.rate - 1e-12 * std::max(1.0, d.rate);
    rates[i] = d.rate;
    success[i] = ok ? 1.0 : 0.0;
    credited[i] = ok ? d.rate : 0.0;
    fell_back[i] = d.fell_back ? 1 : 0;
    degenerate[i] = b.degenerate ? 1 : 0;
  });

  EvaluationReport r = base_report("goodput", design, cfg, settings);
  const Estimate mr = estimate_of(rates);
  r.mean_rate = mr;
  r.avg_goodput = Estimate{cfg.success_prob * mr.mean, cfg.success_prob * mr.se};
  r.empirical_goodput = estimate_of(credited);
  r.success_prob = estimate_of(success).mean;
  r.fallback_slots = static_cast<int>(std::count(fell_back.begin(), fell_back.end(), 1));
  r.degenerate_slots = static_cast<int>(std::count(degenerate.begin(), degenerate.end(), 1));
  return r;
}

std::vector<double> oracle_interference(const CVector& v, const SystemConfig& cfg, const ChannelStatistics& stats,
                                        int num_draws, Rng& rng) {
  if (num_draws < 1) throw std::invalid_argument("oracle_interference: num_draws must be >= 1");
  std::vector<double> sums(cfg.bs.size(), 0.0);
  for (int i = 0; i < num_draws; ++i) {
    const ChannelRealization r = sample_realization(stats, cfg, rng);
    for (std::size_t k = 1; k < cfg.bs.size(); ++k) {
      const CVector& self = r.interferer_self[k];
      const double n = self.norm();
      if (n == 0.0) continue;
      const CRowVector eff = v.adjoint() * r.cascaded[k] + r.direct[k].adjoint();
      sums[k] += std::norm((eff * self).value()) / (n * n);
    }
  }
  for (double& s : sums) s /= num_draws;
  return sums;
}

CsiSample worst_case_errors(const CVector& v, const CsiSample& csi, const ErrorSetRadii& radii) {
  const CRowVector e = effective_channel(v, csi);
  const double a = e.norm();
  const double root_n = std::sqrt(static_cast<double>(v.size()));
  const double margin = radii.eps_cascaded * root_n + radii.eps_direct;
  CVector w;
  if (a > 0.0) {
    w = e.adjoint() / a;
  } else {
    w = CVector::Zero(e.size());
    w(0) = 1.0;
  }
  // Stop at zero gain rather than passing through it.
  const double scale = (margin > a && margin > 0.0) ? a / margin : 1.0;
  CsiSample out = csi;
  out.err_cascaded = CMatrix(-(scale * radii.eps_cascaded / root_n) * (v * w.adjoint()));
  out.err_direct = CVector(-(scale * radii.eps_direct) * w);
  return out;
}

namespace {

double gain_at(const CVector& v, const CVector& w, const ChannelRealization& truth) {
  return std::abs(((v.adjoint() * truth.cascaded[0] + truth.direct[0].adjoint()) * w).value());
}

// Uniform point in the complex ball of the given radius.
CMatrix ball_point(Rng& rng, Eigen::Index rows, Eigen::Index cols, double radius) {
  if (radius == 0.0) return CMatrix::Zero(rows, cols);
  CMatrix d = complex_normal_matrix(rng, rows, cols);
  const double dim = 2.0 * static_cast<double>(rows * cols);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // Half the probes sit on the boundary, where the minimum lives.
  const double r = u(rng) < 0.5 ? radius : radius * std::pow(u(rng), 1.0 / dim);
  return d * (r / d.norm());
}

}  // namespace

WorstCaseResult oracle_worst_case(const CVector& v, const CsiSample& csi, const ErrorSetRadii& radii,
                                  const Denominator& denom, const SystemConfig& cfg, int num_draws, Rng& rng) {
  const Beamformer b = mrt_beamformer(v, csi);
  WorstCaseResult out;
  const ChannelRealization worst = reconstruct_truth(worst_case_errors(v, csi, radii));
  out.analytic_gain = gain_at(v, b.w, worst);
  out.analytic_capacity = capacity(v, b.w, worst, denom, cfg);
  out.probe_min_gain = std::numeric_limits<double>::infinity();
  out.probe_min_capacity = std::numeric_limits<double>::infinity();
  for (int i = 0; i < num_draws; ++i) {
    CsiSample probe = csi;
    probe.err_cascaded = ball_point(rng, csi.est_cascaded.rows(), csi.est_cascaded.cols(), radii.eps_cascaded);
    probe.err_direct = CVector(ball_point(rng, csi.est_direct.size(), 1, radii.eps_direct));
    const ChannelRealization truth = reconstruct_truth(probe);
    out.probe_min_gain = std::min(out.probe_min_gain, gain_at(v, b.w, truth));
    out.probe_min_capacity = std::min(out.probe_min_capacity, capacity(v, b.w, truth, denom, cfg));
  }
  return out;
}

}  // namespace irs
