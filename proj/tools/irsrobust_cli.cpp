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
#include "irsrobust/config.hpp"
#include "irsrobust/evaluate.hpp"
#include "irsrobust/io.hpp"
#include "irsrobust/ssca.hpp"
#include "irsrobust/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitNumeric = 4;

struct ExitError : std::runtime_error {
  ExitError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

std::string join(const std::filesystem::path& dir, const std::string& name) { return (dir / name).string(); }

irs::SystemConfig load(const std::string& path) {
  try {
    return irs::load_config(path);
  } catch (const irs::ConfigError& e) {
    throw ExitError(kExitUsage, e.what());
  }
}

struct OptimizeArgs {
  std::string cfg;
  std::string design = "er";
  std::uint64_t seed = 0;
  int iters = 2000;
  int samples = 16;
  double tau = 1.0;
  std::string out = ".";
  std::string b3_kind = "er";
  bool b1_literal = false;
  bool random_init = false;
};

int cmd_optimize(const OptimizeArgs& a) {
  const irs::SystemConfig cfg = load(a.cfg);
  const irs::ChannelStatistics stats = irs::build_statistics(cfg);
  irs::SscaSettings s;
  s.seed = a.seed;
  s.max_iters = a.iters;
  s.samples_per_iter = a.samples;
  s.tau = a.tau;
  s.random_init = a.random_init;
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ExitError(kExitUsage, e.what());
  }
  const irs::DesignResult d =
      irs::make_design(a.design, cfg, stats, s, irs::design_kind_from_string(a.b3_kind), a.b1_literal);
  for (Eigen::Index n = 0; n < d.v.size(); ++n)
    if (!std::isfinite(d.v(n).real()) || !std::isfinite(d.v(n).imag()))
      throw ExitError(kExitNumeric, "optimizer produced non-finite phase shifts");

  const std::filesystem::path out(a.out);
  std::filesystem::create_directories(out);
  irs::json j = irs::design_to_json(d);
  j["settings"] = {{"tau", s.tau},
                   {"rho_exponent", s.rho_exponent},
                   {"omega_exponent", s.omega_exponent},
                   {"random_init", s.random_init}};
  irs::write_text_file(join(out, "design.json"), j.dump(2) + "\n");
  irs::write_text_file(join(out, "trace.csv"), "# config_hash=" + d.config_hash + " seed=" + std::to_string(a.seed) +
                                                   "\n" + irs::trace_to_csv(d.trace));
  std::cout << "wrote " << join(out, "design.json") << " (" << d.tag << ", " << d.v.size() << " elements)\n";
  return 0;
}

struct EvaluateArgs {
  std::string cfg;
  std::string design;
  std::string scenario = "auto";
  int slots = 10000;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out = "report.json";
  std::string csv;
};

int cmd_evaluate(const EvaluateArgs& a) {
  if (a.slots < 2) throw ExitError(kExitUsage, "--slots must be at least 2");
  const irs::SystemConfig cfg = load(a.cfg);
  irs::DesignResult d;
  try {
    d = irs::design_from_json(irs::json::parse(irs::read_text_file(a.design)));
  } catch (const std::exception& e) {
    throw ExitError(kExitUsage, std::string("cannot read design: ") + e.what());
  }
  if (d.v.size() != cfg.irs_size())
    throw ExitError(kExitMismatch, "design has " + std::to_string(d.v.size()) + " phase shifts but the config's IRS has " +
                                       std::to_string(cfg.irs_size()) + " elements");
  const irs::ChannelStatistics stats = irs::build_statistics(cfg);
  irs::EvalSettings ev;
  ev.num_slots = a.slots;
  ev.seed = a.seed;
  ev.jobs = a.jobs;

  std::string scenario = a.scenario;
  if (scenario == "auto") scenario = d.has_rate_rule() ? "goodput" : "ergodic";
  irs::EvaluationReport r;
  if (scenario == "ergodic") {
    r = irs::eval_ergodic(d, cfg, stats, ev);
  } else {
    if (!d.has_rate_rule()) throw ExitError(kExitMismatch, "design '" + d.tag + "' has no rate rule for goodput");
    r = irs::eval_goodput(d, cfg, stats, ev);
  }
  for (const auto& e : {r.ergodic_rate, r.avg_goodput})
    if (e && (!std::isfinite(e->mean) || !std::isfinite(e->se)))
      throw ExitError(kExitNumeric, "evaluation produced a non-finite result");

  const std::filesystem::path out(a.out);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  irs::write_text_file(a.out, irs::report_to_json(r).dump(2) + "\n");
  const std::string csv = a.csv.empty() ? (out.parent_path() / "report.csv").string() : a.csv;
  irs::append_report_csv(csv, r);
  const irs::Estimate& headline = r.ergodic_rate ? *r.ergodic_rate : *r.avg_goodput;
  std::cout << r.scenario << ' ' << r.design_tag << ": " << headline.mean << " +/- " << headline.se
            << " bit/s/Hz, success " << r.success_prob << '\n';
  return 0;
}

struct SweepArgs {
  std::string spec;
  std::string out = "sweep_out";
  int jobs = 1;
};

int cmd_sweep(const SweepArgs& a) {
  irs::SweepSpec spec;
  try {
    const std::filesystem::path p(a.spec);
    spec = irs::sweep_spec_from_json(irs::json::parse(irs::read_text_file(a.spec)), p.parent_path().string());
  } catch (const std::exception& e) {
    throw ExitError(kExitUsage, std::string("bad sweep spec: ") + e.what());
  }
  const irs::SystemConfig base = load(spec.config_path);
  const std::vector<irs::SweepCell> cells = irs::run_sweep(spec, base, a.jobs);
  irs::write_sweep_outputs(spec, base, cells, a.out);
  int failed = 0;
  for (const irs::SweepCell& c : cells)
    if (!c.ok) {
      ++failed;
      std::cerr << "cell " << c.scenario << '/' << c.value << '/' << c.design << " failed: " << c.error << '\n';
    }
  std::cout << "sweep: " << cells.size() - failed << " of " << cells.size() << " cells ok, outputs in " << a.out
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust beamforming and quasi-static IRS phase-shift design"};
  app.require_subcommand(1);

  OptimizeArgs oa;
  CLI::App* opt = app.add_subcommand("optimize", "Optimize phase shifts and write design.json + trace.csv");
  opt->add_option("--cfg", oa.cfg, "Scenario config file")->required();
  opt->add_option("--design", oa.design, "Design tag")
      ->check(CLI::IsMember({"er", "gp1", "gp2", "b1", "b2", "b3", "b4"}));
  opt->add_option("--seed", oa.seed, "Master seed");
  opt->add_option("--iters", oa.iters, "SSCA iterations T");
  opt->add_option("--samples-per-iter", oa.samples, "Channel samples per iteration L");
  opt->add_option("--tau", oa.tau, "Surrogate curvature");
  opt->add_option("--out", oa.out, "Output directory");
  opt->add_option("--b3-kind", oa.b3_kind, "Design optimized by b3")->check(CLI::IsMember({"er", "gp1", "gp2"}));
  opt->add_flag("--b1-literal", oa.b1_literal, "Use the literal steering-difference phase for b1");
  opt->add_flag("--random-init", oa.random_init, "Start from uniform random phases");

  EvaluateArgs ea;
  CLI::App* eva = app.add_subcommand("evaluate", "Monte Carlo evaluation of a design");
  eva->add_option("--cfg", ea.cfg, "Scenario config file")->required();
  eva->add_option("--design", ea.design, "design.json written by optimize")->required();
  eva->add_option("--scenario", ea.scenario, "ergodic, goodput or auto")
      ->check(CLI::IsMember({"auto", "ergodic", "goodput"}));
  eva->add_option("--slots", ea.slots, "Number of slots");
  eva->add_option("--seed", ea.seed, "Master seed");
  eva->add_option("--jobs", ea.jobs, "Worker threads")->check(CLI::PositiveNumber);
  eva->add_option("--out", ea.out, "Report JSON path");
  eva->add_option("--csv", ea.csv, "CSV file to append to (default: report.csv next to --out)");

  SweepArgs sa;
  CLI::App* swp = app.add_subcommand("sweep", "Parameter sweep over one axis");
  swp->add_option("--spec", sa.spec, "Sweep spec JSON")->required();
  swp->add_option("--out", sa.out, "Output directory");
  swp->add_option("--jobs", sa.jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (opt->parsed()) return cmd_optimize(oa);
    if (eva->parsed()) return cmd_evaluate(ea);
    if (swp->parsed()) return cmd_sweep(sa);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code;
  } catch (const irs::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
