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

#include "irsrobust/sweep.hpp"

#include "irsrobust/baselines.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace irs {

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::IrsSize: return "irs_size";
    case SweepAxis::Rician: return "rician";
    case SweepAxis::ErrStd: return "err_std";
    case SweepAxis::ErrStdRel: return "err_std_rel";
    case SweepAxis::DistUser: return "dist_user";
    case SweepAxis::DistIrs: return "dist_irs";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(const std::string& s) {
  for (SweepAxis a : {SweepAxis::IrsSize, SweepAxis::Rician, SweepAxis::ErrStd, SweepAxis::ErrStdRel,
                      SweepAxis::DistUser, SweepAxis::DistIrs})
    if (to_string(a) == s) return a;
  throw std::invalid_argument("unknown sweep axis '" + s + "'");
}

SweepSpec sweep_spec_from_json(const json& j, const std::string& base_dir) {
  try {
    SweepSpec s;
    std::filesystem::path cfg = j.at("config").get<std::string>();
    if (cfg.is_relative()) cfg = std::filesystem::path(base_dir) / cfg;
    s.config_path = cfg.string();
    s.axis = sweep_axis_from_string(j.at("axis").get<std::string>());
    s.values = j.at("values").get<std::vector<double>>();
    s.designs = j.at("designs").get<std::vector<std::string>>();
    if (j.contains("scenarios")) s.scenarios = j.at("scenarios").get<std::vector<std::string>>();
    if (j.contains("scenario")) s.scenarios = {j.at("scenario").get<std::string>()};
    s.slots = j.value("slots", s.slots);
    s.seed = j.value("seed", s.seed);
    s.ssca.max_iters = j.value("iters", s.ssca.max_iters);
    s.ssca.samples_per_iter = j.value("samples_per_iter", s.ssca.samples_per_iter);
    s.ssca.tau = j.value("tau", s.ssca.tau);

    if (s.values.empty()) throw std::invalid_argument("sweep 'values' must not be empty");
    if (s.designs.empty()) throw std::invalid_argument("sweep 'designs' must not be empty");
    if (s.scenarios.empty()) throw std::invalid_argument("sweep 'scenarios' must not be empty");
    for (const std::string& sc : s.scenarios)
      if (sc != "ergodic" && sc != "goodput") throw std::invalid_argument("unknown scenario '" + sc + "'");
    for (double v : s.values) {
      const bool nonneg_ok = s.axis == SweepAxis::ErrStd || s.axis == SweepAxis::ErrStdRel ||
                             s.axis == SweepAxis::Rician;
      if (!std::isfinite(v) || v < 0.0 || (!nonneg_ok && v == 0.0))
        throw std::invalid_argument("sweep value " + format_double(v) + " is out of range for axis " +
                                    to_string(s.axis));
      if (s.axis == SweepAxis::IrsSize && v != std::floor(v))
        throw std::invalid_argument("irs_size values must be integers");
    }
    if (s.slots < 2) throw std::invalid_argument("sweep 'slots' must be >= 2");
    s.ssca.validate();
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed sweep spec: ") + e.what());
  }
}

json sweep_spec_to_json(const SweepSpec& s) {
  return json{{"config", s.config_path}, {"axis", to_string(s.axis)}, {"values", s.values},
              {"designs", s.designs},    {"scenarios", s.scenarios},  {"slots", s.slots},
              {"seed", s.seed},          {"iters", s.ssca.max_iters}, {"samples_per_iter", s.ssca.samples_per_iter},
              {"tau", s.ssca.tau}};
}

SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value) {
  SystemConfig c = base;
  switch (axis) {
    case SweepAxis::IrsSize:
      c.irs.array.rows = static_cast<int>(value);
      c.irs.array.cols = static_cast<int>(value);
      break;
    case SweepAxis::Rician:
      c.bs.at(0).rician_irs = value;
      c.irs.rician_user = value;
      break;
    case SweepAxis::ErrStd:
      c.err_std_cascaded = value;
      c.err_std_direct = value;
      break;
    case SweepAxis::ErrStdRel:
      c.err_std_cascaded = value * std::sqrt(c.bs.at(0).to_irs.resolve() * c.irs.to_user.resolve());
      c.err_std_direct = value * std::sqrt(c.bs.at(0).direct.resolve());
      break;
    case SweepAxis::DistUser:
      place_user_on_bisector(c, value);
      break;
    case SweepAxis::DistIrs:
      if (!c.irs.position) throw ConfigError("dist_irs sweep needs irs.x / irs.y");
      c.irs.position->x = value;
      apply_layout(c);
      break;
  }
  c.validate();
  return c;
}

std::vector<SweepCell> plan_sweep(const SweepSpec& spec) {
  std::vector<SweepCell> cells;
  std::uint64_t row = 0;
  std::uint64_t index = 0;
  for (const std::string& sc : spec.scenarios) {
    for (double value : spec.values) {
      const std::uint64_t eval_seed = derive_seed(derive_seed(spec.seed, 0x65u), row++);
      for (const std::string& d : spec.designs) {
        SweepCell c;
        c.scenario = sc;
        c.value = value;
        c.design = d;
        c.design_seed = derive_seed(derive_seed(spec.seed, 0x64u), index++);
        c.eval_seed = eval_seed;
        cells.push_back(c);
      }
    }
  }
  return cells;
}

void run_cell(SweepCell& cell, const SweepSpec& spec, const SystemConfig& base) {
  try {
    const SystemConfig cfg = apply_axis(base, spec.axis, cell.value);
    const ChannelStatistics stats = build_statistics(cfg);
    SscaSettings ssca = spec.ssca;
    ssca.seed = cell.design_seed;
    const bool goodput = cell.scenario == "goodput";
    const DesignResult design =
        make_design(cell.design, cfg, stats, ssca, goodput ? DesignKind::GP1 : DesignKind::ER);
    EvalSettings ev;
    ev.num_slots = spec.slots;
    ev.seed = cell.eval_seed;
    if (goodput) {
      const EvaluationReport r = eval_goodput(design, cfg, stats, ev);
      cell.result = *r.avg_goodput;
      cell.success_prob = r.success_prob;
    } else {
      const EvaluationReport r = eval_ergodic(design, cfg, stats, ev);
      cell.result = *r.ergodic_rate;
      cell.success_prob = r.success_prob;
    }
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
}

std::vector<SweepCell> run_sweep(const SweepSpec& spec, const SystemConfig& base, int jobs) {
  std::vector<SweepCell> cells = plan_sweep(spec);
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(cells[i], spec, base);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return cells;
}

void write_sweep_outputs(const SweepSpec& spec, const SystemConfig& base, const std::vector<SweepCell>& cells,
                         const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string hash = config_hash(base);
  json manifest{{"spec", sweep_spec_to_json(spec)}, {"config_hash", hash}, {"seed", spec.seed}};
  json cell_list = json::array();

  for (const std::string& sc : spec.scenarios) {
    std::ostringstream csv;
    csv << "# config_hash=" << hash << " seed=" << spec.seed << '\n';
    csv << to_string(spec.axis);
    for (const std::string& d : spec.designs) csv << ',' << d << ',' << d << "_se";
    csv << '\n';
    for (double value : spec.values) {
      csv << format_double(value);
      for (const std::string& d : spec.designs) {
        for (const SweepCell& c : cells) {
          if (c.scenario != sc || c.value != value || c.design != d) continue;
          if (c.ok)
            csv << ',' << format_double(c.result.mean) << ',' << format_double(c.result.se);
          else
            csv << ",nan,nan";
        }
      }
      csv << '\n';
    }
    write_text_file((std::filesystem::path(out_dir) / (sc + "_" + to_string(spec.axis) + ".csv")).string(),
                    csv.str());
  }

  for (const SweepCell& c : cells) {
    json jc{{"scenario", c.scenario},       {"value", c.value},         {"design", c.design},
            {"design_seed", c.design_seed}, {"eval_seed", c.eval_seed}, {"ok", c.ok}};
    if (c.ok) {
      jc["mean"] = c.result.mean;
      jc["se"] = c.result.se;
      jc["success_prob"] = c.success_prob;
    } else {
      jc["error"] = c.error;
    }
    cell_list.push_back(jc);
  }
  manifest["cells"] = cell_list;
  write_text_file((std::filesystem::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
}

}  // namespace irs
