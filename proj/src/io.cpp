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

#include "irsrobust/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace irs {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json design_to_json(const DesignResult& d) {
  json v = json::array();
  for (Eigen::Index n = 0; n < d.v.size(); ++n) {
    v.push_back(d.v(n).real());
    v.push_back(d.v(n).imag());
  }
  json trace = json::object();
  trace["iterations"] = d.iterations;
  trace["samples_per_iter"] = d.samples_per_iter;
  trace["degenerate_steps"] = d.degenerate_steps;
  if (!d.trace.empty()) {
    trace["final_c0"] = d.trace.back().c0;
    trace["final_movement"] = d.trace.back().movement;
  }
  return json{{"tag", d.tag},
              {"kind", to_string(d.kind)},
              {"rate_rule", to_string(d.rate_kind)},
              {"irs_size", d.v.size()},
              {"v", v},
              {"seed", d.seed},
              {"config_hash", d.config_hash},
              {"trace", trace}};
}

DesignResult design_from_json(const json& j) {
  try {
    DesignResult d;
    d.tag = j.at("tag").get<std::string>();
    d.kind = design_kind_from_string(j.at("kind").get<std::string>());
    d.rate_kind = rate_kind_from_string(j.at("rate_rule").get<std::string>());
    const json& v = j.at("v");
    if (!v.is_array() || v.size() % 2 != 0) throw std::invalid_argument("'v' must hold interleaved re/im pairs");
    d.v.resize(static_cast<Eigen::Index>(v.size() / 2));
    for (std::size_t n = 0; n < v.size() / 2; ++n)
      d.v(static_cast<Eigen::Index>(n)) = cdouble(v[2 * n].get<double>(), v[2 * n + 1].get<double>());
    if (j.contains("irs_size") && j.at("irs_size").get<long>() != d.v.size())
      throw std::invalid_argument("'irs_size' does not match the length of 'v'");
    d.seed = j.value("seed", std::uint64_t{0});
    d.config_hash = j.value("config_hash", std::string{});
    if (j.contains("trace")) {
      const json& t = j.at("trace");
      d.iterations = t.value("iterations", 0);
      d.samples_per_iter = t.value("samples_per_iter", 0);
      d.degenerate_steps = t.value("degenerate_steps", 0);
    }
    return d;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed design file: ") + e.what());
  }
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream os;
  os << "t,c0,c1_norm,rho,omega,movement\n";
  for (const TraceRow& r : trace)
    os << r.t << ',' << format_double(r.c0) << ',' << format_double(r.c1_norm) << ',' << format_double(r.rho)
       << ',' << format_double(r.omega) << ',' << format_double(r.movement) << '\n';
  return os.str();
}

namespace {

json estimate_json(const std::optional<Estimate>& e) {
  if (!e) return nullptr;
  return json{{"mean", e->mean}, {"se", e->se}};
}

std::string est_mean(const std::optional<Estimate>& e) { return e ? format_double(e->mean) : ""; }
std::string est_se(const std::optional<Estimate>& e) { return e ? format_double(e->se) : ""; }

}  // namespace

json report_to_json(const EvaluationReport& r) {
  return json{{"scenario", r.scenario},
              {"design", r.design_tag},
              {"ergodic_rate", estimate_json(r.ergodic_rate)},
              {"avg_goodput", estimate_json(r.avg_goodput)},
              {"empirical_goodput", estimate_json(r.empirical_goodput)},
              {"mean_rate", estimate_json(r.mean_rate)},
              {"success_prob", r.success_prob},
              {"num_slots", r.num_slots},
              {"seed", r.seed},
              {"fallback_slots", r.fallback_slots},
              {"degenerate_slots", r.degenerate_slots},
              {"config_hash", r.config_hash}};
}

std::string report_csv_header() {
  return "scenario,design,ergodic_rate,ergodic_rate_se,avg_goodput,avg_goodput_se,empirical_goodput,"
         "empirical_goodput_se,success_prob,num_slots,seed,fallback_slots,config_hash\n";
}

std::string report_csv_row(const EvaluationReport& r) {
  std::ostringstream os;
  os << r.scenario << ',' << r.design_tag << ',' << est_mean(r.ergodic_rate) << ',' << est_se(r.ergodic_rate) << ','
     << est_mean(r.avg_goodput) << ',' << est_se(r.avg_goodput) << ',' << est_mean(r.empirical_goodput) << ','
     << est_se(r.empirical_goodput) << ',' << format_double(r.success_prob) << ',' << r.num_slots << ',' << r.seed
     << ',' << r.fallback_slots << ',' << r.config_hash << '\n';
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void append_report_csv(const std::string& path, const EvaluationReport& report) {
  bool need_header = true;
  {
    std::ifstream probe(path, std::ios::binary | std::ios::ate);
    if (probe && probe.tellg() > 0) need_header = false;
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot append to '" + path + "'");
  if (need_header) out << report_csv_header();
  out << report_csv_row(report);
}

}  // namespace irs
