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

#include "irsrobust/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace irs {

double LinkGain::resolve() const {
  if (alpha) return *alpha;
  if (distance && exponent) return pathloss_alpha(*distance, *exponent);
  throw ConfigError("link gain needs either alpha or distance and exponent");
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double pathloss_alpha(double distance, double exponent) {
  if (!(distance > 0.0)) throw ConfigError("path-loss distance must be positive");
  return 1.0 / (1000.0 * std::pow(distance, exponent));
}

namespace {

void check_geometry(const UraGeometry& g, const std::string& who) {
  if (g.rows < 1 || g.cols < 1) throw ConfigError(who + ": array needs at least one row and column");
  if (!(g.spacing > 0.0 && g.spacing <= 0.5))
    throw ConfigError(who + ": element spacing must lie in (0, 0.5] wavelengths");
}

void check_gain(const LinkGain& g, const std::string& who) {
  if (g.alpha) {
    if (!(*g.alpha >= 0.0) || !std::isfinite(*g.alpha))
      throw ConfigError(who + ": alpha must be finite and non-negative");
    return;
  }
  if (!g.distance || !g.exponent)
    throw ConfigError(who + ": missing alpha (or distance and path-loss exponent)");
  if (!(*g.distance > 0.0)) throw ConfigError(who + ": distance must be positive");
}

void check_angles(const AnglePair& a, const std::string& who) {
  if (!std::isfinite(a.azimuth) || !std::isfinite(a.elevation))
    throw ConfigError(who + ": angles must be finite");
}

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void fill_from_layout(LinkGain& g, const std::optional<Point2>& a, const std::optional<Point2>& b) {
  if (g.alpha) return;
  if (g.distance && !g.distance_from_layout) return;
  if (!a || !b) return;
  g.distance = distance(*a, *b);
  g.distance_from_layout = true;
}

}  // namespace

void SystemConfig::validate() const {
  if (bs.empty()) throw ConfigError("at least the serving BS (bs0) must be configured");
  check_geometry(irs.array, "irs");
  if (!(irs.rician_user >= 0.0)) throw ConfigError("irs: Rician factor must be >= 0");
  check_angles(irs.user_departure, "irs");
  check_gain(irs.to_user, "irs.user");
  for (std::size_t k = 0; k < bs.size(); ++k) {
    const std::string who = "bs" + std::to_string(k);
    const BsConfig& b = bs[k];
    check_geometry(b.array, who);
    if (!(b.tx_power >= 0.0) || !std::isfinite(b.tx_power))
      throw ConfigError(who + ": transmit power must be finite and >= 0");
    if (!(b.rician_irs >= 0.0)) throw ConfigError(who + ": Rician factor must be >= 0");
    check_angles(b.departure, who);
    check_angles(b.irs_arrival, who);
    check_gain(b.direct, who + ".direct");
    check_gain(b.to_irs, who + ".irs");
    if (!(b.alpha_self > 0.0)) throw ConfigError(who + ": self_alpha must be positive");
  }
  if (!(noise_power > 0.0) || !std::isfinite(noise_power))
    throw ConfigError("noise power must be positive");
  if (!(err_std_cascaded >= 0.0) || !(err_std_direct >= 0.0))
    throw ConfigError("CSI error standard deviations must be >= 0");
  if (!(success_prob > 0.0 && success_prob < 1.0))
    throw ConfigError("success_prob must lie strictly inside (0, 1)");
}

void apply_layout(SystemConfig& cfg) {
  for (BsConfig& b : cfg.bs) {
    fill_from_layout(b.direct, b.position, cfg.user_position);
    fill_from_layout(b.to_irs, b.position, cfg.irs.position);
  }
  fill_from_layout(cfg.irs.to_user, cfg.irs.position, cfg.user_position);
}

void place_user_on_bisector(SystemConfig& cfg, double d00) {
  if (cfg.bs.size() < 3 || !cfg.bs[0].position || !cfg.bs[1].position || !cfg.bs[2].position)
    throw ConfigError("user placement needs coordinates for bs0, bs1 and bs2");
  if (!(d00 > 0.0)) throw ConfigError("user distance must be positive");
  const Point2 o = *cfg.bs[0].position;
  const Point2 p1 = *cfg.bs[1].position;
  const Point2 p2 = *cfg.bs[2].position;
  const Point2 mid{(p1.x + p2.x) / 2.0, (p1.y + p2.y) / 2.0};
  // Bisector: mid + s * n, n perpendicular to p2 - p1.
  double nx = -(p2.y - p1.y);
  double ny = p2.x - p1.x;
  const double nn = std::hypot(nx, ny);
  nx /= nn;
  ny /= nn;
  // |mid - o + s n|^2 = d00^2
  const double ax = mid.x - o.x;
  const double ay = mid.y - o.y;
  const double b = ax * nx + ay * ny;
  const double c = ax * ax + ay * ay - d00 * d00;
  const double disc = b * b - c;
  if (disc < 0.0) throw ConfigError("bisector does not reach the requested user distance");
  // Of the two intersections keep the one closest to the midpoint.
  const double s1 = -b + std::sqrt(disc);
  const double s2 = -b - std::sqrt(disc);
  const double s = std::abs(s1) < std::abs(s2) ? s1 : s2;
  cfg.user_position = Point2{mid.x + s * nx, mid.y + s * ny};
  apply_layout(cfg);
}

// ---------------------------------------------------------------- expressions

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  double parse() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("bad value '" + s_ + "': " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }
  double atom() {
    skip();
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
      const std::string name = s_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "pi") return std::numbers::pi;
      if (name == "sqrt") {
        if (!eat('(')) fail("sqrt needs parentheses");
        const double v = sum();
        if (!eat(')')) fail("missing ')'");
        return std::sqrt(v);
      }
      fail("unknown name '" + name + "'");
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Entry {
  std::string value;
  int line;
};

class KeyTable {
 public:
  KeyTable(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  std::optional<double> number(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    used_.insert(key);
    try {
      return eval_expression(it->second.value);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(e.what()) + " (key " + key + ")", it->second.line);
    }
  }

  double require(const std::string& key) {
    auto v = number(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
  }

  int integer(const std::string& key, int fallback) {
    auto v = number(key);
    if (!v) return fallback;
    if (*v != std::floor(*v)) throw ConfigError("key '" + key + "' must be an integer", line(key));
    return static_cast<int>(*v);
  }

  std::optional<bool> boolean(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    used_.insert(key);
    const std::string& v = it->second.value;
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "' expects true/false", it->second.line);
  }

  int line(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  void reject_unused() const {
    for (const auto& [key, entry] : entries_)
      if (!used_.count(key)) throw ConfigError("unknown or out-of-range key '" + key + "'", entry.line);
  }

 private:
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

std::optional<Point2> read_point(KeyTable& t, const std::string& prefix) {
  auto x = t.number(prefix + ".x");
  auto y = t.number(prefix + ".y");
  if (!x && !y) return std::nullopt;
  if (!x || !y) throw ConfigError(prefix + " needs both .x and .y");
  return Point2{*x, *y};
}

LinkGain read_gain(KeyTable& t, const std::string& prefix) {
  LinkGain g;
  g.alpha = t.number(prefix + "_alpha");
  g.distance = t.number(prefix + "_dist");
  g.exponent = t.number(prefix + "_ple");
  return g;
}

UraGeometry read_geometry(KeyTable& t, const std::string& prefix, double spacing, UraGeometry def) {
  UraGeometry g;
  g.rows = t.integer(prefix + ".rows", def.rows);
  g.cols = t.integer(prefix + ".cols", def.cols);
  g.spacing = spacing;
  return g;
}

double read_power(KeyTable& t, const std::string& prefix) {
  auto dbm = t.number(prefix + ".power_dbm");
  auto w = t.number(prefix + ".power_w");
  if (dbm && w)
    throw ConfigError(prefix + ": give power_dbm or power_w, not both",
                      std::max(t.line(prefix + ".power_w"), t.line(prefix + ".power_dbm")));
  if (w) return *w;
  if (dbm) return dbm_to_watts(*dbm);
  throw ConfigError("missing transmit power for " + prefix);
}

}  // namespace

double eval_expression(const std::string& expr) { return ExprParser(expr).parse(); }

SystemConfig parse_config(const std::string& text, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source + ": expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(source + ": empty key or value", lineno);
    if (!entries.emplace(key, Entry{value, lineno}).second)
      throw ConfigError(source + ": duplicate key '" + key + "'", lineno);
  }

  KeyTable t(std::move(entries));
  SystemConfig cfg;
  std::optional<double> err_rel;
  try {
    const double spacing = t.number("spacing").value_or(0.5);
    const int k_count = t.integer("num_interferers", 0);
    if (k_count < 0) throw ConfigError("num_interferers must be >= 0", t.line("num_interferers"));

    if (auto v = t.number("noise_power_dbm")) cfg.noise_power = dbm_to_watts(*v);
    if (auto v = t.number("noise_power_w")) cfg.noise_power = *v;
    cfg.err_std_cascaded = t.number("err_std_cascaded").value_or(0.0);
    cfg.err_std_direct = t.number("err_std_direct").value_or(0.0);
    err_rel = t.number("err_std_rel");
    if (err_rel && (t.line("err_std_cascaded") > 0 || t.line("err_std_direct") > 0))
      throw ConfigError("give err_std_rel or absolute error stds, not both", t.line("err_std_rel"));
    cfg.success_prob = t.number("success_prob").value_or(0.95);
    cfg.los_only = t.boolean("los_only").value_or(false);
    cfg.user_position = read_point(t, "user");

    cfg.irs.array = read_geometry(t, "irs", spacing, UraGeometry{8, 8, spacing});
    cfg.irs.rician_user = t.number("irs.rician").value_or(0.0);
    cfg.irs.user_departure.azimuth = t.require("irs.user_az");
    cfg.irs.user_departure.elevation = t.require("irs.user_el");
    cfg.irs.to_user = read_gain(t, "irs.user");
    cfg.irs.position = read_point(t, "irs");

    for (int k = 0; k <= k_count; ++k) {
      const std::string p = "bs" + std::to_string(k);
      BsConfig b;
      b.array = read_geometry(t, p, spacing, UraGeometry{4, 4, spacing});
      b.tx_power = read_power(t, p);
      b.rician_irs = t.number(p + ".rician").value_or(0.0);
      b.departure.azimuth = t.require(p + ".depart_az");
      b.departure.elevation = t.require(p + ".depart_el");
      b.irs_arrival.azimuth = t.number(p + ".arrive_az").value_or(b.irs_arrival.azimuth);
      b.irs_arrival.elevation = t.number(p + ".arrive_el").value_or(b.irs_arrival.elevation);
      b.direct = read_gain(t, p + ".direct");
      b.to_irs = read_gain(t, p + ".irs");
      b.alpha_self = t.number(p + ".self_alpha").value_or(1.0);
      b.position = read_point(t, p);
      cfg.bs.push_back(b);
    }
    // Anything left over (e.g. bs3.* with num_interferers = 2) is a dimension mismatch.
    t.reject_unused();
  } catch (const ConfigError& e) {
    if (e.line() > 0) throw;
    throw ConfigError(source + ": " + e.what());
  }
  apply_layout(cfg);
  try {
    if (err_rel) {
      // Relative to the per-entry std of G_{0,0} and h_{0,0}.
      cfg.err_std_cascaded = *err_rel * std::sqrt(cfg.bs[0].to_irs.resolve() * cfg.irs.to_user.resolve());
      cfg.err_std_direct = *err_rel * std::sqrt(cfg.bs[0].direct.resolve());
    }
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_gain(std::ostream& os, const std::string& prefix, const LinkGain& g) {
  if (g.alpha) os << prefix << "_alpha = " << num(*g.alpha) << '\n';
  if (g.distance && !g.distance_from_layout) os << prefix << "_dist = " << num(*g.distance) << '\n';
  if (g.exponent) os << prefix << "_ple = " << num(*g.exponent) << '\n';
}

void write_point(std::ostream& os, const std::string& prefix, const std::optional<Point2>& p) {
  if (!p) return;
  os << prefix << ".x = " << num(p->x) << '\n' << prefix << ".y = " << num(p->y) << '\n';
}

}  // namespace

std::string to_config_text(const SystemConfig& cfg) {
  std::ostringstream os;
  os << "spacing = " << num(cfg.irs.array.spacing) << '\n';
  os << "num_interferers = " << cfg.num_interferers() << '\n';
  os << "noise_power_w = " << num(cfg.noise_power) << '\n';
  os << "err_std_cascaded = " << num(cfg.err_std_cascaded) << '\n';
  os << "err_std_direct = " << num(cfg.err_std_direct) << '\n';
  os << "success_prob = " << num(cfg.success_prob) << '\n';
  os << "los_only = " << (cfg.los_only ? "true" : "false") << '\n';
  write_point(os, "user", cfg.user_position);
  os << "irs.rows = " << cfg.irs.array.rows << '\n';
  os << "irs.cols = " << cfg.irs.array.cols << '\n';
  os << "irs.rician = " << num(cfg.irs.rician_user) << '\n';
  os << "irs.user_az = " << num(cfg.irs.user_departure.azimuth) << '\n';
  os << "irs.user_el = " << num(cfg.irs.user_departure.elevation) << '\n';
  write_gain(os, "irs.user", cfg.irs.to_user);
  write_point(os, "irs", cfg.irs.position);
  for (std::size_t k = 0; k < cfg.bs.size(); ++k) {
    const BsConfig& b = cfg.bs[k];
    const std::string p = "bs" + std::to_string(k);
    os << p << ".rows = " << b.array.rows << '\n';
    os << p << ".cols = " << b.array.cols << '\n';
    os << p << ".power_w = " << num(b.tx_power) << '\n';
    os << p << ".rician = " << num(b.rician_irs) << '\n';
    os << p << ".depart_az = " << num(b.departure.azimuth) << '\n';
    os << p << ".depart_el = " << num(b.departure.elevation) << '\n';
    os << p << ".arrive_az = " << num(b.irs_arrival.azimuth) << '\n';
    os << p << ".arrive_el = " << num(b.irs_arrival.elevation) << '\n';
    write_gain(os, p + ".direct", b.direct);
    write_gain(os, p + ".irs", b.to_irs);
    os << p << ".self_alpha = " << num(b.alpha_self) << '\n';
    write_point(os, p, b.position);
  }
  return os.str();
}

std::string config_hash(const SystemConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_config_text(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace irs
