// Copyright 2026 The rmt-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rmtlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "rmtlab/error.hpp"
#include "rmtlab/format.hpp"

namespace rmtlab {

namespace {

using nlohmann::json;

constexpr double kCanvas = 800.0;
constexpr double kMargin = 60.0;

// Fixed two-decimal pixel coordinates keep SVG bytes stable and small.
std::string px(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, r.ptr);
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_open() {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n"
         "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
}

std::string text(double x, double y, std::string_view s, std::string_view anchor = "middle") {
  return "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-family=\"sans-serif\" " +
         "font-size=\"14\" text-anchor=\"" + std::string(anchor) + "\">" + xml_escape(s) +
         "</text>\n";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

}  // namespace

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trials_csv(const Summary& summary) {
  std::string out = "trial";
  for (const auto& c : summary.columns) out += "," + c;
  out += ",singular\n";
  for (const auto& r : summary.records) {
    out += std::to_string(r.trial);
    for (double v : r.values) out += "," + format_double(v);
    out += r.singular ? ",1\n" : ",0\n";
  }
  return out;
}

std::string smin_tail_csv(const Summary& summary, const ExperimentConfig& config) {
  std::string out = "epsilon,p_hat,ci_lo,ci_hi,trials,n,dist,z_re,z_im\n";
  const std::string tail = "," + std::to_string(config.ensemble.n) + "," +
                           config.ensemble.dist.name() + "," + format_double(config.z.real()) +
                           "," + format_double(config.z.imag()) + "\n";
  for (const auto& p : summary.proportions) {
    if (p.label.rfind("eps=", 0) != 0) continue;
    out += format_double(p.threshold) + "," + format_double(p.p_hat) + "," +
           format_double(p.ci.lo) + "," + format_double(p.ci.hi) + "," +
           std::to_string(p.trials) + tail;
  }
  return out;
}

std::string proportions_csv(const Summary& summary) {
  std::string out = "label,threshold,successes,trials,p_hat,ci_lo,ci_hi\n";
  for (const auto& p : summary.proportions) {
    out += p.label + "," + format_double(p.threshold) + "," + std::to_string(p.successes) + "," +
           std::to_string(p.trials) + "," + format_double(p.p_hat) + "," +
           format_double(p.ci.lo) + "," + format_double(p.ci.hi) + "\n";
  }
  return out;
}

std::string eigenvalues_csv(const Esd2D& esd) {
  std::string out = "re,im\n";
  for (const auto& z : esd.eigenvalues) {
    out += format_double(z.real()) + "," + format_double(z.imag()) + "\n";
  }
  return out;
}

std::string potential_grid_csv(const PotentialGrid& grid) {
  std::string out = "re,im,potential,circular,deviation\n";
  for (const auto& p : grid.points) {
    const double u = circular_potential(p.z);
    out += format_double(p.z.real()) + "," + format_double(p.z.imag()) + ",";
    if (p.value) {
      out += format_double(*p.value) + "," + format_double(u) + "," +
             format_double(std::abs(*p.value - u)) + "\n";
    } else {
      out += "singular," + format_double(u) + ",inf\n";
    }
  }
  return out;
}

std::string smallball_csv(const std::vector<SmallBallRow>& rows) {
  std::string out = "epsilon,p_hat,half_width,be_bound,esseen_bound,lcd_bound\n";
  for (const auto& r : rows) {
    out += format_double(r.epsilon) + "," + format_double(r.p_hat) + "," +
           format_double(r.half_width) + "," + format_double(r.be_bound) + "," +
           (r.esseen_bound ? format_double(*r.esseen_bound) : std::string()) + "," +
           format_double(r.lcd_bound) + "\n";
  }
  return out;
}

std::string summary_json(const Summary& summary) {
  json j;
  j["tool_version"] = kToolVersion;
  j["csv_schema"] = kCsvSchemaVersion;
  j["kind"] = to_string(summary.kind);
  j["config_hash"] = hash_hex(summary.config_hash);
  j["config"] = summary.canonical_config;
  j["trials"] = summary.trials;
  j["singular_trials"] = summary.singular_trials;
  j["wall_seconds"] = summary.wall_seconds;
  j["columns"] = summary.columns;
  json stats = json::array();
  for (const auto& s : summary.stats) {
    stats.push_back({{"name", s.name},
                     {"count", s.count},
                     {"mean", s.mean},
                     {"median", s.median},
                     {"min", s.min},
                     {"max", s.max},
                     {"mean_ci", interval_json(s.mean_ci)}});
  }
  j["stats"] = std::move(stats);
  json props = json::array();
  for (const auto& p : summary.proportions) {
    props.push_back({{"label", p.label},
                     {"threshold", p.threshold},
                     {"successes", p.successes},
                     {"trials", p.trials},
                     {"p_hat", p.p_hat},
                     {"ci", interval_json(p.ci)}});
  }
  j["proportions"] = std::move(props);
  json scalars = json::object();
  for (const auto& [name, value] : summary.scalars) scalars[name] = value;
  j["scalars"] = std::move(scalars);
  return j.dump(2) + "\n";
}

std::vector<Complex> read_vector_csv(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  std::vector<Complex> out;
  std::istringstream in(content);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    const auto re = parse_number(line.substr(0, comma));
    std::optional<double> im = 0.0;
    if (comma != std::string_view::npos) im = parse_number(line.substr(comma + 1));
    if (!re || !im) {
      if (out.empty() && line_no == 1) continue;  // header
      throw Error(ErrorCode::kParse,
                  path.string() + ":" + std::to_string(line_no) + ": expected re or re,im");
    }
    out.emplace_back(*re, *im);
  }
  if (out.empty()) throw Error(ErrorCode::kParse, path.string() + ": no coordinates");
  return out;
}

std::string scatter_svg(const Esd2D& esd, bool unit_circle, double extent) {
  if (!(extent > 0.0)) throw Error(ErrorCode::kBadParams, "scatter extent must be positive");
  const double scale = (kCanvas - 2 * kMargin) / (2 * extent);
  const double cx = kCanvas / 2;
  auto map_x = [&](double x) { return cx + x * scale; };
  auto map_y = [&](double y) { return cx - y * scale; };

  std::string out = svg_open();
  out += "<g stroke=\"#888\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + px(kMargin) + "\" y1=\"" + px(cx) + "\" x2=\"" + px(kCanvas - kMargin) +
         "\" y2=\"" + px(cx) + "\"/>\n";
  out += "<line x1=\"" + px(cx) + "\" y1=\"" + px(kMargin) + "\" x2=\"" + px(cx) + "\" y2=\"" +
         px(kCanvas - kMargin) + "\"/>\n";
  out += "</g>\n";
  out += text(kCanvas - kMargin + 20, cx + 5, "Re");
  out += text(cx, kMargin - 15, "Im");
  if (unit_circle) {
    out += "<circle class=\"unit-circle\" cx=\"" + px(cx) + "\" cy=\"" + px(cx) + "\" r=\"" +
           px(scale) + "\" fill=\"none\" stroke=\"#c00\" stroke-width=\"1.5\"/>\n";
  }
  out += "<g fill=\"#1f4e9c\">\n";
  std::set<std::pair<long long, long long>> seen;
  for (const auto& z : esd.eigenvalues) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) continue;
    const auto key = std::make_pair(std::llround(z.real() * 1000), std::llround(z.imag() * 1000));
    if (!seen.insert(key).second) continue;
    out += "<circle cx=\"" + px(map_x(z.real())) + "\" cy=\"" + px(map_y(z.imag())) +
           "\" r=\"2\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string curve_svg(const std::vector<CurvePoint>& points, std::string_view title,
                      std::string_view x_label, std::string_view y_label) {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  bool first = true;
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
    const double lo = std::isfinite(p.lo) ? std::min(p.lo, p.y) : p.y;
    const double hi = std::isfinite(p.hi) ? std::max(p.hi, p.y) : p.y;
    if (first) {
      x0 = x1 = p.x;
      y0 = lo;
      y1 = hi;
      first = false;
    } else {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, lo);
      y1 = std::max(y1, hi);
    }
  }
  if (x1 - x0 <= 0.0) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 <= 0.0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double w = kCanvas - 2 * kMargin;
  auto map_x = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * w; };
  auto map_y = [&](double y) { return kCanvas - kMargin - (y - y0) / (y1 - y0) * w; };

  std::string out = svg_open();
  out += text(kCanvas / 2, 30, title);
  out += "<rect x=\"" + px(kMargin) + "\" y=\"" + px(kMargin) + "\" width=\"" + px(w) +
         "\" height=\"" + px(w) + "\" fill=\"none\" stroke=\"#888\"/>\n";
  out += text(kCanvas / 2, kCanvas - 15, x_label);
  out += "<text x=\"20\" y=\"400.00\" font-family=\"sans-serif\" font-size=\"14\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 20 400)\">" +
         xml_escape(y_label) + "</text>\n";
  out += text(kMargin, kCanvas - kMargin + 20, format_double(x0));
  out += text(kCanvas - kMargin, kCanvas - kMargin + 20, format_double(x1));
  out += text(kMargin - 5, kCanvas - kMargin, format_double(y0), "end");
  out += text(kMargin - 5, kMargin + 5, format_double(y1), "end");

  std::vector<const CurvePoint*> finite;
  for (const auto& p : points) {
    if (std::isfinite(p.x) && std::isfinite(p.y)) finite.push_back(&p);
  }
  if (!finite.empty()) {
    std::string band;
    for (const auto* p : finite) {
      band += px(map_x(p->x)) + "," + px(map_y(std::isfinite(p->hi) ? p->hi : p->y)) + " ";
    }
    for (auto it = finite.rbegin(); it != finite.rend(); ++it) {
      const auto* p = *it;
      band += px(map_x(p->x)) + "," + px(map_y(std::isfinite(p->lo) ? p->lo : p->y)) + " ";
    }
    band.pop_back();
    out += "<polygon class=\"ci-band\" points=\"" + band + "\" fill=\"#9bb7e0\" "
           "fill-opacity=\"0.5\" stroke=\"none\"/>\n";
    std::string line;
    for (const auto* p : finite) line += px(map_x(p->x)) + "," + px(map_y(p->y)) + " ";
    line.pop_back();
    out += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"#1f4e9c\" "
           "stroke-width=\"2\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::filesystem::path ResultsCache::directory(std::uint64_t hash) const {
  return root_ / hash_hex(hash);
}

std::optional<CacheEntry> ResultsCache::lookup(std::uint64_t hash) const {
  const auto dir = directory(hash);
  const auto meta = dir / "cache.json";
  if (!std::filesystem::exists(meta)) return std::nullopt;
  json j;
  try {
    j = json::parse(read_file(meta));
  } catch (const json::exception&) {
    return std::nullopt;
  }
  CacheEntry e;
  e.config_hash = j.value("config_hash", "");
  e.tool_version = j.value("tool_version", "");
  e.created = j.value("created", "");
  if (e.config_hash != hash_hex(hash) || e.tool_version != kToolVersion) return std::nullopt;
  if (j.contains("artifacts") && j["artifacts"].is_array()) {
    for (const auto& a : j["artifacts"]) {
      if (!a.is_string()) return std::nullopt;
      e.artifacts.push_back(a.get<std::string>());
    }
  }
  for (const auto& a : e.artifacts) {
    if (!std::filesystem::exists(dir / a)) return std::nullopt;
  }
  return e;
}

void ResultsCache::store(std::uint64_t hash, const std::vector<std::string>& artifacts) const {
  json j;
  j["config_hash"] = hash_hex(hash);
  j["tool_version"] = kToolVersion;
  j["created"] = utc_timestamp();
  j["artifacts"] = artifacts;
  write_file(directory(hash) / "cache.json", j.dump(2) + "\n");
}

}  // namespace rmtlab
