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


// rmt-lab: command-line front end for the experiments, estimators and plots.
// Run `rmt-lab --help` or `rmt-lab <subcommand> --help` for the grammar.

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "rmtlab/config.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/error.hpp"
#include "rmtlab/experiments.hpp"
#include "rmtlab/format.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/smallball.hpp"
#include "rmtlab/spectra.hpp"
#include "rmtlab/vector_geometry.hpp"

namespace fs = std::filesystem;
using namespace rmtlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

// Thrown for bad flag values that CLI11 cannot see (e.g. a malformed --z).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// "re" or "re,im" to the config file's complex syntax.
std::string complex_flag(const std::string& flag, const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return trim(parts[0]);
  if (parts.size() == 2) return "[" + trim(parts[0]) + ", " + trim(parts[1]) + "]";
  throw UsageError(flag + ": expected re or re,im, got '" + text + "'");
}

// Everything that feeds an ExperimentConfig, applied in order: the config
// file, then dedicated flags, then --set overrides.
struct ConfigFlags {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> flags;
  std::vector<std::string> sets;
  bool dump = false;

  void add(CLI::App* app, ExperimentKind kind) {
    app->add_option("--config", config_path, "Experiment config file (YAML)")
        ->check(CLI::ExistingFile);
    auto flag = [&](const char* name, const char* key, const char* help) {
      app->add_option_function<std::string>(
          name, [this, key](const std::string& v) { flags.emplace_back(key, v); }, help);
    };
    flag("--n", "n", "Matrix dimension");
    flag("--dist", "dist", "Entry law, e.g. complex-gaussian, rademacher, student-t(5)");
    flag("--seed", "seed", "Master seed");
    flag("--trials", "trials", "Number of Monte Carlo trials");
    flag("--delta0", "delta0", "Truncation exponent in (0, 1/2)");
    app->add_flag_function(
        "--truncate", [this](std::int64_t) { flags.emplace_back("truncate", "true"); },
        "Truncate entries at sqrt(n) n^-delta0");
    if (kind == ExperimentKind::kSminTail || kind == ExperimentKind::kHermitianEsdStability) {
      app->add_option_function<std::string>(
          "--z", [this](const std::string& v) { flags.emplace_back("z", complex_flag("--z", v)); },
          "Shift as re or re,im");
    }
    if (kind == ExperimentKind::kSminTail) {
      app->add_option_function<std::string>(
          "--epsilons",
          [this](const std::string& v) { flags.emplace_back("epsilons", "[" + v + "]"); },
          "Comma-separated thresholds on sqrt(n) s_n");
    }
    if (kind == ExperimentKind::kNormBound) flag("--k", "k", "Threshold on lambda_max(XX*/n)");
    if (kind == ExperimentKind::kPotentialConvergence) {
      app->add_option_function<std::string>(
          "--grid",
          [this](const std::string& v) {
            std::string list = "[";
            for (const auto& p : split(v, ';')) {
              list += (list.size() > 1 ? ", " : "") + complex_flag("--grid", p);
            }
            flags.emplace_back("z_grid", list + "]");
          },
          "Evaluation points 're,im;re,im;...'");
      flag("--tolerance", "tolerance", "Pass level for the max deviation");
    }
    app->add_option("--set", sets, "Config override key=value (repeatable)");
    app->add_flag("--dump-config", dump, "Print the canonical config and exit");
  }

  ExperimentConfig build(std::optional<ExperimentKind> kind) const {
    ExperimentConfig c;
    if (!config_path.empty()) c = load_config(config_path);
    if (kind) c.kind = *kind;
    for (const auto& [key, value] : flags) apply_override(c, key, value);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw UsageError("--set: expected key=value, got '" + s + "'");
      apply_override(c, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
    c.validate();
    return c;
  }
};

struct OutputFlags {
  std::string out = "results";
  std::size_t workers = 0;
  bool force = false;
  bool verbose = false;

  void add(CLI::App* app, bool cache) {
    app->add_option("--out", out, "Output directory")->capture_default_str();
    app->add_option("--workers", workers, "Worker threads (0 = RMT_LAB_THREADS or all cores)");
    if (cache) app->add_flag("--force", force, "Ignore cached results");
    app->add_flag("-v,--verbose", verbose, "Print per-statistic details");
  }
};

// Six significant digits for the console; files keep full precision.
std::string show(double x) {
  std::ostringstream ss;
  ss.precision(6);
  ss << x;
  return ss.str();
}

void print_summary(const Summary& s, bool verbose) {
  std::cout << "kind " << to_string(s.kind) << ", " << s.trials << " trials";
  if (s.singular_trials) std::cout << " (" << s.singular_trials << " singular)";
  std::cout << ", config " << hash_hex(s.config_hash) << "\n";
  for (const auto& st : s.stats) {
    if (!verbose && st.name.rfind("dev(", 0) == 0) continue;
    std::cout << "  " << st.name << ": median " << show(st.median) << ", mean "
              << show(st.mean) << " [" << show(st.min) << ", "
              << show(st.max) << "]\n";
  }
  for (const auto& p : s.proportions) {
    std::cout << "  P(" << p.label << ") = " << show(p.p_hat) << " ("
              << p.successes << "/" << p.trials << "), 95% CI [" << show(p.ci.lo)
              << ", " << show(p.ci.hi) << "]\n";
  }
  for (const auto& [name, value] : s.scalars) {
    std::cout << "  " << name << " = " << show(value) << "\n";
  }
  if (verbose) std::cout << "  wall time " << show(s.wall_seconds) << " s\n";
}

// Extra per-kind artifacts beyond the trial and proportion tables.
void kind_artifacts(const ExperimentConfig& c, const Summary& s, std::size_t workers,
                    std::map<std::string, std::string>& files) {
  switch (c.kind) {
    case ExperimentKind::kSminTail: {
      files["smin_tail.csv"] = smin_tail_csv(s, c);
      std::vector<CurvePoint> pts;
      for (const auto& p : s.proportions) {
        if (p.label.rfind("eps=", 0) == 0) pts.push_back({p.threshold, p.p_hat, p.ci.lo, p.ci.hi});
      }
      files["smin_tail.svg"] = curve_svg(pts, "P(sqrt(n) s_n <= eps)", "eps", "probability");
      break;
    }
    case ExperimentKind::kPotentialConvergence: {
      const auto x = sample_matrix(c.ensemble, 0);
      files["potential_grid.csv"] =
          potential_grid_csv(potential_grid(x, c.z_grid, c.exclude_inner, c.exclude_outer, workers));
      std::vector<Complex> axis;
      for (int i = 0; i <= 60; ++i) axis.push_back(0.05 * i);
      const auto line = potential_grid(x, axis, c.exclude_inner, c.exclude_outer, workers);
      std::vector<CurvePoint> pts;
      for (const auto& p : line.points) {
        if (!p.value) continue;
        const double u = circular_potential(p.z);
        pts.push_back({p.z.real(), *p.value, std::min(u, *p.value), std::max(u, *p.value)});
      }
      files["potential.svg"] =
          curve_svg(pts, "empirical potential on the real axis (band: gap to limit)", "Re z",
                    "U(z)");
      break;
    }
    case ExperimentKind::kCircularLaw: {
      const auto esd = esd2d(sample_matrix(c.ensemble, 0));
      files["eigenvalues.csv"] = eigenvalues_csv(esd);
      files["esd.svg"] = scatter_svg(esd, true);
      break;
    }
    case ExperimentKind::kNormBound: {
      std::vector<double> norms;
      for (const auto& r : s.records) norms.push_back(r.values[0]);
      std::sort(norms.begin(), norms.end());
      std::vector<CurvePoint> pts;
      for (std::size_t i = 0; i < norms.size(); ++i) {
        const double q = (i + 1.0) / norms.size();
        pts.push_back({norms[i], q, q, q});
      }
      files["norm.svg"] = curve_svg(pts, "empirical CDF of the spectral norm", "||X||/sqrt(n)",
                                    "fraction of trials");
      break;
    }
    default:
      break;
  }
}

int run_experiment_command(const ConfigFlags& cf, const OutputFlags& of,
                           std::optional<ExperimentKind> kind) {
  const ExperimentConfig c = cf.build(kind);
  if (cf.dump) {
    std::cout << canonical_config(c);
    return kExitOk;
  }
  const std::uint64_t hash = config_hash(c);
  const ResultsCache cache(of.out);
  const fs::path dir = cache.directory(hash);
  if (!of.force) {
    if (const auto hit = cache.lookup(hash)) {
      std::cout << "cache hit: " << dir.string() << " (created " << hit->created << ")\n";
      if (fs::exists(dir / "summary.json")) std::cout << read_file(dir / "summary.json");
      return kExitOk;
    }
  }
  const Summary s = run_experiment(c, of.workers);
  std::map<std::string, std::string> files{
      {"config.yaml", canonical_config(c)},
      {"trials.csv", trials_csv(s)},
      {"proportions.csv", proportions_csv(s)},
      {"summary.json", summary_json(s)},
  };
  kind_artifacts(c, s, of.workers, files);
  std::vector<std::string> names;
  for (const auto& [name, bytes] : files) {
    write_file(dir / name, bytes);
    names.push_back(name);
  }
  cache.store(hash, names);
  print_summary(s, of.verbose);
  std::cout << "wrote " << dir.string() << "\n";
  return kExitOk;
}

int sample_command(const ConfigFlags& cf, std::uint64_t trial, const std::string& output) {
  const auto c = cf.build(std::nullopt);
  if (cf.dump) {
    std::cout << canonical_config(c);
    return kExitOk;
  }
  const auto x = sample_matrix(c.ensemble, trial);
  std::string csv = "row,col,re,im\n";
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      csv += std::to_string(i) + "," + std::to_string(j) + "," + format_double(x(i, j).real()) +
             "," + format_double(x(i, j).imag()) + "\n";
    }
  }
  if (output.empty() || output == "-") {
    std::cout << csv;
  } else {
    write_file(output, csv);
  }
  return kExitOk;
}

int esd_command(const ConfigFlags& cf, const OutputFlags& of, std::uint64_t trial, bool circle) {
  const auto c = cf.build(ExperimentKind::kCircularLaw);
  if (cf.dump) {
    std::cout << canonical_config(c);
    return kExitOk;
  }
  const auto esd = esd2d(sample_matrix(c.ensemble, trial));
  const auto ra = radial_angular_stats(esd);
  std::vector<double> r2;
  for (double r : ra.radii) r2.push_back(r * r);
  write_file(fs::path(of.out) / "eigenvalues.csv", eigenvalues_csv(esd));
  write_file(fs::path(of.out) / "esd.svg", scatter_svg(esd, circle));
  std::cout << "n = " << esd.n() << ", KS(radius^2, U[0,1]) = "
            << format_double(ks_uniform(r2, 0.0, 1.0))
            << ", KS(angle, U(-pi,pi]) = " << format_double(ks_uniform(ra.angles, -M_PI, M_PI))
            << "\nwrote " << of.out << "/eigenvalues.csv, " << of.out << "/esd.svg\n";
  return kExitOk;
}

std::string optional_text(const std::optional<double>& d) {
  return d ? format_double(*d) : std::string("inf");
}

struct LcdFlags {
  std::string vector;
  double alpha = 0.1;
  std::size_t tau = 0;
  double t_max = 1e4;
  double grid_step = 0.0;
  std::string method = "exact";
};

int lcd_command(const LcdFlags& f) {
  if (f.vector.empty()) throw UsageError("--vector is required");
  const auto v = read_vector_csv(f.vector);
  LcdParams p;
  p.alpha = f.alpha;
  p.tau = f.tau;
  p.t_max = f.t_max;
  p.grid_step = f.grid_step;
  p.method = f.method == "grid" ? LcdMethod::kGridBisection : LcdMethod::kExactSweep;
  p.validate();
  const bool real = std::all_of(v.begin(), v.end(), [](Complex z) { return z.imag() == 0.0; });
  std::vector<double> re, im, mod;
  for (auto z : v) {
    re.push_back(z.real());
    im.push_back(z.imag());
    mod.push_back(std::abs(z));
  }
  if (real) {
    std::cout << "D = " << optional_text(lcd(re, p)) << "\n";
  } else {
    std::cout << "D(re) = " << optional_text(lcd(re, p)) << "\nD(im) = "
              << optional_text(lcd(im, p)) << "\nD(|.|) = " << optional_text(lcd(mod, p))
              << "\n";
  }
  return kExitOk;
}

struct SmallBallFlags {
  std::string vector;
  std::string shift;
  std::size_t n = 100;
  std::string dist = "rademacher";
  std::vector<double> epsilons{0.1, 0.25, 0.5, 1.0};
  std::size_t trials = 20000;
  std::uint64_t seed = 1;
  double alpha = 0.1;
  double beta = 0.25;
  double k1 = 0.5;
  double k2 = 2.0;
  double C = 1.0;
  double c = 0.5;
};

int smallball_command(const SmallBallFlags& f, const OutputFlags& of) {
  std::vector<Complex> b;
  if (f.vector.empty()) {
    b.assign(f.n, 1.0);
  } else {
    b = read_vector_csv(f.vector);
  }
  const UnitVector unit(b);
  const auto dist = EntryDistribution::parse(f.dist);
  std::vector<Complex> shift;
  if (!f.shift.empty()) {
    shift = read_vector_csv(f.shift);
    if (shift.size() != unit.size()) {
      throw UsageError("--shift: expected " + std::to_string(unit.size()) + " coordinates");
    }
  }
  std::vector<double> eps = f.epsilons;
  std::sort(eps.begin(), eps.end());
  if (eps.empty() || eps.front() <= 0.0) throw UsageError("--epsilons: need positive values");
  if (f.trials < 1000) throw UsageError("--trials: at least 1000 required");

  const std::size_t n = unit.size();
  LcdParams lp;
  lp.alpha = f.alpha;
  const auto report = lcd_regimes(spread_part(unit, f.k1, f.k2), lp);
  const auto d = regime_lcd(report, lcd_regime(dist.moments()));
  std::vector<double> real_b;
  const bool real = std::all_of(unit.coords().begin(), unit.coords().end(),
                                [](Complex z) { return z.imag() == 0.0; });
  for (auto z : unit.coords()) real_b.push_back(z.real());
  const bool esseen = real && (dist.kind() == DistKind::kRademacher ||
                               dist.kind() == DistKind::kRealGaussian);

  const auto samples = smallball_samples(unit.coords(), dist, shift, f.trials, f.seed, of.workers);
  const auto est = estimate_smallball(samples, eps);
  std::vector<SmallBallRow> rows;
  std::vector<CurvePoint> pts;
  for (const auto& e : est) {
    SmallBallRow r{e.epsilon,
                   e.p_hat,
                   e.half_width,
                   berry_esseen_bound(n, e.epsilon, f.k1, f.k2, f.C),
                   std::nullopt,
                   lcd_bound(e.epsilon, n, d, f.alpha, f.beta, f.C, f.c)};
    if (esseen) r.esseen_bound = esseen_integral_bound(real_b, e.epsilon, dist, f.C);
    rows.push_back(r);
    pts.push_back({e.epsilon, e.p_hat, std::max(0.0, e.p_hat - e.half_width),
                   std::min(1.0, e.p_hat + e.half_width)});
  }
  write_file(fs::path(of.out) / "smallball.csv", smallball_csv(rows));
  write_file(fs::path(of.out) / "smallball.svg",
             curve_svg(pts, "sup_v P(|S - v| <= eps)", "eps", "probability"));
  std::cout << "n = " << n << ", dist " << dist.name() << ", LCD(best) = " << optional_text(d)
            << "\n";
  for (const auto& r : rows) {
    std::cout << "  eps " << show(r.epsilon) << ": p = " << show(r.p_hat) << " +- "
              << show(r.half_width) << "\n";
  }
  std::cout << "wrote " << of.out << "/smallball.csv\n";
  return kExitOk;
}

int verify_command(const acceptance::Options& options) {
  int failed = 0;
  const auto results = acceptance::run(options, [&](const auto& r) {
    std::cout << acceptance::format_result(r) << std::endl;
    failed += !r.pass;
  });
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed ? kExitVerifyFailed : kExitOk;
}

// Numeric columns of a headed CSV; non-numeric cells become NaN.
std::map<std::string, std::vector<double>> read_columns(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, path.string() + ": empty file");
  const auto header = split(trim(line), ',');
  std::map<std::string, std::vector<double>> cols;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    for (std::size_t i = 0; i < header.size(); ++i) {
      double v = std::nan("");
      if (i < cells.size()) {
        const auto cell = trim(cells[i]);
        std::from_chars(cell.data(), cell.data() + cell.size(), v);
      }
      cols[trim(header[i])].push_back(v);
    }
  }
  return cols;
}

struct PlotFlags {
  std::string kind = "scatter";
  std::string input;
  std::string output;
  bool no_circle = false;
  double extent = 1.5;
  std::string x = "epsilon", y = "p_hat", lo = "ci_lo", hi = "ci_hi";
  std::string title;
};

int plot_command(const PlotFlags& f) {
  if (f.input.empty()) throw UsageError("--input is required");
  const std::string output = f.output.empty() ? fs::path(f.input).replace_extension(".svg").string()
                                              : f.output;
  if (f.kind == "scatter") {
    write_file(output, scatter_svg(Esd2D{read_vector_csv(f.input)}, !f.no_circle, f.extent));
  } else {
    const auto cols = read_columns(f.input);
    auto column = [&](const std::string& name, bool required) -> const std::vector<double>* {
      const auto it = cols.find(name);
      if (it == cols.end()) {
        if (required) throw UsageError("no column '" + name + "' in " + f.input);
        return nullptr;
      }
      return &it->second;
    };
    const auto* xs = column(f.x, true);
    const auto* ys = column(f.y, true);
    const auto* los = column(f.lo, false);
    const auto* his = column(f.hi, false);
    std::vector<CurvePoint> pts;
    for (std::size_t i = 0; i < xs->size(); ++i) {
      const double y = (*ys)[i];
      pts.push_back({(*xs)[i], y, los ? (*los)[i] : y, his ? (*his)[i] : y});
    }
    write_file(output, curve_svg(pts, f.title.empty() ? f.input : f.title, f.x, f.y));
  }
  std::cout << "wrote " << output << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmt-lab: random matrix experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  struct ExperimentCommand {
    CLI::App* app;
    ExperimentKind kind;
    ConfigFlags cf;
    OutputFlags of;
  };
  std::vector<std::unique_ptr<ExperimentCommand>> experiments;
  auto add_experiment = [&](const char* name, ExperimentKind kind, const char* help) {
    auto cmd = std::make_unique<ExperimentCommand>();
    cmd->app = app.add_subcommand(name, help);
    cmd->kind = kind;
    cmd->cf.add(cmd->app, kind);
    cmd->of.add(cmd->app, true);
    experiments.push_back(std::move(cmd));
  };
  add_experiment("potential", ExperimentKind::kPotentialConvergence,
                 "Empirical logarithmic potential vs the circular-law limit");
  add_experiment("smin-tail", ExperimentKind::kSminTail,
                 "Tail of sqrt(n) s_n(X - z sqrt(n) I)");
  add_experiment("norm-bound", ExperimentKind::kNormBound, "Spectral norm of X / sqrt(n)");
  add_experiment("singularity", ExperimentKind::kSingularity,
                 "Singularity of sign matrices (exact for n <= 4)");
  add_experiment("circular-law", ExperimentKind::kCircularLaw,
                 "KS distance of the eigenvalue cloud to the uniform disk");
  add_experiment("hermitian-esd", ExperimentKind::kHermitianEsdStability,
                 "Stability of the spectrum of (X/sqrt(n) - z)(X/sqrt(n) - z)*");

  ConfigFlags run_cf;
  OutputFlags run_of;
  auto* run = app.add_subcommand("run", "Run the experiment described by --config");
  run_cf.add(run, ExperimentKind::kCircularLaw);
  run_of.add(run, true);

  ConfigFlags sample_cf;
  std::uint64_t sample_trial = 0;
  std::string sample_output;
  auto* sample = app.add_subcommand("sample", "Print one sampled matrix as row,col,re,im");
  sample_cf.add(sample, ExperimentKind::kCircularLaw);
  sample->add_option("--trial", sample_trial, "Trial index");
  sample->add_option("-o,--output", sample_output, "Output file (default stdout)");

  ConfigFlags esd_cf;
  OutputFlags esd_of;
  std::uint64_t esd_trial = 0;
  bool esd_no_circle = false;
  auto* esd = app.add_subcommand("esd", "Eigenvalues of X / sqrt(n) as CSV and SVG");
  esd_cf.add(esd, ExperimentKind::kCircularLaw);
  esd_of.add(esd, false);
  esd->add_option("--trial", esd_trial, "Trial index");
  esd->add_flag("--no-circle", esd_no_circle, "Omit the unit circle");

  LcdFlags lcd_f;
  auto* lcd_cmd = app.add_subcommand("lcd", "Essential least common denominator of a vector");
  lcd_cmd->add_option("--vector", lcd_f.vector, "CSV file, one re or re,im per line (required)")
      ->check(CLI::ExistingFile);
  lcd_cmd->add_option("--alpha", lcd_f.alpha, "Neighbourhood radius in (0, 1)");
  lcd_cmd->add_option("--tau", lcd_f.tau, "Coordinates allowed to miss");
  lcd_cmd->add_option("--t-max", lcd_f.t_max, "Search limit");
  lcd_cmd->add_option("--grid-step", lcd_f.grid_step, "Grid step for --method grid");
  lcd_cmd->add_option("--method", lcd_f.method, "exact or grid")
      ->check(CLI::IsMember({"exact", "grid"}));

  SmallBallFlags sb_f;
  OutputFlags sb_of;
  auto* sb = app.add_subcommand("smallball", "Small-ball probability of sum_k b_k eta_k");
  sb->add_option("--vector", sb_f.vector, "Coefficients b (CSV); default all ones of length --n")
      ->check(CLI::ExistingFile);
  sb->add_option("--shift", sb_f.shift, "Entry means a (CSV)")->check(CLI::ExistingFile);
  sb->add_option("--n", sb_f.n, "Length of the default all-ones vector");
  sb->add_option("--dist", sb_f.dist, "Law of eta_k");
  sb->add_option("--epsilons", sb_f.epsilons, "Radii")->delimiter(',');
  sb->add_option("--trials", sb_f.trials, "Samples (>= 1000)");
  sb->add_option("--seed", sb_f.seed, "Master seed");
  sb->add_option("--alpha", sb_f.alpha, "LCD alpha");
  sb->add_option("--beta", sb_f.beta, "LCD bound beta");
  sb->add_option("--k1", sb_f.k1, "Spread-part lower level K1");
  sb->add_option("--k2", sb_f.k2, "Spread-part upper level K2");
  sb->add_option("--C", sb_f.C, "Bound constant C");
  sb->add_option("--c", sb_f.c, "Bound constant c");
  sb_of.add(sb, false);

  acceptance::Options verify_opts;
  std::string verify_out = "results/verify";
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--seed", verify_opts.seed, "Master seed");
  verify->add_option("--workers", verify_opts.workers, "Worker threads");
  verify->add_option("--out", verify_out, "Directory for the CSV outputs")
      ->capture_default_str();
  verify->add_option("--only", verify_opts.only, "Criterion ids")->delimiter(',');

  PlotFlags plot_f;
  auto* plot = app.add_subcommand("plot", "Render a CSV as SVG");
  plot->add_option("--kind", plot_f.kind, "scatter (re,im rows) or curve")
      ->check(CLI::IsMember({"scatter", "curve"}));
  plot->add_option("--input", plot_f.input, "Input CSV (required)")->check(CLI::ExistingFile);
  plot->add_option("-o,--output", plot_f.output, "Output SVG (default: input with .svg)");
  plot->add_flag("--no-circle", plot_f.no_circle, "Scatter: omit the unit circle");
  plot->add_option("--extent", plot_f.extent, "Scatter: half-width of the window");
  plot->add_option("--x", plot_f.x, "Curve: x column");
  plot->add_option("--y", plot_f.y, "Curve: y column");
  plot->add_option("--lo", plot_f.lo, "Curve: band lower column");
  plot->add_option("--hi", plot_f.hi, "Curve: band upper column");
  plot->add_option("--title", plot_f.title, "Curve: title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    std::cerr << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    for (const auto& cmd : experiments) {
      if (cmd->app->parsed()) return run_experiment_command(cmd->cf, cmd->of, cmd->kind);
    }
    if (run->parsed()) {
      if (run_cf.config_path.empty()) throw UsageError("--config is required");
      return run_experiment_command(run_cf, run_of, std::nullopt);
    }
    if (sample->parsed()) return sample_command(sample_cf, sample_trial, sample_output);
    if (esd->parsed()) return esd_command(esd_cf, esd_of, esd_trial, !esd_no_circle);
    if (lcd_cmd->parsed()) return lcd_command(lcd_f);
    if (sb->parsed()) return smallball_command(sb_f, sb_of);
    if (verify->parsed()) {
      if (!verify_out.empty()) verify_opts.out_dir = verify_out;
      return verify_command(verify_opts);
    }
    if (plot->parsed()) return plot_command(plot_f);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kParse:
      case ErrorCode::kBadSpec:
      case ErrorCode::kBadParams:
      case ErrorCode::kDomainError:
      case ErrorCode::kShapeMismatch:
        return kExitUsage;
      default:
        return kExitRuntime;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
