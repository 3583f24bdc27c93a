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


#include "acceptance.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rmtlab/config.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/error.hpp"
#include "rmtlab/experiments.hpp"
#include "rmtlab/format.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/linalg.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/smallball.hpp"
#include "rmtlab/spectra.hpp"
#include "rmtlab/vector_geometry.hpp"
#include "test_util.hpp"

namespace rmtlab::acceptance {

namespace {

using Artifacts = std::map<std::string, std::string>;
using Producer = std::function<Artifacts(std::size_t workers)>;

constexpr double kPi = std::numbers::pi;

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED:" << what;
    }
  }
};

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(6);
  ss << x;
  return ss.str();
}

class Suite {
 public:
  explicit Suite(const Options& options) : options_(options) {
    workers_ = options.workers ? options.workers : default_worker_count();
  }

  std::vector<CriterionResult> run(const std::function<void(const CriterionResult&)>& on_result) {
    struct Entry {
      int id;
      const char* name;
      double budget;
      void (Suite::*fn)(Check&);
    };
    const Entry entries[] = {
        {1, "analytic-identity", 1, &Suite::c01_analytic_identity},
        {2, "ring-integral", 1, &Suite::c02_ring_integral},
        {3, "kernel-correctness", 30, &Suite::c03_kernels},
        {4, "potential-routes", 10, &Suite::c04_potential_routes},
        {5, "circular-law", 600, &Suite::c05_circular_law},
        {6, "potential-convergence", 600, &Suite::c06_potential_convergence},
        {7, "edelman-tail", 300, &Suite::c07_edelman},
        {8, "tail-law-shape", 600, &Suite::c08_tail_shape},
        {9, "spectral-norm", 300, &Suite::c09_spectral_norm},
        {10, "small-ball-decay", 300, &Suite::c10_smallball_decay},
        {11, "small-ball-invariance", 120, &Suite::c11_smallball_invariance},
        {12, "lcd-oracles", 60, &Suite::c12_lcd},
        {13, "evenly-spread", 60, &Suite::c13_evenly_spread},
        {14, "compressibility-oracle", 60, &Suite::c14_compressibility},
        {15, "sign-singularity", 300, &Suite::c15_singularity},
        {16, "paley-zygmund", 1, &Suite::c16_paley_zygmund},
        {17, "reproducibility", 0, &Suite::c17_reproducibility},
    };
    std::vector<CriterionResult> results;
    for (const auto& e : entries) {
      if (!options_.only.empty() &&
          std::find(options_.only.begin(), options_.only.end(), e.id) == options_.only.end()) {
        continue;
      }
      Check check;
      const auto start = std::chrono::steady_clock::now();
      try {
        (this->*e.fn)(check);
      } catch (const std::exception& ex) {
        check.require(false, std::string(" exception: ") + ex.what());
      }
      CriterionResult r;
      r.id = e.id;
      r.name = e.name;
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      r.budget_seconds = e.budget;
      if (e.budget > 0 && r.seconds > e.budget) {
        check.require(false, " over runtime budget of " + fmt(e.budget) + " s");
      }
      r.pass = check.pass;
      r.detail = check.detail.str();
      if (!r.detail.empty() && r.detail.front() == ' ') r.detail.erase(0, 1);
      if (on_result) on_result(r);
      results.push_back(std::move(r));
    }
    return results;
  }

 private:
  std::uint64_t seed(int criterion, int sub = 0) const {
    return splitmix64(options_.seed ^ (static_cast<std::uint64_t>(criterion) << 32) ^
                      static_cast<std::uint64_t>(sub));
  }

  // Stores the main-pass CSVs, writes them when an output directory is set
  // and keeps `replay` for the reproducibility check.
  void record(const std::string& tag, const Artifacts& artifacts, Producer replay) {
    for (const auto& [name, bytes] : artifacts) {
      if (options_.out_dir) write_file(*options_.out_dir / name, bytes);
      artifacts_[name] = bytes;
    }
    producers_.emplace_back(tag, std::move(replay));
  }

  ExperimentConfig config(ExperimentKind kind, std::size_t n, EntryDistribution dist,
                          std::size_t trials, std::uint64_t master_seed) const {
    ExperimentConfig c;
    c.kind = kind;
    c.ensemble.n = n;
    c.ensemble.dist = dist;
    c.ensemble.master_seed = master_seed;
    c.trials = trials;
    return c;
  }

  static Artifacts experiment_csvs(const std::string& tag, const ExperimentConfig& c,
                                   const Summary& s) {
    Artifacts a;
    a[tag + "_trials.csv"] = trials_csv(s);
    a[tag + "_proportions.csv"] = proportions_csv(s);
    if (c.kind == ExperimentKind::kSminTail) a[tag + "_smin_tail.csv"] = smin_tail_csv(s, c);
    return a;
  }

  Summary run_tagged(const std::string& tag, const ExperimentConfig& c) {
    Summary s = run_experiment(c, workers_);
    record(tag, experiment_csvs(tag, c, s), [tag, c](std::size_t workers) {
      return experiment_csvs(tag, c, run_experiment(c, workers));
    });
    return s;
  }

  // 1. -1/2 log_moment_v(z) and the closed-form circular potential agree.
  void c01_analytic_identity(Check& check) {
    std::mt19937_64 gen(seed(1));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double r = 3.0 * std::sqrt(u(gen));
      const Complex z = std::polar(r, 2 * kPi * u(gen));
      worst = std::max(worst, std::abs(circular_potential(z) + 0.5 * log_moment_v(z)));
    }
    check.detail << "max |U + v/2| = " << fmt(worst) << " over 10000 points";
    check.require(worst <= 1e-12, " exceeds 1e-12");
  }

  // 2. Adaptive Gauss-Kronrod on the even integrand over [0, pi], doubled.
  void c02_ring_integral(Check& check) {
    using boost::math::quadrature::gauss_kronrod;
    double worst = 0.0;
    for (double zr : {0.0, 0.5, 0.99, 1.01, 3.0}) {
      auto f = [zr](double t) { return std::log(std::abs(Complex(zr, 0.0) - std::polar(1.0, t))); };
      const double q = 2 * gauss_kronrod<double, 61>::integrate(f, 0.0, kPi, 15, 1e-13);
      worst = std::max(worst, std::abs(q - ring_integral(zr, 1.0)));
    }
    check.detail << "max quadrature error = " << fmt(worst);
    check.require(worst <= 1e-8, " exceeds 1e-8");
  }

  // 3. SVD reconstruction, Jacobi vs Golub-Kahan, trace and |det| of the
  // eigenvalues against the matrix itself and its SVD.
  void c03_kernels(Check& check) {
    std::mt19937_64 gen(seed(3));
    std::uniform_int_distribution<std::size_t> dim(1, 64);
    double recon = 0.0, values = 0.0, trace = 0.0, logdet = 0.0;
    std::size_t singular = 0;
    for (int i = 0; i < 500; ++i) {
      const std::size_t n = dim(gen);
      const ComplexMatrix a = i % 2 ? testing::random_gaussian(n, gen())
                                    : testing::random_complex_sign(n, gen());
      const auto full = svd(a, true, SvdMethod::kJacobi);
      const double s1 = full.singular_values.front();
      const auto& u = *full.left_vectors;
      const auto& v = *full.right_vectors;
      double err = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          Complex acc{};
          for (std::size_t k = 0; k < n; ++k) {
            acc += u(r, k) * full.singular_values[k] * std::conj(v(c, k));
          }
          err = std::max(err, std::abs(acc - a(r, c)));
        }
      }
      recon = std::max(recon, err / s1);
      const auto gk = svd(a, false, SvdMethod::kGolubKahan).singular_values;
      for (std::size_t k = 0; k < n; ++k) {
        values = std::max(values, std::abs(gk[k] - full.singular_values[k]) / s1);
      }
      const auto eig = eigenvalues(a).eigenvalues;
      Complex sum{}, tr{};
      double log_mod = 0.0, log_sv = 0.0, min_mod = s1;
      for (std::size_t k = 0; k < n; ++k) {
        sum += eig[k];
        tr += a(k, k);
        log_mod += std::log(std::abs(eig[k]));
        log_sv += std::log(full.singular_values[k]);
        min_mod = std::min(min_mod, std::abs(eig[k]));
      }
      trace = std::max(trace, std::abs(sum - tr));
      if (full.singular_values.back() > 1e-8 * s1) {
        logdet = std::max(logdet, std::abs(log_mod - log_sv));
      } else {
        // Exactly singular (small sign matrices): some eigenvalue must vanish.
        ++singular;
        if (min_mod > 1e-6 * s1) check.require(false, " singular matrix without zero eigenvalue");
      }
    }
    check.detail << "reconstruction/|A| = " << fmt(recon) << ", jacobi vs golub-kahan = "
                 << fmt(values) << ", trace = " << fmt(trace) << ", log|det| = " << fmt(logdet) << " (" << singular
                 << " singular matrices)";
    check.require(recon <= 1e-10, " reconstruction");
    check.require(values <= 1e-10, " singular values disagree");
    check.require(trace <= 1e-8, " trace");
    check.require(logdet <= 1e-8, " |det|");
  }

  // 4. Potential from singular values vs from eigenvalues.
  void c04_potential_routes(Check& check) {
    std::mt19937_64 gen(seed(4));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto x = testing::random_gaussian(32, gen());
      const auto a = empirical_potential(x, 3.0);
      const auto b = logarithmic_potential(esd2d(x), 3.0);
      if (!a || !b) {
        check.require(false, " singular potential at z = 3");
        return;
      }
      worst = std::max(worst, std::abs(*a - *b));
    }
    check.detail << "max route difference = " << fmt(worst);
    check.require(worst <= 1e-8, " exceeds 1e-8");
  }

  void c05_circular_law(Check& check) {
    for (auto [dist, label] : {std::pair{EntryDistribution::complex_gaussian(), "gauss"},
                               std::pair{EntryDistribution::complex_sign(), "sign"}}) {
      const auto& big = run_tagged(std::string("circular_") + label + "_1024",
                                   config(ExperimentKind::kCircularLaw, 1024, dist, 8, seed(5, 1)));
      const auto& small = run_tagged(std::string("circular_") + label + "_64",
                                     config(ExperimentKind::kCircularLaw, 64, dist, 8, seed(5, 2)));
      const double r = big.stat("radial_ks").median, a = big.stat("angular_ks").median;
      const double r64 = small.stat("radial_ks").median, a64 = small.stat("angular_ks").median;
      if (!check.detail.str().empty()) check.detail << "; ";
      check.detail << dist.name() << ": median KS radial " << fmt(r) << " angular " << fmt(a)
                   << " (n=64: " << fmt(r64) << ", " << fmt(a64) << ")";
      check.require(r <= 0.06 && a <= 0.06, " " + dist.name() + " median KS above 0.06");
      check.require(r < r64 && a < a64, " " + dist.name() + " KS not decreasing in n");
    }
  }

  void c06_potential_convergence(Check& check) {
    const auto& s = run_tagged(
        "potential_1024", config(ExperimentKind::kPotentialConvergence, 1024,
                                 EntryDistribution::complex_gaussian(), 8, seed(6)));
    const auto& p = s.proportion("within_tolerance");
    check.detail << p.successes << "/" << p.trials << " trials with max deviation <= 0.05"
                 << ", worst = " << fmt(s.stat("max_deviation").max)
                 << ", singular trials = " << s.singular_trials;
    check.require(p.successes >= 7 && p.trials == 8, " fewer than 7 of 8");
  }

  void c07_edelman(Check& check) {
    auto c = config(ExperimentKind::kSminTail, 100, EntryDistribution::real_gaussian(), 5000,
                    seed(7));
    c.epsilons = {0.05, 0.1, 0.2, 0.5};
    const auto s = run_tagged("edelman_n100", c);
    const auto& p = s.proportion("eps=0.1");
    check.detail << "P(s_n <= 0.1/sqrt(n)) = " << fmt(p.p_hat) << " CI [" << fmt(p.ci.lo)
                 << ", " << fmt(p.ci.hi) << "], reference " << fmt(1 - std::exp(-0.005 - 0.1));
    check.require(p.ci.lo >= 0.07 && p.ci.hi <= 0.13, " interval leaves [0.07, 0.13]");
  }

  void c08_tail_shape(Check& check) {
    auto c = config(ExperimentKind::kSminTail, 128, EntryDistribution::complex_sign(), 5000,
                    seed(8));
    c.z = Complex(1, 1);
    c.epsilons = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
    const auto& s = run_tagged("tail_shape_n128", c);
    bool monotone = true;
    double fitted = 0.0;
    for (std::size_t i = 0; i < s.proportions.size(); ++i) {
      const auto& p = s.proportions[i];
      if (i > 0 && p.p_hat < s.proportions[i - 1].p_hat) monotone = false;
      fitted = std::max(fitted, p.p_hat / p.threshold);
    }
    check.detail << "minimal C = " << fmt(fitted) << ", slope = " << fmt(s.scalar("slope"))
                 << (monotone ? ", monotone" : ", NOT monotone");
    check.require(monotone, " curve not monotone");
    check.require(fitted <= 5.0, " C above 5");
    check.require(std::abs(fitted - s.scalar("min_c")) <= 1e-15, " reported C disagrees");
  }

  void c09_spectral_norm(Check& check) {
    const auto& s = run_tagged("norm_2048", config(ExperimentKind::kNormBound, 2048,
                                                   EntryDistribution::complex_sign(), 8, seed(9)));
    const auto& st = s.stat("spectral_norm");
    const auto& p = s.proportion("exceed_k");
    check.detail << "spectral norm in [" << fmt(st.min) << ", " << fmt(st.max)
                 << "], exceedances of 4.41: " << p.successes << "/" << p.trials;
    check.require(st.count == 8 && st.min >= 1.9 && st.max <= 2.1, " norm outside [1.9, 2.1]");
    check.require(p.successes == 0, " lambda_max exceeded 4.41");
  }

  void c10_smallball_decay(Check& check) {
    constexpr std::size_t kTrials = 20000;
    constexpr int kReplicates = 10;
    const auto dist = EntryDistribution::complex_sign();
    const std::vector<double> eps{1.0};
    auto run_n = [=, this](std::size_t n, std::size_t workers) {
      std::vector<Complex> b(n, 1.0);
      std::vector<double> unit(n, 1.0);
      const auto ones = UnitVector(b);
      const auto d = lcd_regimes(spread_part(ones, 1.0, 1.0), LcdParams{}).best;
      std::vector<SmallBallRow> rows;
      for (int r = 0; r < kReplicates; ++r) {
        const auto samples = smallball_samples(b, dist, {}, kTrials, seed(10, r), workers);
        const auto est = estimate_smallball(samples, eps).front();
        rows.push_back({est.epsilon, est.p_hat, est.half_width,
                        berry_esseen_bound(n, 1.0, 1.0, 1.0, 1.0), std::nullopt,
                        lcd_bound(1.0, n, d, 0.1, 0.25, 1.0, 0.5)});
      }
      return rows;
    };
    auto producer = [run_n](std::size_t workers) {
      return Artifacts{{"smallball_n100.csv", smallball_csv(run_n(100, workers))},
                       {"smallball_n400.csv", smallball_csv(run_n(400, workers))}};
    };
    const auto r100 = run_n(100, workers_);
    const auto r400 = run_n(400, workers_);
    record("smallball",
           {{"smallball_n100.csv", smallball_csv(r100)}, {"smallball_n400.csv", smallball_csv(r400)}},
           producer);
    double m100 = 0.0, m400 = 0.0, lo = 1e9, hi = 0.0;
    for (int r = 0; r < kReplicates; ++r) {
      m100 += r100[r].p_hat / kReplicates;
      m400 += r400[r].p_hat / kReplicates;
      const double q = r400[r].p_hat / r100[r].p_hat;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    const double ratio = m400 / m100;
    check.detail << "P(n=100) = " << fmt(m100) << ", P(n=400) = " << fmt(m400)
                 << ", ratio = " << fmt(ratio) << " (replicates " << fmt(lo) << ".." << fmt(hi)
                 << ")";
    check.require(ratio >= 0.35 && ratio <= 0.7, " ratio outside [0.35, 0.7]");
  }

  void c11_smallball_invariance(Check& check) {
    std::mt19937_64 gen(seed(11));
    std::normal_distribution<double> nd;
    std::uniform_int_distribution<std::size_t> dim(5, 40);
    std::uniform_real_distribution<double> eps_dist(0.1, 1.0);
    const EntryDistribution dists[] = {
        EntryDistribution::complex_gaussian(), EntryDistribution::complex_sign(),
        EntryDistribution::rademacher(), EntryDistribution::uniform_disk(),
        EntryDistribution::real_gaussian()};
    double worst_ratio = 0.0;
    for (int i = 0; i < 20; ++i) {
      const std::size_t n = dim(gen);
      std::vector<Complex> b(n), a(n);
      for (auto& x : b) x = {nd(gen), nd(gen)};
      for (auto& x : a) x = {2 * nd(gen), 2 * nd(gen)};
      const auto unit = UnitVector(b).coords();
      const auto& dist = dists[i % 5];
      const double eps = eps_dist(gen);
      const std::uint64_t s = gen();
      const auto p0 = empirical_smallball(unit, dist, {}, eps, 5000, s, workers_);
      const auto p1 = empirical_smallball(unit, dist, a, eps, 5000, s, workers_);
      const double allowed = 2 * std::max(p0.half_width, p1.half_width);
      worst_ratio = std::max(worst_ratio, std::abs(p0.p_hat - p1.p_hat) / allowed);
      if (std::abs(p0.p_hat - p1.p_hat) > allowed) {
        check.require(false, " config " + std::to_string(i) + " (" + dist.name() + ")");
      }
    }
    check.detail << "max |shifted - unshifted| / (2 half_width) = " << fmt(worst_ratio)
                 << " over 20 configurations";
  }

  // First t on a 1e-4 grid at which all but tau coordinates of t v lie within
  // alpha of a nonzero integer.
  static std::optional<double> lcd_grid_oracle(const std::vector<double>& v, double alpha,
                                               std::size_t tau, double t_max) {
    const double step = 1e-4;
    for (long i = 1; i * step <= t_max; ++i) {
      const double t = i * step;
      std::size_t miss = 0;
      for (double x : v) {
        const double y = std::abs(t * x);
        const double m = std::max(1.0, std::round(y));
        if (std::abs(y - m) > alpha + 1e-12) ++miss;
      }
      if (miss <= tau) return t;
    }
    return std::nullopt;
  }

  void c12_lcd(Check& check) {
    LcdParams p;
    p.alpha = 0.1;
    const std::vector<double> ones{1, 1, 1}, half_one{0.5, 1};
    const auto d1 = lcd(ones, p);
    const auto d2 = lcd(half_one, p);
    const auto oracle = lcd_grid_oracle(half_one, 0.1, 0, 10.0);
    check.detail << "lcd(1,1,1) = " << (d1 ? fmt(*d1) : "inf") << ", lcd(0.5,1) = "
                 << (d2 ? fmt(*d2) : "inf") << " vs grid oracle "
                 << (oracle ? fmt(*oracle) : "inf") << " (stated value 1.8)";
    check.require(d1 && std::abs(*d1 - 0.9) <= 1e-9, " lcd(1,1,1) != 0.9");
    check.require(d2 && oracle && std::abs(*d2 - *oracle) <= 1e-4, " oracle disagreement");

    // Monotonicity, with +inf above every finite value.
    auto le = [](std::optional<double> a, std::optional<double> b) {
      return !b || (a && *a <= *b + 1e-12);
    };
    std::mt19937_64 gen(seed(12));
    std::uniform_real_distribution<double> coord(0.2, 2.0);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    std::size_t violations = 0, oracle_checks = 0, oracle_misses = 0;
    const double alphas[] = {0.05, 0.1, 0.2, 0.3};
    for (int i = 0; i < 200; ++i) {
      std::vector<double> v(dim(gen));
      for (auto& x : v) x = coord(gen);
      for (std::size_t tau = 0; tau < 3; ++tau) {
        std::optional<double> prev;
        for (std::size_t k = 0; k < 4; ++k) {
          LcdParams q;
          q.alpha = alphas[k];
          q.tau = tau;
          q.t_max = 50.0;
          const auto d = lcd(v, q);
          if (k > 0 && !le(d, prev)) ++violations;  // larger alpha, smaller D
          if (tau > 0) {
            LcdParams r = q;
            r.tau = tau - 1;
            if (!le(d, lcd(v, r))) ++violations;  // larger tau, smaller D
          }
          if (i % 20 == 0 && tau < v.size()) {
            ++oracle_checks;
            // D itself must qualify and no earlier grid point may.
            const auto o = lcd_grid_oracle(v, q.alpha, tau, 50.0);
            if (d) {
              std::size_t miss = 0;
              for (double x : v) {
                const double y = std::abs(*d * x);
                if (std::abs(y - std::max(1.0, std::round(y))) > q.alpha + 1e-9) ++miss;
              }
              if (miss > tau || (o && *o < *d - 1e-12)) ++oracle_misses;
            } else if (o) {
              ++oracle_misses;
            }
          }
          prev = d;
        }
      }
    }
    check.detail << "; monotonicity violations " << violations << " on 200 vectors, grid oracle "
                 << oracle_misses << "/" << oracle_checks << " mismatches";
    check.require(violations == 0, " monotonicity");
    check.require(oracle_misses == 0, " random-vector oracle");
  }

  void c13_evenly_spread(Check& check) {
    constexpr std::size_t n = 64;
    constexpr double gamma = 0.3, rho = 0.3;
    std::mt19937_64 gen(seed(13));
    std::normal_distribution<double> nd;
    std::uniform_int_distribution<int> spikes(0, 12);
    std::uniform_int_distribution<std::size_t> pos(0, n - 1);
    const double need = rho * rho * gamma * n / 4;
    const double lo = rho / (2 * std::sqrt(2.0 * n)), hi = 1 / std::sqrt(gamma * n);
    std::size_t found = 0, min_size = n;
    for (int i = 0; i < 1000;) {
      std::vector<Complex> v(n);
      for (auto& x : v) x = {nd(gen), i % 3 == 0 ? 0.0 : nd(gen)};
      for (int s = spikes(gen); s > 0; --s) v[pos(gen)] *= 6.0;
      const UnitVector b(v);
      if (classify(b, gamma, rho) != VectorClass::kIncompressible) continue;
      ++i;
      EvenlySpreadWitness w;
      try {
        w = evenly_spread_witness(b, gamma, rho);
      } catch (const Error&) {
        continue;
      }
      bool ok = w.indices.size() >= need;
      for (std::size_t k : w.indices) {
        const double c = w.part == Part::kReal ? b[k].real() : b[k].imag();
        ok = ok && std::abs(c) >= lo && std::abs(c) <= hi;
      }
      found += ok;
      min_size = std::min(min_size, w.indices.size());
    }
    check.detail << found << "/1000 witnesses verified, smallest |sigma| = " << min_size
                 << " (need >= " << fmt(need) << ")";
    check.require(found == 1000, " missing or invalid witness");
  }

  void c14_compressibility(Check& check) {
    std::mt19937_64 gen(seed(14));
    std::normal_distribution<double> nd;
    std::uniform_int_distribution<std::size_t> dim(1, 12);
    std::uniform_real_distribution<double> gam(0.05, 0.95);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const std::size_t n = i < 12 ? i + 1 : dim(gen);
      std::vector<Complex> v(n);
      for (auto& x : v) x = {nd(gen), nd(gen)};
      if (i % 4 == 0) v[0] = v[n - 1];  // ties
      const UnitVector b(v);
      const double gamma = gam(gen);
      const auto budget = static_cast<std::size_t>(std::floor(gamma * n + 1e-12));
      double best = 1e300;
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) > budget) continue;
        double rest = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (!((mask >> k) & 1)) rest += std::norm(b[k]);
        }
        best = std::min(best, std::sqrt(rest));
      }
      worst = std::max(worst, std::abs(best - distance_to_sparse(b, gamma)));
    }
    check.detail << "max |distance - exhaustive| = " << fmt(worst) << " on 500 vectors, n <= 12";
    check.require(worst <= 1e-12, " exceeds 1e-12");
  }

  void c15_singularity(Check& check) {
    const auto rad = EntryDistribution::rademacher();
    const auto& s2 = run_tagged("singular_n2", config(ExperimentKind::kSingularity, 2, rad, 1,
                                                      seed(15, 2)));
    const auto& s3 = run_tagged("singular_n3", config(ExperimentKind::kSingularity, 3, rad, 1,
                                                      seed(15, 3)));
    const auto& s6 = run_tagged("singular_n6", config(ExperimentKind::kSingularity, 6, rad,
                                                      20000, seed(15, 6)));
    const auto& s10 = run_tagged("singular_n10", config(ExperimentKind::kSingularity, 10, rad,
                                                        20000, seed(15, 10)));
    const auto& p10 = s10.proportion("singular");
    check.detail << "n=2: " << fmt(s2.proportion("singular").p_hat)
                 << ", n=3: " << fmt(s3.proportion("singular").p_hat)
                 << ", MC n=6: " << fmt(s6.proportion("singular").p_hat) << ", MC n=10: "
                 << fmt(p10.p_hat) << " CI [" << fmt(p10.ci.lo) << ", " << fmt(p10.ci.hi) << "]";
    check.require(s2.proportion("singular").p_hat == 0.5, " n=2 != 0.5");
    check.require(s3.proportion("singular").p_hat == 0.625, " n=3 != 0.625 (320/512)");
    check.require(p10.ci.hi < 0.01, " n=10 frequency not below 0.01");
    check.require(p10.p_hat < s6.proportion("singular").p_hat, " not decreasing from n=6");
  }

  void c16_paley_zygmund(Check& check) {
    const double lambda = 0.5, b = 1.0;
    double oracle = 1e300;
    for (long i = 0; i <= 1000000; ++i) {
      const double t = i * 1e-4;
      oracle = std::min(oracle, std::pow(t * t + 1 - lambda * lambda, 3) /
                                    std::pow(t * t * t + 1 + b, 2));
    }
    const double mu = paley_zygmund_mu(lambda, b);
    check.detail << "mu(0.5, 1) = " << fmt(mu) << ", grid oracle " << fmt(oracle);
    check.require(std::abs(mu - oracle) <= 1e-4, " oracle disagreement");
    check.require(std::abs(mu - 0.105469) <= 1e-4, " reference value");
  }

  // Replays every experiment of this run under different worker counts and
  // compares the CSV bytes with the main pass.
  void c17_reproducibility(Check& check) {
    if (producers_.empty()) {
      run_tagged("singular_n6", config(ExperimentKind::kSingularity, 6,
                                       EntryDistribution::rademacher(), 2000, seed(17)));
    }
    std::size_t compared = 0;
    for (std::size_t w : {std::size_t{1}, std::size_t{8}}) {
      if (w == workers_) continue;
      for (const auto& [tag, producer] : producers_) {
        for (const auto& [name, bytes] : producer(w)) {
          ++compared;
          if (artifacts_.at(name) != bytes) {
            check.require(false, " " + name + " differs with " + std::to_string(w) + " workers");
          }
        }
      }
    }
    check.detail << compared << " CSV files replayed under 1 and 8 workers (main pass "
                 << workers_ << "), " << artifacts_.size() << " distinct";
  }

  Options options_;
  std::size_t workers_ = 1;
  std::vector<std::pair<std::string, Producer>> producers_;
  Artifacts artifacts_;
};

}  // namespace

std::vector<CriterionResult> run(const Options& options,
                                 const std::function<void(const CriterionResult&)>& on_result) {
  Suite suite(options);
  return suite.run(on_result);
}

std::string format_result(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof(head), "%s %2d %-22s ", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str());
  std::ostringstream ss;
  ss.precision(3);
  ss << std::fixed << head << r.detail << " (" << r.seconds << " s)";
  return ss.str();
}

}  // namespace rmtlab::acceptance
