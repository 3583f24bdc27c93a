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

#include "rmtlab/ensembles.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "rmtlab/error.hpp"
#include "rmtlab/format.hpp"

namespace rmtlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Marsaglia-Tsang; shape < 1 uses the u^(1/shape) boost.
double sample_gamma(double shape, EntryStream& s) {
  if (shape < 1.0) {
    const double g = sample_gamma(shape + 1.0, s);
    return g * std::pow(s.next_uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x, v;
    do {
      x = s.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = s.next_uniform();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

double student_t_scale(double nu) { return nu > 2.0 ? std::sqrt((nu - 2.0) / nu) : 1.0; }

double parse_parameter(std::string_view text, std::string_view prefix) {
  std::string_view body = text.substr(prefix.size());
  if (body.size() < 3 || body.front() != '(' || body.back() != ')') {
    throw Error(ErrorCode::kParse, "expected " + std::string(prefix) + "(<number>), got '" +
                                       std::string(text) + "'");
  }
  body = body.substr(1, body.size() - 2);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc{} || ptr != body.data() + body.size()) {
    throw Error(ErrorCode::kParse, "bad distribution parameter in '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

EntryDistribution EntryDistribution::sparse_bernoulli(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kBadSpec, "sparse-bernoulli needs p in (0, 1], got " + format_double(p));
  }
  return {DistKind::kSparseBernoulli, p};
}

EntryDistribution EntryDistribution::student_t(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw Error(ErrorCode::kBadSpec, "student-t needs nu > 0, got " + format_double(nu));
  }
  return {DistKind::kStudentT, nu};
}

EntryDistribution EntryDistribution::parse(std::string_view text) {
  if (text == "complex-gaussian") return complex_gaussian();
  if (text == "real-gaussian") return real_gaussian();
  if (text == "rademacher") return rademacher();
  if (text == "complex-sign") return complex_sign();
  if (text == "uniform-disk") return uniform_disk();
  if (text.starts_with("sparse-bernoulli")) {
    return sparse_bernoulli(parse_parameter(text, "sparse-bernoulli"));
  }
  if (text.starts_with("student-t")) return student_t(parse_parameter(text, "student-t"));
  throw Error(ErrorCode::kParse, "unknown distribution '" + std::string(text) + "'");
}

std::string EntryDistribution::name() const {
  switch (kind_) {
    case DistKind::kComplexGaussian: return "complex-gaussian";
    case DistKind::kRealGaussian: return "real-gaussian";
    case DistKind::kRademacher: return "rademacher";
    case DistKind::kComplexSign: return "complex-sign";
    case DistKind::kUniformDisk: return "uniform-disk";
    case DistKind::kSparseBernoulli: return "sparse-bernoulli(" + format_double(param_) + ")";
    case DistKind::kStudentT: return "student-t(" + format_double(param_) + ")";
  }
  return "unknown";
}

bool EntryDistribution::is_real() const noexcept {
  switch (kind_) {
    case DistKind::kRealGaussian:
    case DistKind::kRademacher:
    case DistKind::kSparseBernoulli:
    case DistKind::kStudentT:
      return true;
    default:
      return false;
  }
}

double EntryDistribution::max_modulus() const noexcept {
  switch (kind_) {
    case DistKind::kRademacher:
    case DistKind::kComplexSign:
      return 1.0;
    case DistKind::kUniformDisk: return std::numbers::sqrt2;
    case DistKind::kSparseBernoulli: return 1.0 / std::sqrt(param_);
    default: return kInf;
  }
}

EntryMoments EntryDistribution::moments() const {
  EntryMoments m;
  switch (kind_) {
    case DistKind::kComplexGaussian:
      // |X|^2 ~ Exp(1): E|X|^3 = Gamma(5/2).
      m.third_abs = 0.75 * std::sqrt(std::numbers::pi);
      m.sigma1_sq = m.sigma2_sq = 0.5;
      break;
    case DistKind::kRealGaussian:
      m.third_abs = 2.0 * std::sqrt(2.0 / std::numbers::pi);
      m.sigma1_sq = 1.0;
      break;
    case DistKind::kRademacher:
      m.third_abs = 1.0;
      m.sigma1_sq = 1.0;
      break;
    case DistKind::kComplexSign:
      m.third_abs = 1.0;
      m.sigma1_sq = m.sigma2_sq = 0.5;
      break;
    case DistKind::kUniformDisk:
      // Radius R = sqrt(2): E|X|^3 = 2 R^3 / 5.
      m.third_abs = 4.0 * std::numbers::sqrt2 / 5.0;
      m.sigma1_sq = m.sigma2_sq = 0.5;
      break;
    case DistKind::kSparseBernoulli:
      m.third_abs = 1.0 / std::sqrt(param_);
      m.sigma1_sq = 1.0;
      break;
    case DistKind::kStudentT: {
      const double nu = param_;
      const double s = student_t_scale(nu);
      m.second_abs = nu > 2.0 ? 1.0 : kInf;
      m.sigma1_sq = m.second_abs;
      if (nu > 3.0) {
        // E|T|^3 = nu^{3/2} Gamma(2) Gamma((nu-3)/2) / (sqrt(pi) Gamma(nu/2)).
        const double log_m3 = 1.5 * std::log(nu) + std::lgamma(0.5 * (nu - 3.0)) -
                              0.5 * std::log(std::numbers::pi) - std::lgamma(0.5 * nu);
        m.third_abs = s * s * s * std::exp(log_m3);
      } else {
        m.third_abs = kInf;
      }
      break;
    }
  }
  m.third_abs_bound = 1.05 * m.third_abs;
  return m;
}

Complex EntryDistribution::sample(EntryStream& s) const {
  switch (kind_) {
    case DistKind::kComplexGaussian: {
      const double a = s.next_normal();
      const double b = s.next_normal();
      return {a * std::numbers::sqrt2 * 0.5, b * std::numbers::sqrt2 * 0.5};
    }
    case DistKind::kRealGaussian: return {s.next_normal(), 0.0};
    case DistKind::kRademacher: return {(s.next_u32() & 1u) ? 1.0 : -1.0, 0.0};
    case DistKind::kComplexSign: {
      const std::uint32_t bits = s.next_u32();
      const double h = 0.5 * std::numbers::sqrt2;
      return {(bits & 1u) ? h : -h, (bits & 2u) ? h : -h};
    }
    case DistKind::kUniformDisk: {
      const double r = std::numbers::sqrt2 * std::sqrt(s.next_uniform());
      const double theta = 2.0 * std::numbers::pi * s.next_uniform();
      return std::polar(r, theta);
    }
    case DistKind::kSparseBernoulli: {
      const double u = s.next_uniform();
      if (u >= param_) return {};
      const double mag = 1.0 / std::sqrt(param_);
      return {(s.next_u32() & 1u) ? mag : -mag, 0.0};
    }
    case DistKind::kStudentT: {
      const double z = s.next_normal();
      const double chi2 = 2.0 * sample_gamma(0.5 * param_, s);
      return {student_t_scale(param_) * z / std::sqrt(chi2 / param_), 0.0};
    }
  }
  return {};
}

void EnsembleSpec::validate() const {
  if (n < 2) throw Error(ErrorCode::kBadSpec, "n must be >= 2, got " + std::to_string(n));
  if (!(epsilon_exponent > 0.0 && epsilon_exponent < 0.5)) {
    throw Error(ErrorCode::kBadSpec,
                "epsilon exponent must lie in (0, 1/2), got " + format_double(epsilon_exponent));
  }
  if (!std::isfinite(shift_z.real()) || !std::isfinite(shift_z.imag())) {
    throw Error(ErrorCode::kBadSpec, "shift z must be finite");
  }
}

double EnsembleSpec::epsilon_n() const {
  return std::pow(static_cast<double>(n), -epsilon_exponent);
}

double EnsembleSpec::truncation_threshold() const {
  return std::sqrt(static_cast<double>(n)) * epsilon_n();
}

TruncationResult truncate_entries(const ComplexMatrix& x, double epsilon_n) {
  if (!(epsilon_n > 0.0)) throw Error(ErrorCode::kBadSpec, "epsilon_n must be positive");
  const double threshold = std::sqrt(static_cast<double>(x.rows())) * epsilon_n;
  TruncationResult r{x, 0};
  for (auto& z : r.matrix.data()) {
    if (std::abs(z) > threshold) {
      z = 0.0;
      ++r.zeroed;
    }
  }
  return r;
}

ComplexMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t trial) {
  spec.validate();
  const std::size_t n = spec.n;
  const SeedTree tree(spec.master_seed);
  ComplexMatrix x(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      EntryStream s = tree.stream(StreamDomain::kMatrixEntry, trial, j * n + k);
      x(j, k) = spec.dist.sample(s);
    }
  }
  if (spec.truncate) x = truncate_entries(x, spec.epsilon_n()).matrix;
  return x;
}

Complex truncated_mean(const EntryDistribution& dist, double threshold) {
  if (!(threshold > 0.0)) throw Error(ErrorCode::kBadSpec, "truncation threshold must be positive");
  // A law invariant under X -> -X keeps that symmetry after truncating |X|,
  // so the truncated mean is exactly zero for every supported kind.
  if (dist.is_symmetric()) return {};
  throw Error(ErrorCode::kBadSpec, "no closed-form truncated mean for " + dist.name());
}

Complex centering(const EnsembleSpec& spec) {
  return spec.truncate ? truncated_mean(spec.dist, spec.truncation_threshold()) : Complex{};
}

ComplexMatrix shifted_matrix(const ComplexMatrix& x, Complex z, Complex centering) {
  if (!x.is_square()) throw Error(ErrorCode::kShapeMismatch, "shifted_matrix needs a square matrix");
  ComplexMatrix w = x;
  if (centering != Complex{}) {
    for (auto& v : w.data()) v -= centering;
  }
  const Complex shift = z * std::sqrt(static_cast<double>(x.rows()));
  for (std::size_t i = 0; i < w.rows(); ++i) w(i, i) -= shift;
  return w;
}

ComplexMatrix scaled_shifted(const ComplexMatrix& x, Complex z) {
  if (!x.is_square()) throw Error(ErrorCode::kShapeMismatch, "scaled_shifted needs a square matrix");
  ComplexMatrix w = x;
  w *= 1.0 / std::sqrt(static_cast<double>(x.rows()));
  for (std::size_t i = 0; i < w.rows(); ++i) w(i, i) -= z;
  return w;
}

ComplexMatrix hermitian_product(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto mi = m.row(i);
    for (std::size_t j = i; j < n; ++j) {
      auto mj = m.row(j);
      Complex s{};
      for (std::size_t k = 0; k < m.cols(); ++k) s += mi[k] * std::conj(mj[k]);
      if (i == j) s.imag(0.0);
      h(i, j) = s;
      h(j, i) = std::conj(s);
    }
  }
  return h;
}

}  // namespace rmtlab
