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

#include "rmtlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rmtlab/error.hpp"

namespace rmtlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square_finite(const ComplexMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw Error(ErrorCode::kShapeMismatch, std::string(op) + " requires a square matrix");
  }
  if (!a.all_finite()) {
    throw Error(ErrorCode::kNonFinite, std::string(op) + ": matrix has NaN or Inf entries");
  }
}

Complex phase_of(Complex z) {
  const double r = std::abs(z);
  return r == 0.0 ? Complex{1.0, 0.0} : z / r;
}

double norm2(std::span<const Complex> x) {
  double scale = 0.0;
  double ssq = 1.0;
  for (const auto& z : x) {
    for (double v : {z.real(), z.imag()}) {
      if (v == 0.0) continue;
      const double av = std::abs(v);
      if (scale < av) {
        ssq = 1.0 + ssq * (scale / av) * (scale / av);
        scale = av;
      } else {
        ssq += (av / scale) * (av / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

// Hermitian reflector P = I - tau u u^* with P x = beta e_1. u overwrites x
// in place (u_0 stored explicitly). tau == 0 means P = I.
struct Reflector {
  double tau = 0.0;
  Complex beta{};
};

Reflector make_reflector(std::span<Complex> x) {
  const double xnorm = norm2(x);
  Reflector r;
  if (xnorm == 0.0) {
    r.beta = 0.0;
    return r;
  }
  const Complex ph = phase_of(x[0]);
  const double ax0 = std::abs(x[0]);
  r.beta = -ph * xnorm;
  x[0] += ph * xnorm;
  // |u|^2 = 2 xnorm (xnorm + |x_0|)
  const double unorm2 = 2.0 * xnorm * (xnorm + ax0);
  r.tau = 2.0 / unorm2;
  return r;
}

// rows [r0, r1) x cols [c0, c1) of m  <-  P m, u indexed from r0.
void apply_left(ComplexMatrix& m, std::span<const Complex> u, double tau, std::size_t r0,
                std::size_t c0, std::size_t c1, std::vector<Complex>& work) {
  if (tau == 0.0 || c0 >= c1) return;
  const std::size_t width = c1 - c0;
  work.assign(width, Complex{});
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Complex ui = std::conj(u[i]);
    if (ui == Complex{}) continue;
    const Complex* row = &m(r0 + i, c0);
    for (std::size_t j = 0; j < width; ++j) work[j] += ui * row[j];
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Complex ui = tau * u[i];
    if (ui == Complex{}) continue;
    Complex* row = &m(r0 + i, c0);
    for (std::size_t j = 0; j < width; ++j) row[j] -= ui * work[j];
  }
}

// rows [r0, r1) x cols [c0, c0 + |u|) of m  <-  m P.
void apply_right(ComplexMatrix& m, std::span<const Complex> u, double tau, std::size_t r0,
                 std::size_t r1, std::size_t c0) {
  if (tau == 0.0) return;
  const std::size_t width = u.size();
  for (std::size_t r = r0; r < r1; ++r) {
    Complex* row = &m(r, c0);
    Complex s{};
    for (std::size_t j = 0; j < width; ++j) s += row[j] * u[j];
    if (s == Complex{}) continue;
    s *= tau;
    for (std::size_t j = 0; j < width; ++j) row[j] -= s * std::conj(u[j]);
  }
}

// Plane rotation on two columns of a complex matrix:
// col_p <- c col_p + s col_q, col_q <- -s col_p + c col_q.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, double c, double s) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Complex x = m(i, p);
    const Complex y = m(i, q);
    m(i, p) = c * x + s * y;
    m(i, q) = -s * x + c * y;
  }
}

struct Rotation {
  double c;
  double s;
  double r;
};

// c = f / r, s = g / r, r = hypot(f, g); (1, 0, f) when both vanish.
Rotation make_rotation(double f, double g) {
  if (g == 0.0) return {1.0, 0.0, f};
  if (f == 0.0) return {0.0, 1.0, g};
  const double r = std::hypot(f, g);
  return {f / r, g / r, r};
}

// ---------------------------------------------------------------------------
// One-sided Jacobi.

SvdResult jacobi_svd(const ComplexMatrix& a, bool want_vectors) {
  const std::size_t n = a.rows();
  // Row j of w is column j of A V; row j of vt is column j of V.
  ComplexMatrix w = a.transpose();
  ComplexMatrix vt = ComplexMatrix::identity(n);
  const double tol = std::max(1e-15, static_cast<double>(n) * kEps);
  const std::size_t max_sweeps = 30 * std::max<std::size_t>(n, 1);

  std::vector<double> sq(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double nj = norm2(w.row(j));
    sq[j] = nj * nj;
  }

  bool converged = n < 2;
  for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = sq[p];
        const double beta = sq[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        auto wp = w.row(p);
        auto wq = w.row(q);
        Complex gamma{};
        for (std::size_t i = 0; i < n; ++i) gamma += std::conj(wp[i]) * wq[i];
        const double g = std::abs(gamma);
        if (g <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;

        const Complex e = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        const Complex sce = s * std::conj(e);
        const Complex se = s * e;
        for (std::size_t i = 0; i < n; ++i) {
          const Complex x = wp[i];
          const Complex y = wq[i];
          wp[i] = c * x - sce * y;
          wq[i] = se * x + c * y;
        }
        if (want_vectors) {
          auto vp = vt.row(p);
          auto vq = vt.row(q);
          for (std::size_t i = 0; i < n; ++i) {
            const Complex x = vp[i];
            const Complex y = vq[i];
            vp[i] = c * x - sce * y;
            vq[i] = se * x + c * y;
          }
        }
        const double np = norm2(wp);
        const double nq = norm2(wq);
        sq[p] = np * np;
        sq[q] = nq * nq;
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw Error(ErrorCode::kNoConvergence,
                "one-sided Jacobi exceeded " + std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = norm2(w.row(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return s[x] > s[y]; });

  SvdResult result;
  result.singular_values.resize(n);
  for (std::size_t k = 0; k < n; ++k) result.singular_values[k] = s[order[k]];
  if (!want_vectors) return result;

  const double smax = n == 0 ? 0.0 : result.singular_values[0];
  const double cutoff = smax * static_cast<double>(n) * kEps;
  // Columns of U stored as rows; unfilled rows are completed afterwards.
  ComplexMatrix ut(n, n);
  std::vector<bool> filled(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const double sk = result.singular_values[k];
    if (sk > cutoff && sk > 0.0) {
      auto src = w.row(order[k]);
      auto dst = ut.row(k);
      for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] / sk;
      filled[k] = true;
    }
  }
  // Complete with the standard basis vector that keeps the most norm after
  // projecting out the filled rows; the best one keeps at least 1/sqrt(n).
  auto residual = [&](std::size_t e) {
    std::vector<Complex> x(n, Complex{});
    x[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t m = 0; m < n; ++m) {
        if (!filled[m]) continue;
        auto um = ut.row(m);
        Complex proj{};
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(um[i]) * x[i];
        for (std::size_t i = 0; i < n; ++i) x[i] -= proj * um[i];
      }
    }
    return x;
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (filled[k]) continue;
    std::vector<Complex> best;
    double best_norm = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      auto x = residual(e);
      const double nx = norm2(x);
      if (nx > best_norm) {
        best_norm = nx;
        best = std::move(x);
      }
    }
    if (!(best_norm > 0.5 / std::sqrt(static_cast<double>(n)))) {
      throw Error(ErrorCode::kNoConvergence, "could not complete unitary basis");
    }
    auto dst = ut.row(k);
    for (std::size_t i = 0; i < n; ++i) dst[i] = best[i] / best_norm;
    filled[k] = true;
  }

  ComplexMatrix u(n, n);
  ComplexMatrix v(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    auto vk = vt.row(order[k]);
    for (std::size_t i = 0; i < n; ++i) {
      u(i, k) = ut(k, i);
      v(i, k) = vk[i];
    }
  }
  result.left_vectors = std::move(u);
  result.right_vectors = std::move(v);
  return result;
}

// ---------------------------------------------------------------------------
// Golub-Kahan bidiagonalization + implicit-shift QR on the real bidiagonal.

// Accumulates P_0 P_1 ... P_{m-1} from stored reflectors (rows of `vecs`,
// each starting at offset `start + k`).
ComplexMatrix accumulate_reflectors(const std::vector<std::vector<Complex>>& vecs,
                                    const std::vector<double>& taus, std::size_t n,
                                    std::size_t start) {
  ComplexMatrix q = ComplexMatrix::identity(n);
  std::vector<Complex> work;
  for (std::size_t k = vecs.size(); k-- > 0;) {
    const std::size_t off = start + k;
    apply_left(q, vecs[k], taus[k], off, off, n, work);
  }
  return q;
}

void bidiagonal_qr(std::vector<double>& d, std::vector<double>& e, ComplexMatrix* u,
                   ComplexMatrix* v) {
  const std::size_t n = d.size();
  if (n < 2) return;
  double bnorm = 0.0;
  for (double x : d) bnorm = std::max(bnorm, std::abs(x));
  for (double x : e) bnorm = std::max(bnorm, std::abs(x));
  const double zero_thresh = kEps * bnorm;
  const std::size_t max_iter = 30 * n;
  std::size_t iter = 0;

  std::size_t hi = n - 1;
  while (hi > 0) {
    for (std::size_t i = 0; i < hi; ++i) {
      if (std::abs(e[i]) <= kEps * (std::abs(d[i]) + std::abs(d[i + 1])) ||
          std::abs(e[i]) <= std::numeric_limits<double>::min()) {
        e[i] = 0.0;
      }
    }
    if (e[hi - 1] == 0.0) {
      --hi;
      continue;
    }
    std::size_t lo = hi - 1;
    while (lo > 0 && e[lo - 1] != 0.0) --lo;

    if (++iter > max_iter) {
      throw Error(ErrorCode::kNoConvergence,
                  "bidiagonal QR exceeded " + std::to_string(max_iter) + " sweeps");
    }

    // A (numerically) zero diagonal entry splits the block after a chase.
    bool chased = false;
    for (std::size_t i = lo; i <= hi; ++i) {
      if (std::abs(d[i]) > zero_thresh) continue;
      d[i] = 0.0;
      chased = true;
      if (i < hi) {
        double f = e[i];
        e[i] = 0.0;
        for (std::size_t j = i + 1; j <= hi && f != 0.0; ++j) {
          const Rotation g = make_rotation(d[j], f);
          d[j] = g.r;
          if (j < hi) {
            f = -g.s * e[j];
            e[j] = g.c * e[j];
          }
          if (u) rotate_columns(*u, j, i, g.c, g.s);
        }
      } else {
        double f = e[hi - 1];
        e[hi - 1] = 0.0;
        for (std::size_t j = hi; j-- > lo && f != 0.0;) {
          const Rotation g = make_rotation(d[j], f);
          d[j] = g.r;
          if (j > lo) {
            f = -g.s * e[j - 1];
            e[j - 1] = g.c * e[j - 1];
          }
          if (v) rotate_columns(*v, j, hi, g.c, g.s);
        }
      }
      break;
    }
    if (chased) continue;

    // Wilkinson shift from the trailing 2x2 of B^T B.
    const double dm1 = d[hi - 1];
    const double em1 = e[hi - 1];
    const double em2 = hi - 1 > lo ? e[hi - 2] : 0.0;
    const double t11 = dm1 * dm1 + em2 * em2;
    const double t12 = dm1 * em1;
    const double t22 = d[hi] * d[hi] + em1 * em1;
    const double delta = 0.5 * (t11 - t22);
    const double denom = delta + (delta >= 0.0 ? 1.0 : -1.0) * std::hypot(delta, t12);
    const double mu = denom == 0.0 ? t22 : t22 - t12 * t12 / denom;

    double y = d[lo] * d[lo] - mu;
    double z = d[lo] * e[lo];
    for (std::size_t k = lo; k < hi; ++k) {
      Rotation g = make_rotation(y, z);
      if (k > lo) e[k - 1] = g.r;
      {
        const double a = d[k];
        const double b = e[k];
        d[k] = g.c * a + g.s * b;
        e[k] = -g.s * a + g.c * b;
      }
      const double bulge_low = g.s * d[k + 1];
      d[k + 1] = g.c * d[k + 1];
      if (v) rotate_columns(*v, k, k + 1, g.c, g.s);

      g = make_rotation(d[k], bulge_low);
      d[k] = g.r;
      {
        const double a = e[k];
        const double b = d[k + 1];
        e[k] = g.c * a + g.s * b;
        d[k + 1] = -g.s * a + g.c * b;
      }
      if (k + 1 < hi) {
        z = g.s * e[k + 1];
        e[k + 1] = g.c * e[k + 1];
        y = e[k];
      }
      if (u) rotate_columns(*u, k, k + 1, g.c, g.s);
    }
  }
}

SvdResult golub_kahan_svd(const ComplexMatrix& a, bool want_vectors) {
  const std::size_t n = a.rows();
  ComplexMatrix b = a;
  std::vector<Complex> d(n), e(n > 0 ? n - 1 : 0);
  std::vector<std::vector<Complex>> left_u, right_u;
  std::vector<double> left_tau, right_tau;
  std::vector<Complex> work, x;

  for (std::size_t k = 0; k < n; ++k) {
    x.resize(n - k);
    for (std::size_t i = k; i < n; ++i) x[i - k] = b(i, k);
    const Reflector p = make_reflector(x);
    d[k] = p.beta;
    apply_left(b, x, p.tau, k, k + 1, n, work);
    if (want_vectors) {
      left_u.push_back(x);
      left_tau.push_back(p.tau);
    }
    if (k + 1 < n) {
      x.resize(n - k - 1);
      for (std::size_t j = k + 1; j < n; ++j) x[j - k - 1] = std::conj(b(k, j));
      const Reflector q = make_reflector(x);
      e[k] = std::conj(q.beta);
      apply_right(b, x, q.tau, k + 1, n, k + 1);
      if (want_vectors) {
        right_u.push_back(x);
        right_tau.push_back(q.tau);
      }
    }
  }

  std::optional<ComplexMatrix> u, v;
  if (want_vectors) {
    u = accumulate_reflectors(left_u, left_tau, n, 0);
    v = accumulate_reflectors(right_u, right_tau, n, 1);
  }

  // Diagonal phase scalings make the bidiagonal real and nonnegative.
  std::vector<double> dr(n), er(e.size());
  Complex rphase{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const Complex lphase = phase_of(d[k] * rphase);
    dr[k] = std::abs(d[k]);
    if (u) {
      for (std::size_t i = 0; i < n; ++i) (*u)(i, k) *= lphase;
    }
    if (v) {
      for (std::size_t i = 0; i < n; ++i) (*v)(i, k) *= rphase;
    }
    if (k + 1 < n) {
      er[k] = std::abs(e[k]);
      rphase = e[k] == Complex{} ? Complex{1.0, 0.0} : lphase * std::conj(e[k]) / er[k];
    }
  }

  bidiagonal_qr(dr, er, u ? &*u : nullptr, v ? &*v : nullptr);

  for (std::size_t k = 0; k < n; ++k) {
    if (dr[k] < 0.0) {
      dr[k] = -dr[k];
      if (v) {
        for (std::size_t i = 0; i < n; ++i) (*v)(i, k) = -(*v)(i, k);
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t p, std::size_t q) { return dr[p] > dr[q]; });

  SvdResult result;
  result.singular_values.resize(n);
  for (std::size_t k = 0; k < n; ++k) result.singular_values[k] = dr[order[k]];
  if (want_vectors) {
    ComplexMatrix us(n, n), vs(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        us(i, k) = (*u)(i, order[k]);
        vs(i, k) = (*v)(i, order[k]);
      }
    }
    result.left_vectors = std::move(us);
    result.right_vectors = std::move(vs);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Eigenvalues.

// Complex plane rotation G = [[c, s], [-conj(s), c]] with G (f, g)^T = (r, 0).
struct ComplexRotation {
  double c;
  Complex s;
  Complex r;
};

ComplexRotation make_complex_rotation(Complex f, Complex g) {
  if (g == Complex{}) return {1.0, Complex{}, f};
  const double af = std::abs(f);
  if (af == 0.0) return {0.0, std::conj(g) / std::abs(g), std::abs(g)};
  const double norm = std::hypot(af, std::abs(g));
  const Complex fph = f / af;
  return {af / norm, fph * std::conj(g) / norm, fph * norm};
}

// Eigenvalues of [[a, b], [c, d]].
std::pair<Complex, Complex> eig2x2(Complex a, Complex b, Complex c, Complex d) {
  const Complex mean = 0.5 * (a + d);
  const Complex half_diff = 0.5 * (a - d);
  const Complex disc = std::sqrt(half_diff * half_diff + b * c);
  const Complex l1 = std::abs(mean + disc) >= std::abs(mean - disc) ? mean + disc : mean - disc;
  const Complex det = a * d - b * c;
  const Complex l2 = l1 == Complex{} ? mean - disc : det / l1;
  return {l1, l2};
}

std::vector<Complex> hessenberg_qr_eigenvalues(ComplexMatrix h) {
  const std::size_t n = h.rows();
  std::vector<Complex> eig;
  eig.reserve(n);
  if (n == 0) return eig;
  const double hnorm = h.frobenius_norm();
  const double small_abs = std::numeric_limits<double>::min() * static_cast<double>(n) / kEps;
  const std::size_t max_iter = 40 * n;
  std::size_t total_iter = 0;
  std::size_t since_deflation = 0;

  std::size_t hi = n - 1;
  while (true) {
    if (hi == 0) {
      eig.push_back(h(0, 0));
      break;
    }
    // Locate the active block [lo, hi].
    std::size_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      const double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      const double ref = diag == 0.0 ? hnorm : diag;
      if (sub <= 1e-14 * ref || sub <= small_abs) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig.push_back(h(hi, hi));
      --hi;
      since_deflation = 0;
      continue;
    }
    if (lo + 1 == hi) {
      const auto [l1, l2] = eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
      eig.push_back(l1);
      eig.push_back(l2);
      if (lo == 0) break;
      hi = lo - 1;
      since_deflation = 0;
      continue;
    }

    if (++total_iter > max_iter) {
      throw Error(ErrorCode::kNoConvergence,
                  "shifted QR exceeded " + std::to_string(max_iter) + " iterations");
    }
    ++since_deflation;

    Complex shift;
    if (since_deflation % 10 == 0) {
      // Exceptional shift breaks rare cycles.
      shift = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      const auto [l1, l2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
      shift = std::abs(l1 - h(hi, hi)) <= std::abs(l2 - h(hi, hi)) ? l1 : l2;
    }

    // Implicit single-shift QR sweep over the active block.
    Complex f = h(lo, lo) - shift;
    Complex g = h(lo + 1, lo);
    for (std::size_t k = lo; k < hi; ++k) {
      if (k > lo) {
        f = h(k, k - 1);
        g = h(k + 1, k - 1);
      }
      const ComplexRotation rot = make_complex_rotation(f, g);
      if (k > lo) {
        h(k, k - 1) = rot.r;
        h(k + 1, k - 1) = 0.0;
      }
      const Complex s = rot.s;
      const Complex sc = std::conj(s);
      const double c = rot.c;
      // Rows k, k+1 (columns k.. hi).
      Complex* rk = &h(k, 0);
      Complex* rk1 = &h(k + 1, 0);
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex x = rk[j];
        const Complex y = rk1[j];
        rk[j] = c * x + s * y;
        rk1[j] = -sc * x + c * y;
      }
      // Columns k, k+1 (rows lo .. min(k+2, hi)).
      const std::size_t rmax = std::min(k + 2, hi);
      for (std::size_t i = lo; i <= rmax; ++i) {
        const Complex x = h(i, k);
        const Complex y = h(i, k + 1);
        h(i, k) = c * x + sc * y;
        h(i, k + 1) = -s * x + c * y;
      }
    }
  }
  return eig;
}

}  // namespace

double finite_value(const LogValue& v) {
  if (const double* x = std::get_if<double>(&v)) return *x;
  throw Error(ErrorCode::kDomainError, "value is -infinity (singular matrix)");
}

SvdResult svd(const ComplexMatrix& a, bool want_vectors, SvdMethod method) {
  require_square_finite(a, "svd");
  if (method == SvdMethod::kAuto) {
    method = want_vectors && a.rows() <= kJacobiMaxDimension ? SvdMethod::kJacobi
                                                              : SvdMethod::kGolubKahan;
  }
  return method == SvdMethod::kJacobi ? jacobi_svd(a, want_vectors)
                                      : golub_kahan_svd(a, want_vectors);
}

ComplexMatrix hessenberg(const ComplexMatrix& a) {
  require_square_finite(a, "hessenberg");
  const std::size_t n = a.rows();
  ComplexMatrix h = a;
  std::vector<Complex> x, work;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    x.resize(n - k - 1);
    for (std::size_t i = k + 1; i < n; ++i) x[i - k - 1] = h(i, k);
    const Reflector p = make_reflector(x);
    if (p.tau == 0.0) continue;
    apply_left(h, x, p.tau, k + 1, k + 1, n, work);
    h(k + 1, k) = p.beta;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    apply_right(h, x, p.tau, 0, n, k + 1);
  }
  return h;
}

EigenResult eigenvalues(const ComplexMatrix& a) {
  require_square_finite(a, "eigenvalues");
  return EigenResult{hessenberg_qr_eigenvalues(hessenberg(a))};
}

double smallest_singular_value(const ComplexMatrix& a) {
  const SvdResult r = svd(a, false);
  if (r.singular_values.empty()) return 0.0;
  const double smin = r.singular_values.back();
  return smin <= kSvdTolerance * r.singular_values.front() ? 0.0 : smin;
}

double spectral_norm(const ComplexMatrix& a) {
  const SvdResult r = svd(a, false);
  return r.singular_values.empty() ? 0.0 : r.singular_values.front();
}

LogValue log_abs_det(const ComplexMatrix& a) {
  const SvdResult r = svd(a, false);
  double sum = 0.0;
  for (double s : r.singular_values) {
    if (s <= kLogUnderflowFloor) return NegInfinity{};
    sum += std::log(s);
  }
  return sum;
}

}  // namespace rmtlab
