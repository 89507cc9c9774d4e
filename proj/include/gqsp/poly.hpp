// Copyright 2026 The GQSP Toolkit Authors. All Rights Reserved.
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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gqsp/error.hpp"
#include "gqsp/fft.hpp"

namespace gqsp {

using cplx = std::complex<double>;
using CoeffVector = std::vector<cplx>;

/// A complex Laurent polynomial sum_n c_n z^n, stored as a dense coefficient
/// vector in ascending degree starting at min_degree. Evaluated on the unit
/// circle z = e^{it}.
class LaurentPoly {
 public:
  LaurentPoly() : coeffs_{cplx{0.0}} {}

  explicit LaurentPoly(CoeffVector coeffs, int min_degree = 0)
      : coeffs_(std::move(coeffs)), min_degree_(min_degree) {
    require(!coeffs_.empty(), "LaurentPoly: coefficient vector is empty");
    for (const auto& c : coeffs_) {
      require(std::isfinite(c.real()) && std::isfinite(c.imag()),
              "LaurentPoly: non-finite coefficient");
    }
  }

  static LaurentPoly monomial(int degree, cplx value = 1.0) {
    return LaurentPoly({value}, degree);
  }

  const CoeffVector& coeffs() const { return coeffs_; }
  int min_degree() const { return min_degree_; }
  int degree() const { return min_degree_ + static_cast<int>(coeffs_.size()) - 1; }
  /// Number of stored degrees minus one.
  std::size_t span() const { return coeffs_.size() - 1; }

  /// Coefficient of z^n; zero outside the stored range.
  cplx coeff(int n) const {
    const int idx = n - min_degree_;
    if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(idx)];
  }

  /// z^k * p
  LaurentPoly shifted(int k) const { return LaurentPoly(coeffs_, min_degree_ + k); }

  LaurentPoly scaled(cplx s) const {
    CoeffVector out(coeffs_);
    for (auto& c : out) c *= s;
    return LaurentPoly(std::move(out), min_degree_);
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  CoeffVector coeffs_;
  int min_degree_ = 0;
};

/// p(e^{it}) by Horner's rule in e^{it}.
inline cplx eval_unit_circle(const LaurentPoly& p, double t) {
  const cplx z = std::polar(1.0, t);
  const auto& c = p.coeffs();
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc * std::polar(1.0, p.min_degree() * t);
}

/// Values of p at t_k = 2 pi k / m, k = 0..m-1. Coefficients are folded
/// modulo m, so any m >= 1 is exact; m > span avoids aliasing in the
/// inverse direction.
inline CoeffVector eval_grid(const LaurentPoly& p, std::size_t m) {
  require(m > 0, "eval_grid: grid size must be positive");
  CoeffVector grid(m, cplx{0.0});
  const auto mi = static_cast<long long>(m);
  for (std::size_t j = 0; j < p.coeffs().size(); ++j) {
    long long n = p.min_degree() + static_cast<long long>(j);
    long long idx = ((n % mi) + mi) % mi;
    grid[static_cast<std::size_t>(idx)] += p.coeffs()[j];
  }
  fft::transform(grid, fft::Direction::kBackward);
  return grid;
}

/// Grid size for sup-norm checks: 8 * (span + 1) rounded up to a power of two.
inline std::size_t default_grid_size(const LaurentPoly& p) {
  return fft::next_pow2(8 * (p.span() + 1));
}

/// Direct O(n*m) linear convolution.
inline CoeffVector convolve_naive(std::span<const cplx> a, std::span<const cplx> b) {
  require(!a.empty() && !b.empty(), "convolve: empty input");
  CoeffVector out(a.size() + b.size() - 1, cplx{0.0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// Linear convolution through a zero-padded power-of-two FFT.
inline CoeffVector convolve_fft(std::span<const cplx> a, std::span<const cplx> b) {
  require(!a.empty() && !b.empty(), "convolve: empty input");
  const std::size_t len = a.size() + b.size() - 1;
  const std::size_t n = fft::next_pow2(len);
  CoeffVector fa(n, cplx{0.0}), fb(n, cplx{0.0});
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fft::transform(fa, fft::Direction::kForward);
  fft::transform(fb, fft::Direction::kForward);
  for (std::size_t k = 0; k < n; ++k) fa[k] *= fb[k];
  fft::transform(fa, fft::Direction::kBackward);
  const double inv_n = 1.0 / static_cast<double>(n);
  CoeffVector out(len);
  for (std::size_t k = 0; k < len; ++k) out[k] = fa[k] * inv_n;
  return out;
}

inline CoeffVector convolve(std::span<const cplx> a, std::span<const cplx> b) {
  if (std::min(a.size(), b.size()) <= 32) return convolve_naive(a, b);
  return convolve_fft(a, b);
}

inline CoeffVector reverse_conjugate(std::span<const cplx> a) {
  CoeffVector out(a.rbegin(), a.rend());
  for (auto& c : out) c = std::conj(c);
  return out;
}

/// a * reverse(conj(a)): the coefficients of |A(e^{it})|^2, lag -d..d.
inline CoeffVector autocorrelation(std::span<const cplx> a) {
  return convolve(a, reverse_conjugate(a));
}

/// max_k |p(e^{2 pi i k / m})|^2. A lower bound on the supremum over the
/// whole circle; the gap shrinks as m grows past a few times the span.
inline double sup_norm_sq(const LaurentPoly& p, std::size_t m) {
  double best = 0.0;
  for (const auto& v : eval_grid(p, m)) best = std::max(best, std::norm(v));
  return best;
}

inline constexpr std::size_t kSupRefinePeaks = 16;

/// sup_t |p(e^{it})|^2: the default grid, then golden-section search on the
/// cells around the largest grid peaks. Sampling alone can miss the true
/// maximum by a relative O((span/m)^2).
inline double sup_norm_sq(const LaurentPoly& p) {
  const std::size_t m = default_grid_size(p);
  const auto grid = eval_grid(p, m);
  std::vector<std::pair<double, std::size_t>> peaks;
  for (std::size_t k = 0; k < m; ++k) {
    const double v = std::norm(grid[k]);
    if (v >= std::norm(grid[(k + m - 1) % m]) && v >= std::norm(grid[(k + 1) % m])) {
      peaks.emplace_back(v, k);
    }
  }
  const std::size_t keep = std::min(peaks.size(), kSupRefinePeaks);
  std::partial_sort(peaks.begin(), peaks.begin() + static_cast<std::ptrdiff_t>(keep), peaks.end(),
                    [](const auto& x, const auto& y) { return x.first > y.first; });
  double best = peaks.empty() ? 0.0 : peaks.front().first;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(m);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double t) { return std::norm(eval_unit_circle(p, t)); };
  for (std::size_t i = 0; i < keep; ++i) {
    double lo = h * (static_cast<double>(peaks[i].second) - 1.0);
    double hi = lo + 2.0 * h;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = f(x1);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

}  // namespace gqsp
