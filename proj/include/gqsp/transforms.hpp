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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gqsp/circuit.hpp"
#include "gqsp/error.hpp"
#include "gqsp/poly.hpp"
#include "gqsp/synthesis.hpp"

namespace gqsp {

// ---------------------------------------------------------------------------
// Bessel functions and Jacobi-Anger expansions
// ---------------------------------------------------------------------------

inline constexpr double kBesselSeriesLimit = 12.0;

namespace detail {

// Ascending series sum_k (-1)^k (t/2)^{2k+n} / (k! (n+k)!).
inline double bessel_series(int n, double t) {
  const double half = 0.5 * t;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  if (term == 0.0) return 0.0;
  double sum = term;
  const double q = -half * half;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// J_0..J_nmax(t) for t > 0 by Miller's downward recurrence normalized with
// J_0 + 2 sum_k J_{2k} = 1.
inline std::vector<double> bessel_miller(int nmax, double t) {
  const double top = std::max(static_cast<double>(nmax), t);
  int start = static_cast<int>(top + 20.0 + std::sqrt(40.0 * top));
  start += start % 2;
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[static_cast<std::size_t>(start)] = 1e-300;
  for (int k = start; k >= 1; --k) {
    j[static_cast<std::size_t>(k - 1)] = 2.0 * k / t * j[static_cast<std::size_t>(k)] -
                                         j[static_cast<std::size_t>(k + 1)];
    if (std::abs(j[static_cast<std::size_t>(k - 1)]) > 1e250) {
      for (int i = k - 1; i <= start; ++i) j[static_cast<std::size_t>(i)] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[static_cast<std::size_t>(k)];
  j.resize(static_cast<std::size_t>(nmax) + 1);
  for (auto& v : j) v /= norm;
  return j;
}

}  // namespace detail

/// J_0(t) .. J_nmax(t).
inline std::vector<double> bessel_j_sequence(int nmax, double t) {
  require(nmax >= 0, "bessel_j_sequence: negative order");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  const double at = std::abs(t);
  if (at <= kBesselSeriesLimit) {
    for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = detail::bessel_series(n, at);
  } else {
    out = detail::bessel_miller(nmax, at);
  }
  if (t < 0.0) {
    for (int n = 1; n <= nmax; n += 2) out[static_cast<std::size_t>(n)] = -out[static_cast<std::size_t>(n)];
  }
  return out;
}

/// Bessel function of the first kind J_n(t), n >= 0, |t| <= 1e3.
inline double bessel_j(int n, double t) {
  require(n >= 0, "bessel_j: negative order");
  return bessel_j_sequence(n, t)[static_cast<std::size_t>(n)];
}

/// Smallest n' >= ceil(|t|) with 2 sum_{n > n'} |J_n(t)| < eps, by explicit
/// summation of the tail.
inline int truncation_order(double t, double eps) {
  require(eps > 0.0, "truncation_order: eps must be positive");
  const int base = static_cast<int>(std::ceil(std::abs(t)));
  int nmax = base + 32;
  for (;;) {
    const auto j = bessel_j_sequence(nmax, t);
    // Past |t| the terms decay monotonically; stop once they are negligible.
    if (std::abs(j[static_cast<std::size_t>(nmax)]) < eps * 1e-3) {
      double tail = 0.0;
      int order = nmax;
      for (int n = nmax; n > base; --n) {
        tail += 2.0 * std::abs(j[static_cast<std::size_t>(n)]);
        if (tail >= eps) break;
        order = n - 1;
      }
      return std::max(order, base);
    }
    nmax *= 2;
  }
}

namespace detail {

inline cplx i_pow(int n) {
  static constexpr double re[] = {1.0, 0.0, -1.0, 0.0};
  static constexpr double im[] = {0.0, 1.0, 0.0, -1.0};
  const int r = ((n % 4) + 4) % 4;
  return {re[r], im[r]};
}

inline LaurentPoly jacobi_anger(double t, double eps, bool cosine) {
  const int order = truncation_order(t, eps);
  const auto j = bessel_j_sequence(order, t);
  CoeffVector c(2 * static_cast<std::size_t>(order) + 1);
  for (int n = -order; n <= order; ++n) {
    const int a = std::abs(n);
    double jn = j[static_cast<std::size_t>(a)];
    if (n < 0 && (a % 2 == 1)) jn = -jn;  // J_{-n} = (-1)^n J_n
    c[static_cast<std::size_t>(n + order)] = cosine ? i_pow(n) * jn : cplx(jn);
  }
  return LaurentPoly(std::move(c), -order);
}

}  // namespace detail

/// Truncated expansion of e^{i t cos(theta)} = sum_n i^n J_n(t) e^{i n theta}.
inline LaurentPoly jacobi_anger_cos(double t, double eps) {
  return detail::jacobi_anger(t, eps, true);
}

/// Truncated expansion of e^{i t sin(theta)} = sum_n J_n(t) e^{i n theta}.
inline LaurentPoly jacobi_anger_sin(double t, double eps) {
  return detail::jacobi_anger(t, eps, false);
}

// ---------------------------------------------------------------------------
// Fourier-series fitting in the basis e^{i pi m x / 2}
// ---------------------------------------------------------------------------

struct FourierFitConfig {
  int M = 20;
  double delta = 0.25;
  std::size_t grid_size = 0;  // 0: 8 (2M + 1)
  double target_tol = 1e-6;
};

struct FourierFit {
  LaurentPoly coeffs;  // c_m at degree m, m in [-M, M]
  double max_residual = 0.0;
  bool within_target = false;
};

inline cplx eval_fourier_series(const LaurentPoly& c, double x) {
  return eval_unit_circle(c, 0.5 * std::numbers::pi * x);
}

/// Least-squares coefficients on a uniform grid over [-1 + delta, 1 - delta].
/// The basis is badly conditioned on a sub-interval of its period, so the
/// solve is Tikhonov-filtered through the SVD.
inline FourierFit fit_fourier_series(const std::function<cplx(double)>& f,
                                     const FourierFitConfig& cfg) {
  require(cfg.M >= 0, "fit_fourier_series: M must be non-negative");
  require(cfg.delta > 0.0 && cfg.delta < 1.0, "fit_fourier_series: delta must lie in (0, 1)");
  const std::size_t cols = 2 * static_cast<std::size_t>(cfg.M) + 1;
  const std::size_t rows = cfg.grid_size == 0 ? 8 * cols : cfg.grid_size;
  require(rows >= cols, "fit_fourier_series: underdetermined (grid_size < 2M + 1)");
  require(rows >= 2, "fit_fourier_series: grid_size must be at least 2");

  const double lo = -1.0 + cfg.delta;
  const double hi = 1.0 - cfg.delta;
  Matrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  Vector y(static_cast<Eigen::Index>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    const double x = lo + (hi - lo) * static_cast<double>(r) / static_cast<double>(rows - 1);
    y(static_cast<Eigen::Index>(r)) = f(x);
    for (std::size_t c = 0; c < cols; ++c) {
      const double m = static_cast<double>(c) - cfg.M;
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          std::polar(1.0, 0.5 * std::numbers::pi * m * x);
    }
  }

  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double mu = 1e-13 * sv(0);
  Vector uty = svd.matrixU().adjoint() * y;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double s = sv(i);
    uty(i) *= s / (s * s + mu * mu);
  }
  const Vector x = svd.matrixV() * uty;

  FourierFit out;
  out.coeffs = LaurentPoly(CoeffVector(x.data(), x.data() + x.size()), -cfg.M);
  out.max_residual = (a * x - y).cwiseAbs().maxCoeff();
  out.within_target = out.max_residual <= cfg.target_tol;
  return out;
}

/// Test functions: "const1", "exp-arcsin:<t>" = e^{i t arcsin x},
/// "exp-sqrt:<t>" = e^{i t sqrt(x + 1)}.
inline std::function<cplx(double)> named_fit_function(const std::string& name) {
  auto param = [&](const std::string& prefix) {
    try {
      return std::stod(name.substr(prefix.size()));
    } catch (const std::exception&) {
      fail(ErrorKind::kInvalidArgument, "bad parameter in function name '" + name + "'");
    }
  };
  if (name == "const1") return [](double) { return cplx(1.0); };
  if (name.rfind("exp-arcsin:", 0) == 0) {
    const double t = param("exp-arcsin:");
    return [t](double x) { return std::polar(1.0, t * std::asin(x)); };
  }
  if (name.rfind("exp-sqrt:", 0) == 0) {
    const double t = param("exp-sqrt:");
    return [t](double x) { return std::polar(1.0, t * std::sqrt(x + 1.0)); };
  }
  fail(ErrorKind::kInvalidArgument, "unknown function '" + name + "'");
}

// ---------------------------------------------------------------------------
// Root-of-unity operator, diagonal and circulant synthesis
// ---------------------------------------------------------------------------

/// One phase gate per qubit; qubit j (bit j of the basis index) gets
/// 2 pi 2^j / N.
struct PhaseGateList {
  std::vector<double> phases;

  std::size_t dimension() const { return std::size_t{1} << phases.size(); }
};

inline PhaseGateList synth_root_of_unity_plan(std::size_t n_qubits) {
  require(n_qubits >= 1 && n_qubits < 31, "synth_root_of_unity_plan: need 1 <= n_qubits < 31");
  const double n = static_cast<double>(std::size_t{1} << n_qubits);
  PhaseGateList out;
  for (std::size_t j = 0; j < n_qubits; ++j) {
    out.phases.push_back(2.0 * std::numbers::pi * static_cast<double>(std::size_t{1} << j) / n);
  }
  return out;
}

/// Diagonal of the tensor product of the phase gates.
inline Vector phase_gate_diagonal(const PhaseGateList& gates) {
  const std::size_t n = gates.dimension();
  Vector diag(static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    cplx v = 1.0;
    for (std::size_t j = 0; j < gates.phases.size(); ++j) {
      if ((x >> j) & 1U) v *= std::polar(1.0, gates.phases[j]);
    }
    diag(static_cast<Eigen::Index>(x)) = v;
  }
  return diag;
}

/// U_omega = sum_j omega_N^j |j><j|, omega_N = e^{2 pi i / N}.
inline Matrix root_of_unity_matrix(std::size_t n) {
  Vector diag(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    diag(static_cast<Eigen::Index>(j)) =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
  }
  return diag.asDiagonal();
}

inline bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

struct DiagonalSynthesis {
  LaurentSynthesis synthesis;
  std::size_t n_qubits = 0;

  std::size_t dimension() const { return std::size_t{1} << n_qubits; }
  double scale() const { return synthesis.scale; }
  /// The signal operator the plan expects.
  Matrix signal_operator() const { return root_of_unity_matrix(dimension()); }
};

/// Plan whose top-left block, with U_omega as signal, is
/// diag(P(omega_N^j)) / scale.
inline DiagonalSynthesis synth_diagonal(const LaurentPoly& p, std::size_t n_qubits,
                                        const SynthesisOptions& opts = {}) {
  require(n_qubits >= 1 && n_qubits < 31, "synth_diagonal: need 1 <= n_qubits < 31");
  const std::size_t n = std::size_t{1} << n_qubits;
  require(p.span() <= n - 1, "synth_diagonal: degree span exceeds N - 1");
  return {synthesize_laurent(p, opts), n_qubits};
}

/// P = sum_j |j + 1 mod N><j|.
inline Matrix cyclic_permutation_matrix(std::size_t n) {
  require(n >= 2, "cyclic_permutation_matrix: N must be >= 2");
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    p(static_cast<Eigen::Index>((j + 1) % n), static_cast<Eigen::Index>(j)) = 1.0;
  }
  return p;
}

/// F_{kj} = e^{sign * 2 pi i jk / N} / sqrt(N).
inline Matrix dft_matrix(std::size_t n, int sign) {
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix f(ni, ni);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) /
                         static_cast<double>(n);
      f(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = std::polar(norm, ang);
    }
  }
  return f;
}

/// ||F^dagger U_omega F - P||_F for the DFT with the given exponent sign.
inline double diagonalization_error(std::size_t n, int sign) {
  const Matrix f = dft_matrix(n, sign);
  return (f.adjoint() * root_of_unity_matrix(n) * f - cyclic_permutation_matrix(n)).norm();
}

/// Exponent sign of the DFT F for which P = F^dagger U_omega F, picked by
/// checking both conventions numerically.
inline int qft_sign_for_permutation(std::size_t n) {
  const double plus = diagonalization_error(n, +1);
  const double minus = diagonalization_error(n, -1);
  const int sign = plus <= minus ? +1 : -1;
  if (std::min(plus, minus) > 1e-10) {
    fail(ErrorKind::kNumericalDegeneracy, "no DFT convention diagonalizes the cyclic shift");
  }
  return sign;
}

struct CirculantSpec {
  std::size_t n = 0;
  LaurentPoly filter;  // c_k at degree k; C = sum_k c_k P^k

  void validate() const {
    require(n >= 2 && is_power_of_two(n), "CirculantSpec: N must be a power of two >= 2");
    require(filter.span() <= n - 1, "CirculantSpec: filter span exceeds N - 1");
  }
};

/// DFT basis change, GQSP plan over U_omega, inverse DFT basis change.
struct CirculantSynthesis {
  DiagonalSynthesis diagonal;
  int dft_sign = +1;

  std::size_t dimension() const { return diagonal.dimension(); }
  double scale() const { return diagonal.scale(); }
  Matrix dft() const { return dft_matrix(dimension(), dft_sign); }
};

inline CirculantSynthesis synth_circulant(const CirculantSpec& spec,
                                          const SynthesisOptions& opts = {}) {
  spec.validate();
  std::size_t n_qubits = 0;
  while ((std::size_t{1} << n_qubits) < spec.n) ++n_qubits;
  CirculantSynthesis out;
  out.dft_sign = qft_sign_for_permutation(spec.n);
  out.diagonal = synth_diagonal(spec.filter, n_qubits, opts);
  return out;
}

/// The N x N operator the composite circuit applies to the system when the
/// ancilla starts and is post-selected in |0>: C / scale.
inline Matrix simulate_circulant(const CirculantSynthesis& s) {
  const Matrix f = s.dft();
  const auto block = simulate(s.diagonal.synthesis.plan, s.diagonal.signal_operator());
  return f.adjoint() * block.top_left * f;
}

/// C |psi> / scale through state-vector simulation of the composite circuit.
inline Vector apply_circulant(const CirculantSynthesis& s, const Vector& psi) {
  const auto n = static_cast<Eigen::Index>(s.dimension());
  require(psi.size() == n, "apply_circulant: state dimension mismatch");
  const double norm = psi.norm();
  require(norm > 0.0, "apply_circulant: zero state");
  const Matrix f = s.dft();
  Vector full = Vector::Zero(2 * n);
  full.head(n) = f * (psi / norm);
  const Vector out = apply_to_state(s.diagonal.synthesis.plan, s.diagonal.signal_operator(), full);
  return norm * (f.adjoint() * out.head(n));
}

/// sum_k c_k P^k assembled from explicit permutation powers.
inline Matrix circulant_matrix(const LaurentPoly& filter, std::size_t n) {
  const Matrix p = cyclic_permutation_matrix(n);
  return evaluate_on_matrix(filter, p);
}

/// (x * c)_m = sum_k c_k x_{(m - k) mod N}, by direct double loop.
inline Vector circular_convolve_bruteforce(const Vector& x, const LaurentPoly& c) {
  const auto n = x.size();
  require(n > 0, "circular_convolve_bruteforce: empty input");
  Vector out = Vector::Zero(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (std::size_t j = 0; j < c.coeffs().size(); ++j) {
      const long long k = c.min_degree() + static_cast<long long>(j);
      const long long idx = (((m - k) % n) + n) % n;
      out(m) += c.coeffs()[j] * x(static_cast<Eigen::Index>(idx));
    }
  }
  return out;
}

}  // namespace gqsp
