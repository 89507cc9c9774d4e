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
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gqsp/error.hpp"
#include "gqsp/fft.hpp"
#include "gqsp/lbfgs.hpp"
#include "gqsp/poly.hpp"

namespace gqsp {

enum class InitScaleMode { kNormComplement, kFixed };

struct CompletionConfig {
  int max_iters = 20000;        // per restart
  double objective_tol = 1e-24;
  double grad_tol = 1e-30;
  int restarts = 4;
  std::uint64_t seed = 0;
  InitScaleMode init_scale_mode = InitScaleMode::kNormComplement;
  // Restart 0 starts from the cepstral spectral factor of 1 - |P|^2; later
  // restarts start from random points.
  bool spectral_start = true;
  bool parallel_restarts = false;

  void validate() const {
    require(max_iters >= 1, "CompletionConfig: max_iters must be >= 1");
    require(objective_tol > 0.0 && grad_tol > 0.0,
            "CompletionConfig: tolerances must be positive");
    require(restarts >= 1, "CompletionConfig: restarts must be >= 1");
  }
};

struct CompletionReport {
  double final_objective = 0.0;
  int iterations = 0;  // summed over restarts
  double grad_norm = 0.0;
  double wall_time = 0.0;  // seconds
  int restarts_used = 0;
  bool converged = false;
};

/// Admissibility margin on the grid estimate of sup |P|^2.
inline constexpr double kAdmissibilitySlack = 1e-9;

/// Evaluates ||a*rev(a)^* + b*rev(b)^* - delta||^2 and its gradient in b.
///
/// By Parseval, with n >= 2d+1 the lag residual r_k satisfies
///   sum_k |r_k|^2 = (1/n) sum_j (|P(w_j)|^2 + |Q(w_j)|^2 - 1)^2
/// on the n-th roots of unity w_j, so one FFT of b gives the value. The
/// gradient packs d/dRe(b_m) + i d/dIm(b_m) = 4 (r * b)_m, recovered with a
/// second FFT of the residual times Q on the same grid.
class CompletionObjective {
 public:
  explicit CompletionObjective(std::span<const cplx> a)
      : degree_(checked_degree(a)),
        n_(fft::next_pow2(2 * degree_ + 1)),
        p_sq_(n_),
        q_grid_(n_),
        work_(n_) {
    CoeffVector grid(n_, cplx{0.0});
    std::copy(a.begin(), a.end(), grid.begin());
    fft::transform(grid, fft::Direction::kBackward);
    for (std::size_t j = 0; j < n_; ++j) p_sq_[j] = std::norm(grid[j]);
  }

  std::size_t size() const { return degree_ + 1; }
  std::size_t grid_size() const { return n_; }

  double value(const CoeffVector& b) {
    require(b.size() == degree_ + 1, "completion objective: length mismatch");
    std::fill(q_grid_.begin(), q_grid_.end(), cplx{0.0});
    std::copy(b.begin(), b.end(), q_grid_.begin());
    fft::transform(q_grid_, fft::Direction::kBackward);
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double dev = p_sq_[j] + std::norm(q_grid_[j]) - 1.0;
      work_[j] = dev;
      acc += dev * dev;
    }
    return acc / static_cast<double>(n_);
  }

  /// Gradient at the argument of the last value() call.
  void gradient(CoeffVector& g) {
    for (std::size_t j = 0; j < n_; ++j) work_[j] = work_[j].real() * q_grid_[j];
    fft::transform(work_, fft::Direction::kForward);
    g.resize(degree_ + 1);
    const double scale = 4.0 / static_cast<double>(n_);
    for (std::size_t m = 0; m <= degree_; ++m) g[m] = work_[m] * scale;
  }

 private:
  static std::size_t checked_degree(std::span<const cplx> a) {
    require(!a.empty(), "CompletionObjective: empty coefficient vector");
    return a.size() - 1;
  }

  std::size_t degree_;
  std::size_t n_;
  std::vector<double> p_sq_;
  fft::AlignedBuffer q_grid_;
  fft::AlignedBuffer work_;  // residual (real part), then residual * Q
};

inline double completion_objective(std::span<const cplx> a, std::span<const cplx> b) {
  require(!a.empty() && a.size() == b.size(), "completion_objective: length mismatch");
  CompletionObjective obj(a);
  return obj.value(CoeffVector(b.begin(), b.end()));
}

inline CoeffVector completion_gradient(std::span<const cplx> a, std::span<const cplx> b) {
  require(!a.empty() && a.size() == b.size(), "completion_gradient: length mismatch");
  CompletionObjective obj(a);
  obj.value(CoeffVector(b.begin(), b.end()));
  CoeffVector g;
  obj.gradient(g);
  return g;
}

/// max_k | |P(w_k)|^2 + |Q(w_k)|^2 - 1 | on the m-th roots of unity.
inline double validate_completion(const LaurentPoly& p, const LaurentPoly& q, std::size_t m) {
  const auto pg = eval_grid(p, m);
  const auto qg = eval_grid(q, m);
  double worst = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    worst = std::max(worst, std::abs(std::norm(pg[k]) + std::norm(qg[k]) - 1.0));
  }
  return worst;
}

inline double validate_completion(std::span<const cplx> a, std::span<const cplx> b,
                                  std::size_t m) {
  return validate_completion(LaurentPoly(CoeffVector(a.begin(), a.end())),
                             LaurentPoly(CoeffVector(b.begin(), b.end())), m);
}

inline void check_admissible(const LaurentPoly& p) {
  const double sup = sup_norm_sq(p);
  if (sup > 1.0 + kAdmissibilitySlack) {
    fail(ErrorKind::kInadmissible,
         "polynomial exceeds unit modulus on the circle: sup|P|^2 = " + std::to_string(sup));
  }
}

/// Approximate complementary polynomial from the cepstrum of H = 1 - |P|^2
/// (Kolmogorov's spectral factorization) on an oversampled grid: the causal
/// half of log H, exponentiated, has modulus sqrt(H) on the circle and is
/// zero-free inside the disk. Truncated to the degree of P.
///
/// Accuracy is limited by how close the roots of H sit to the circle
/// relative to the grid; the result is a starting point, not a solution.
inline CoeffVector spectral_factor_start(std::span<const cplx> a, std::size_t oversample = 16) {
  require(!a.empty(), "spectral_factor_start: empty input");
  const std::size_t m = std::max<std::size_t>(64, fft::next_pow2(oversample * a.size()));
  CoeffVector g(m, cplx{0.0});
  std::copy(a.begin(), a.end(), g.begin());
  fft::transform(g, fft::Direction::kBackward);
  // Zeros of H on the circle make log H singular; clamp them.
  constexpr double kFloor = 1e-30;
  for (auto& v : g) v = std::log(std::max(1.0 - std::norm(v), kFloor));
  fft::transform(g, fft::Direction::kForward);
  const double inv_m = 1.0 / static_cast<double>(m);
  g[0] *= 0.5 * inv_m;
  g[m / 2] *= 0.5 * inv_m;
  for (std::size_t k = 1; k < m / 2; ++k) g[k] *= inv_m;
  std::fill(g.begin() + static_cast<std::ptrdiff_t>(m / 2 + 1), g.end(), cplx{0.0});
  fft::transform(g, fft::Direction::kBackward);
  for (auto& v : g) v = std::exp(v);
  fft::transform(g, fft::Direction::kForward);
  CoeffVector b(a.size());
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = g[k] * inv_m;
  return b;
}

namespace detail {

inline CoeffVector random_start(std::span<const cplx> a, const CompletionConfig& cfg,
                                int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  CoeffVector b(a.size());
  for (auto& c : b) c = cplx(normal(rng), normal(rng));
  double target_sq = 1.0;
  if (cfg.init_scale_mode == InitScaleMode::kNormComplement) {
    double a_sq = 0.0;
    for (const auto& c : a) a_sq += std::norm(c);
    target_sq = std::max(0.0, 1.0 - a_sq);
  }
  double b_sq = 0.0;
  for (const auto& c : b) b_sq += std::norm(c);
  const double s = b_sq > 0.0 ? std::sqrt(target_sq / b_sq) : 0.0;
  for (auto& c : b) c *= s;
  return b;
}

struct RestartOutcome {
  CoeffVector b;
  LbfgsResult result;
};

inline RestartOutcome run_restart(std::span<const cplx> a, const CompletionConfig& cfg,
                                  int restart) {
  CompletionObjective objective(a);
  RestartOutcome out{{}, {}};
  if (restart == 0 && cfg.spectral_start) {
    out.b = spectral_factor_start(a);
    const double f0 = objective.value(out.b);
    if (!std::isfinite(f0)) out.b = random_start(a, cfg, restart);
  } else {
    out.b = random_start(a, cfg, restart);
  }
  LbfgsOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.f_tol = cfg.objective_tol;
  opts.g_tol = cfg.grad_tol;
  out.result = minimize_lbfgs(objective, out.b, opts);
  return out;
}

}  // namespace detail

/// Finds b with |P|^2 + |Q|^2 = 1 on the unit circle by minimizing the
/// autocorrelation residual. Non-convergence is reported, not thrown.
inline std::pair<CoeffVector, CompletionReport> complete_via_optimization(
    std::span<const cplx> a, const CompletionConfig& cfg = {}) {
  cfg.validate();
  require(!a.empty(), "complete_via_optimization: empty input");
  check_admissible(LaurentPoly(CoeffVector(a.begin(), a.end())));

  const auto start = std::chrono::steady_clock::now();
  CompletionReport report;
  detail::RestartOutcome best;
  best.result.f = std::numeric_limits<double>::infinity();

  auto consider = [&](detail::RestartOutcome&& r) {
    report.iterations += r.result.iterations;
    ++report.restarts_used;
    if (r.result.f < best.result.f) best = std::move(r);
  };

  if (cfg.parallel_restarts && cfg.restarts > 1) {
    std::vector<std::future<detail::RestartOutcome>> jobs;
    for (int r = 0; r < cfg.restarts; ++r) {
      jobs.push_back(std::async(std::launch::async,
                                [&, r] { return detail::run_restart(a, cfg, r); }));
    }
    // Lowest index wins ties, so results do not depend on scheduling.
    for (auto& job : jobs) consider(job.get());
  } else {
    for (int r = 0; r < cfg.restarts; ++r) {
      consider(detail::run_restart(a, cfg, r));
      if (best.result.converged) break;
    }
  }

  report.final_objective = best.result.f;
  report.grad_norm = best.result.grad_norm;
  report.converged = best.result.f <= cfg.objective_tol;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(best.b), report};
}

/// Largest degree accepted by complete_via_roots.
inline constexpr std::size_t kRootOracleMaxDegree = 32;

namespace detail {

inline cplx horner(std::span<const cplx> ascending, cplx z) {
  cplx acc = 0.0;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * z + *it;
  return acc;
}

inline cplx horner_derivative(std::span<const cplx> ascending, cplx z) {
  cplx acc = 0.0;
  for (std::size_t k = ascending.size(); k-- > 1;) {
    acc = acc * z + static_cast<double>(k) * ascending[k];
  }
  return acc;
}

/// Roots of sum_k c_k z^k (c non-empty, nonzero leading coefficient) from the
/// companion matrix, each polished by a few Newton steps.
inline CoeffVector polynomial_roots(std::span<const cplx> c) {
  const std::size_t deg = c.size() - 1;
  if (deg == 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (std::size_t i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::kNumericalDegeneracy, "companion eigenvalue solver failed");
  }
  CoeffVector roots(solver.eigenvalues().data(), solver.eigenvalues().data() + deg);
  for (auto& z : roots) {
    for (int it = 0; it < 3; ++it) {
      const cplx dp = horner_derivative(c, z);
      if (std::abs(dp) == 0.0) break;
      const cplx step = horner(c, z) / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      if (std::abs(step) > 1e-3 * std::max(1.0, std::abs(z))) break;
      z -= step;
    }
  }
  return roots;
}

}  // namespace detail

/// Log-modulus threshold below which a root of R is treated as lying on the
/// unit circle.
inline constexpr double kUnitRootLogTol = 1e-7;

/// Constructs Q by factoring R(z) = z^d (1 - |P(z)|^2): roots off the circle
/// come in (w, 1/w^*) pairs and contribute their inside member; roots on the
/// circle come with even multiplicity and contribute half of it.
inline CoeffVector complete_via_roots(std::span<const cplx> a) {
  require(!a.empty(), "complete_via_roots: empty input");
  const std::size_t d = a.size() - 1;
  if (d > kRootOracleMaxDegree) {
    fail(ErrorKind::kUnsupported, "complete_via_roots: degree " + std::to_string(d) +
                                      " above oracle limit " +
                                      std::to_string(kRootOracleMaxDegree));
  }
  check_admissible(LaurentPoly(CoeffVector(a.begin(), a.end())));

  // Coefficients of R in ascending powers: lag -d..d of 1 - |P|^2.
  CoeffVector r = convolve_naive(a, reverse_conjugate(a));
  for (auto& c : r) c = -c;
  r[d] += 1.0;

  double scale = 0.0;
  for (const auto& c : r) scale = std::max(scale, std::abs(c));
  if (scale < 1e-14) return CoeffVector(d + 1, cplx{0.0});

  const double zero_tol = 1e-14 * scale;
  std::size_t lo = 0;
  while (lo < r.size() && std::abs(r[lo]) <= zero_tol) ++lo;
  std::size_t hi = r.size();
  while (hi > lo && std::abs(r[hi - 1]) <= zero_tol) --hi;
  if (lo != r.size() - hi) {
    fail(ErrorKind::kNumericalDegeneracy, "R is not self-inversive within tolerance");
  }
  const std::span<const cplx> core(r.data() + lo, hi - lo);
  const CoeffVector roots = detail::polynomial_roots(core);

  CoeffVector inside, unit;
  std::size_t outside = 0;
  for (const auto& w : roots) {
    const double lm = std::log(std::abs(w));
    if (std::abs(lm) < kUnitRootLogTol) {
      unit.push_back(w);
    } else if (lm < 0.0) {
      inside.push_back(w);
    } else {
      ++outside;
    }
  }
  if (inside.size() != outside || unit.size() % 2 != 0) {
    fail(ErrorKind::kNumericalDegeneracy,
         "cannot pair roots of R: " + std::to_string(inside.size()) + " inside, " +
             std::to_string(outside) + " outside, " + std::to_string(unit.size()) +
             " on the circle");
  }

  // Factors of Q (up to a scalar): one z per zero/infinity pair, the inside
  // member of each reciprocal pair, one root per unit-circle pair.
  CoeffVector factors = inside;
  std::vector<bool> used(unit.size(), false);
  for (std::size_t i = 0; i < unit.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t best = unit.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < unit.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(unit[i] - unit[j]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    used[best] = true;
    const cplx mid = 0.5 * (unit[i] + unit[best]);
    factors.push_back(mid / std::abs(mid));
  }

  CoeffVector q(lo, cplx{0.0});
  q.push_back(1.0);
  for (const auto& root : factors) {
    CoeffVector next(q.size() + 1, cplx{0.0});
    for (std::size_t k = 0; k < q.size(); ++k) {
      next[k + 1] += q[k];
      next[k] -= root * q[k];
    }
    q = std::move(next);
  }
  if (q.size() != d + 1) {
    fail(ErrorKind::kNumericalDegeneracy, "root construction produced wrong degree");
  }

  // Fix |scalar| at the grid point where the unscaled Q is largest.
  const LaurentPoly q_poly(q);
  const LaurentPoly p_poly(CoeffVector(a.begin(), a.end()));
  const std::size_t m = default_grid_size(q_poly);
  const auto qg = eval_grid(q_poly, m);
  const auto pg = eval_grid(p_poly, m);
  std::size_t k0 = 0;
  for (std::size_t k = 1; k < m; ++k) {
    if (std::norm(qg[k]) > std::norm(qg[k0])) k0 = k;
  }
  const double h0 = std::max(0.0, 1.0 - std::norm(pg[k0]));
  const double c = std::sqrt(h0) / std::abs(qg[k0]);
  for (auto& v : q) v *= c;
  return q;
}

}  // namespace gqsp
