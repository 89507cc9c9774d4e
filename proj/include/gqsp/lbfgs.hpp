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
#include <deque>
#include <span>
#include <vector>

namespace gqsp {

struct LbfgsOptions {
  int memory = 10;
  int max_iters = 1000;
  double f_tol = 0.0;   // converged once f <= f_tol
  double g_tol = 0.0;   // stationary once ||g|| <= g_tol
  double armijo = 1e-4;
};

struct LbfgsResult {
  double f = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

// Complex vectors are treated as real vectors of twice the length.
inline double real_dot(std::span<const std::complex<double>> x,
                       std::span<const std::complex<double>> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
  }
  return s;
}

}  // namespace detail

/// Limited-memory BFGS with a backtracking (Armijo) line search over complex
/// parameters viewed as pairs of reals.
///
/// `Problem` provides `double value(const std::vector<cplx>&)` and
/// `void gradient(std::vector<cplx>&)`, the latter returning the gradient at
/// the point of the most recent `value` call.
template <class Problem>
LbfgsResult minimize_lbfgs(Problem& problem, std::vector<std::complex<double>>& x,
                           const LbfgsOptions& opts) {
  using cplx = std::complex<double>;
  using Vec = std::vector<cplx>;
  const std::size_t n = x.size();

  struct Pair {
    Vec s, y;
    double rho;
  };
  std::deque<Pair> history;

  LbfgsResult res;
  double f = problem.value(x);
  Vec g(n);
  problem.gradient(g);

  Vec dir(n), trial(n), g_new(n);
  std::vector<double> alpha;

  for (res.iterations = 0; res.iterations < opts.max_iters; ++res.iterations) {
    res.f = f;
    res.grad_norm = std::sqrt(detail::real_dot(g, g));
    if (f <= opts.f_tol) {
      res.converged = true;
      return res;
    }
    if (res.grad_norm <= opts.g_tol || !std::isfinite(f)) return res;

    // Two-loop recursion.
    dir = g;
    alpha.assign(history.size(), 0.0);
    for (std::size_t i = history.size(); i-- > 0;) {
      alpha[i] = history[i].rho * detail::real_dot(history[i].s, dir);
      for (std::size_t k = 0; k < n; ++k) dir[k] -= alpha[i] * history[i].y[k];
    }
    double gamma = 1.0;
    if (!history.empty()) {
      const auto& last = history.back();
      gamma = detail::real_dot(last.s, last.y) / detail::real_dot(last.y, last.y);
    } else {
      gamma = 1.0 / std::max(res.grad_norm, 1e-300);
      gamma *= std::max(std::sqrt(detail::real_dot(x, x)), 1e-3);
    }
    for (auto& v : dir) v *= gamma;
    for (std::size_t i = 0; i < history.size(); ++i) {
      const double beta = history[i].rho * detail::real_dot(history[i].y, dir);
      for (std::size_t k = 0; k < n; ++k) dir[k] += (alpha[i] - beta) * history[i].s[k];
    }
    for (auto& v : dir) v = -v;

    double slope = detail::real_dot(g, dir);
    if (!(slope < 0.0)) {
      history.clear();
      for (std::size_t k = 0; k < n; ++k) dir[k] = -g[k];
      slope = -res.grad_norm * res.grad_norm;
    }

    double step = 1.0;
    double f_trial = 0.0;
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = x[k] + step * dir[k];
      f_trial = problem.value(trial);
      if (std::isfinite(f_trial) && f_trial <= f + opts.armijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // Restore the evaluator state to the current iterate.
      problem.value(x);
      return res;
    }

    problem.gradient(g_new);
    Pair p{Vec(n), Vec(n), 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      p.s[k] = trial[k] - x[k];
      p.y[k] = g_new[k] - g[k];
    }
    const double sy = detail::real_dot(p.s, p.y);
    if (sy > 1e-300) {
      p.rho = 1.0 / sy;
      history.push_back(std::move(p));
      if (static_cast<int>(history.size()) > opts.memory) history.pop_front();
    }
    x.swap(trial);
    g.swap(g_new);
    f = f_trial;
  }
  res.f = f;
  res.grad_norm = std::sqrt(detail::real_dot(g, g));
  res.converged = f <= opts.f_tol;
  return res;
}

}  // namespace gqsp
