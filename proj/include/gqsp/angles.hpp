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
#include <string>
#include <utility>
#include <vector>

#include "gqsp/circuit.hpp"
#include "gqsp/error.hpp"
#include "gqsp/poly.hpp"

namespace gqsp {

/// Rotation parameters of a degree-d GQSP sequence: theta and phi hold d+1
/// entries (index j drives the j-th rotation), lambda sits on the first one.
struct GqspAngles {
  std::vector<double> theta;
  std::vector<double> phi;
  double lambda = 0.0;

  std::size_t degree() const { return theta.empty() ? 0 : theta.size() - 1; }
};

namespace detail {

/// Arg with Arg(0) := 0.
inline double arg0(cplx z) { return z == cplx{0.0} ? 0.0 : std::arg(z); }

/// Wraps into (-pi, pi].
inline double wrap_angle(double x) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double y = std::remainder(x, kTwoPi);
  if (y <= -std::numbers::pi) y += kTwoPi;
  return y;
}

}  // namespace detail

inline constexpr double kDefaultAngleTol = 1e-8;

/// Peels one degree per step off (P, Q) with the inverse of R(theta, phi, 0)
/// followed by A^dagger (drop P's constant term, Q's top term), recording
/// the angles that make the dropped entries vanish.
///
/// The norm condition makes the top pair (a_k, b_k) orthogonal in C^2 to
/// the bottom pair (a_0, b_0), so the angles can be read off either one;
/// each step uses the larger of the two. When both are below
/// tol * max|coeff| the step is an identity pad (theta = phi = 0).
///
/// Throws kInvalidPair when a dropped entry exceeds tol * max|coeff|, or
/// when the final constant pair is not of unit norm.
inline GqspAngles compute_angles(const LaurentPoly& p_in, const LaurentPoly& q_in,
                                 double tol = kDefaultAngleTol) {
  require(p_in.min_degree() == 0 && q_in.min_degree() == 0,
          "compute_angles: P and Q must start at degree 0");
  require(tol > 0.0, "compute_angles: tolerance must be positive");
  const std::size_t len = std::max(p_in.coeffs().size(), q_in.coeffs().size());
  CoeffVector p(p_in.coeffs()), q(q_in.coeffs());
  p.resize(len, cplx{0.0});
  q.resize(len, cplx{0.0});
  const std::size_t d = len - 1;

  double scale = std::max(p_in.max_abs_coeff(), q_in.max_abs_coeff());
  const double thr = tol * std::max(scale, 1e-300);

  GqspAngles out;
  out.theta.assign(d + 1, 0.0);
  out.phi.assign(d + 1, 0.0);

  for (std::size_t k = d; k >= 1; --k) {
    const double top = std::hypot(std::abs(p[k]), std::abs(q[k]));
    const double bottom = std::hypot(std::abs(p[0]), std::abs(q[0]));
    double theta = 0.0, phi = 0.0;
    if (top >= bottom && top > thr) {
      theta = std::atan2(std::abs(q[k]), std::abs(p[k]));
      phi = detail::arg0(p[k]) - detail::arg0(q[k]);
    } else if (bottom > thr) {
      theta = std::atan2(std::abs(p[0]), std::abs(q[0]));
      phi = detail::arg0(p[0]) - detail::arg0(q[0]) + std::numbers::pi;
    }
    phi = detail::wrap_angle(phi);
    out.theta[k] = theta;
    out.phi[k] = phi;

    const double c = std::cos(theta), s = std::sin(theta);
    const cplx e = std::polar(1.0, -phi);
    CoeffVector p_next(k), q_next(k);
    const cplx dropped_p = e * c * p[0] + s * q[0];
    const cplx dropped_q = e * s * p[k] - c * q[k];
    if (std::abs(dropped_p) > thr || std::abs(dropped_q) > thr) {
      fail(ErrorKind::kInvalidPair,
           "norm condition violated at degree " + std::to_string(k) +
               ": dropped entries " + std::to_string(std::abs(dropped_p)) + ", " +
               std::to_string(std::abs(dropped_q)));
    }
    for (std::size_t j = 0; j < k; ++j) {
      p_next[j] = e * c * p[j + 1] + s * q[j + 1];
      q_next[j] = e * s * p[j] - c * q[j];
    }
    p = std::move(p_next);
    q = std::move(q_next);
  }

  const double norm = std::hypot(std::abs(p[0]), std::abs(q[0]));
  if (std::abs(norm - 1.0) > tol) {
    fail(ErrorKind::kInvalidPair,
         "constant pair has norm " + std::to_string(norm) + ", expected 1");
  }
  out.theta[0] = std::atan2(std::abs(q[0]), std::abs(p[0]));
  out.phi[0] = detail::wrap_angle(detail::arg0(p[0]) - detail::arg0(q[0]));
  out.lambda = detail::wrap_angle(detail::arg0(q[0]));
  return out;
}

/// Forward recursion: P <- e^{i phi}(cos(theta) z P + sin(theta) Q),
/// Q <- sin(theta) z P - cos(theta) Q, starting from the first column of
/// R(theta_0, phi_0, lambda).
inline std::pair<LaurentPoly, LaurentPoly> reconstruct_polynomials(const GqspAngles& angles) {
  require(!angles.theta.empty() && angles.theta.size() == angles.phi.size(),
          "reconstruct_polynomials: theta and phi must have equal non-zero length");
  CoeffVector p{std::polar(std::cos(angles.theta[0]), angles.lambda + angles.phi[0])};
  CoeffVector q{std::polar(std::sin(angles.theta[0]), angles.lambda)};
  for (std::size_t j = 1; j < angles.theta.size(); ++j) {
    const double c = std::cos(angles.theta[j]), s = std::sin(angles.theta[j]);
    const cplx e = std::polar(1.0, angles.phi[j]);
    CoeffVector p_next(j + 1, cplx{0.0}), q_next(j + 1, cplx{0.0});
    for (std::size_t i = 0; i < j; ++i) {
      // z P contributes at i + 1, Q at i.
      p_next[i + 1] += e * c * p[i];
      p_next[i] += e * s * q[i];
      q_next[i + 1] += s * p[i];
      q_next[i] -= c * q[i];
    }
    p = std::move(p_next);
    q = std::move(q_next);
  }
  return {LaurentPoly(std::move(p)), LaurentPoly(std::move(q))};
}

/// R_0, then d (signal, rotation) pairs; the last k_negative signal slots
/// use A', which realizes z^{-k_negative} P(z) with the same angles.
inline CircuitPlan plan_circuit(const GqspAngles& angles, std::size_t k_negative = 0) {
  require(!angles.theta.empty() && angles.theta.size() == angles.phi.size(),
          "plan_circuit: theta and phi must have equal non-zero length");
  const std::size_t d = angles.degree();
  require(k_negative <= d, "plan_circuit: k_negative exceeds the degree");
  std::vector<Gate> gates;
  gates.reserve(2 * d + 1);
  gates.push_back(Rotation{angles.theta[0], angles.phi[0], angles.lambda});
  for (std::size_t j = 1; j <= d; ++j) {
    if (j + k_negative > d) {
      gates.push_back(SignalUdg{});
    } else {
      gates.push_back(SignalU{});
    }
    gates.push_back(Rotation{angles.theta[j], angles.phi[j], 0.0});
  }
  return CircuitPlan(std::move(gates));
}

}  // namespace gqsp
