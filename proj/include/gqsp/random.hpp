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

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>

#include "gqsp/angles.hpp"
#include "gqsp/circuit.hpp"
#include "gqsp/poly.hpp"

namespace gqsp {

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal folded back into Q.
template <class Rng>
Matrix random_unitary(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix g(ni, ni);
  for (Eigen::Index i = 0; i < ni; ++i) {
    for (Eigen::Index j = 0; j < ni; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < ni; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline Matrix random_unitary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_unitary(n, rng);
}

/// Random complex (or real) coefficients of degree d, rescaled so that
/// sup|P| equals sup_target.
template <class Rng>
LaurentPoly random_admissible_poly(std::size_t d, double sup_target, Rng& rng,
                                   bool complex_coeffs = true) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CoeffVector c(d + 1);
  for (auto& v : c) v = cplx(normal(rng), complex_coeffs ? normal(rng) : 0.0);
  LaurentPoly p(std::move(c));
  return p.scaled(sup_target / std::sqrt(sup_norm_sq(p)));
}

/// theta uniform in [0, pi/2], phi and lambda uniform in (-pi, pi].
template <class Rng>
GqspAngles random_angles(std::size_t d, Rng& rng) {
  std::uniform_real_distribution<double> quarter(0.0, 0.5 * std::numbers::pi);
  std::uniform_real_distribution<double> full(-std::numbers::pi, std::numbers::pi);
  GqspAngles a;
  for (std::size_t j = 0; j <= d; ++j) {
    a.theta.push_back(quarter(rng));
    a.phi.push_back(full(rng));
  }
  a.lambda = full(rng);
  return a;
}

}  // namespace gqsp
