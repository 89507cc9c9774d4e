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
#include <string>
#include <variant>
#include <vector>

#include "gqsp/error.hpp"
#include "gqsp/poly.hpp"

namespace gqsp {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

// Gate kinds of a GQSP sequence. The ancilla is the most significant tensor
// factor, so an operator on ancilla (x) system is a 2x2 grid of N x N blocks.

/// R(theta, phi, lambda) (x) I.
struct Rotation {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
};

/// A = |0><0| (x) U + |1><1| (x) I, i.e. U controlled on ancilla |0>.
struct SignalU {};

/// A' = |0><0| (x) I + |1><1| (x) U^dagger.
struct SignalUdg {};

using Gate = std::variant<Rotation, SignalU, SignalUdg>;

/// Gates in application order: R_0, then (signal, rotation) pairs.
class CircuitPlan {
 public:
  CircuitPlan() = default;

  explicit CircuitPlan(std::vector<Gate> gates) : gates_(std::move(gates)) { validate(); }

  const std::vector<Gate>& gates() const { return gates_; }

  /// Number of signal applications (the polynomial degree).
  std::size_t degree() const { return gates_.empty() ? 0 : gates_.size() / 2; }

  std::size_t conjugate_signal_count() const {
    std::size_t k = 0;
    for (const auto& g : gates_) k += std::holds_alternative<SignalUdg>(g) ? 1 : 0;
    return k;
  }

 private:
  void validate() const {
    if (gates_.empty() || gates_.size() % 2 == 0) {
      fail(ErrorKind::kInvalidPlan, "plan must hold 2d+1 gates starting with a rotation");
    }
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      const bool is_rotation = std::holds_alternative<Rotation>(gates_[i]);
      if (is_rotation != (i % 2 == 0)) {
        fail(ErrorKind::kInvalidPlan,
             "rotations and signal gates must alternate (gate " + std::to_string(i) + ")");
      }
      if (is_rotation) {
        const auto& r = std::get<Rotation>(gates_[i]);
        if (!std::isfinite(r.theta) || !std::isfinite(r.phi) || !std::isfinite(r.lambda)) {
          fail(ErrorKind::kInvalidPlan, "non-finite rotation angle");
        }
        if (i > 0 && r.lambda != 0.0) {
          fail(ErrorKind::kInvalidPlan, "only the first rotation may carry lambda");
        }
      }
    }
  }

  std::vector<Gate> gates_;
};

/// The four N x N blocks of a simulated sequence; top_left holds P(U),
/// bottom_left holds Q(U).
struct BlockEncoding {
  Matrix top_left, top_right, bottom_left, bottom_right;

  Matrix assembled() const {
    const auto n = top_left.rows();
    Matrix v(2 * n, 2 * n);
    v << top_left, top_right, bottom_left, bottom_right;
    return v;
  }
};

inline Matrix2 rotation_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix2 r;
  r << std::polar(c, lambda + phi), std::polar(s, phi),
       std::polar(s, lambda),       cplx(-c, 0.0);
  return r;
}

/// ||V^dagger V - I||_F
inline double unitarity_deviation(const Matrix& v) {
  return (v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).norm();
}

inline constexpr double kUnitaryTol = 1e-10;

inline void check_unitary(const Matrix& u) {
  require(u.rows() == u.cols() && u.rows() > 0, "signal operator must be square");
  require(unitarity_deviation(u) <= kUnitaryTol, "signal operator is not unitary");
}

namespace detail {

// Applies the plan to the rows of `top` (ancilla |0>) and `bottom`
// (ancilla |1>) in place; works for matrices and vectors alike.
template <class Block>
void apply_plan(const CircuitPlan& plan, const Matrix& u, const Matrix& u_dag, Block& top,
                Block& bottom) {
  for (const auto& gate : plan.gates()) {
    if (const auto* r = std::get_if<Rotation>(&gate)) {
      const Matrix2 m = rotation_matrix(r->theta, r->phi, r->lambda);
      Block new_top = m(0, 0) * top + m(0, 1) * bottom;
      bottom = (m(1, 0) * top + m(1, 1) * bottom).eval();
      top = std::move(new_top);
    } else if (std::holds_alternative<SignalU>(gate)) {
      top = (u * top).eval();
    } else {
      bottom = (u_dag * bottom).eval();
    }
  }
}

}  // namespace detail

/// Dense product of all gate matrices, O(d N^3).
inline BlockEncoding simulate(const CircuitPlan& plan, const Matrix& u) {
  check_unitary(u);
  if (plan.gates().empty()) fail(ErrorKind::kInvalidPlan, "empty plan");
  const auto n = u.rows();
  const Matrix u_dag = u.adjoint();
  // Columns of the identity, split by ancilla row block.
  Matrix top(n, 2 * n), bottom(n, 2 * n);
  top << Matrix::Identity(n, n), Matrix::Zero(n, n);
  bottom << Matrix::Zero(n, n), Matrix::Identity(n, n);
  detail::apply_plan(plan, u, u_dag, top, bottom);
  return {top.leftCols(n), top.rightCols(n), bottom.leftCols(n), bottom.rightCols(n)};
}

/// The assembled unitary applied to a length-2N state (ancilla-major).
inline Vector apply_to_state(const CircuitPlan& plan, const Matrix& u, const Vector& state) {
  check_unitary(u);
  if (plan.gates().empty()) fail(ErrorKind::kInvalidPlan, "empty plan");
  const auto n = u.rows();
  require(state.size() == 2 * n, "state dimension must be twice the signal dimension");
  require(std::abs(state.norm() - 1.0) <= 1e-10, "state must be normalized");
  const Matrix u_dag = u.adjoint();
  Vector top = state.head(n);
  Vector bottom = state.tail(n);
  detail::apply_plan(plan, u, u_dag, top, bottom);
  Vector out(2 * n);
  out << top, bottom;
  return out;
}

/// sum_n c_n U^n with U^{-k} = (U^dagger)^k.
inline Matrix evaluate_on_matrix(const LaurentPoly& p, const Matrix& u) {
  const auto n = u.rows();
  Matrix power = Matrix::Identity(n, n);
  const Matrix u_dag = u.adjoint();
  for (int k = 0; k < -p.min_degree(); ++k) power = (power * u_dag).eval();
  for (int k = 0; k < p.min_degree(); ++k) power = (power * u).eval();
  Matrix acc = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < p.coeffs().size(); ++j) {
    acc += p.coeffs()[j] * power;
    if (j + 1 < p.coeffs().size()) power = (power * u).eval();
  }
  return acc;
}

/// ||top_left - P(U)||_F / sqrt(N).
inline double verify_block(const CircuitPlan& plan, const Matrix& u, const LaurentPoly& target) {
  require(target.min_degree() >= -static_cast<int>(plan.conjugate_signal_count()),
          "target has more negative powers than conjugate signal slots");
  const auto block = simulate(plan, u);
  const double n = static_cast<double>(u.rows());
  return (block.top_left - evaluate_on_matrix(target, u)).norm() / std::sqrt(n);
}

}  // namespace gqsp
