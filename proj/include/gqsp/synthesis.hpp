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
#include <string>

#include "gqsp/angles.hpp"
#include "gqsp/circuit.hpp"
#include "gqsp/completion.hpp"
#include "gqsp/error.hpp"
#include "gqsp/poly.hpp"

namespace gqsp {

struct SynthesisOptions {
  CompletionConfig completion;
  double angle_tol = kDefaultAngleTol;
  /// Extra relative margin on sup|P|^2 before normalizing. Zero keeps the
  /// scale at exactly max(sup|P|^2, 1) plus the guard.
  double headroom = 0.0;
};

/// A Laurent polynomial compiled into a GQSP sequence. The plan realizes
/// target / scale in its top-left block.
struct LaurentSynthesis {
  CircuitPlan plan;
  GqspAngles angles;
  LaurentPoly p;  // z^{k_negative} * target / scale, starting at degree 0
  LaurentPoly q;
  double scale = 1.0;
  std::size_t k_negative = 0;
  CompletionReport report;
};

inline constexpr double kScaleGuard = 1e-12;

/// Normalization c = sqrt(max(sup|P|^2 (1 + headroom), 1) + guard), with the
/// refined sup-norm.
inline double synthesis_scale(const LaurentPoly& target, double headroom = 0.0) {
  const double sup = sup_norm_sq(target) * (1.0 + headroom);
  return std::sqrt(std::max(sup, 1.0) + kScaleGuard);
}

/// Shifts a Laurent target to start at degree 0 and pads it so that the
/// number of conjugate-signal slots never exceeds the degree.
inline std::pair<LaurentPoly, std::size_t> to_nonnegative(const LaurentPoly& target) {
  const std::size_t k = target.min_degree() < 0 ? static_cast<std::size_t>(-target.min_degree()) : 0;
  const int top = target.degree() + static_cast<int>(k);
  const std::size_t len = std::max<std::size_t>(static_cast<std::size_t>(std::max(top, 0)) + 1, k + 1);
  CoeffVector c(len, cplx{0.0});
  for (std::size_t j = 0; j < target.coeffs().size(); ++j) {
    const int deg = target.min_degree() + static_cast<int>(j) + static_cast<int>(k);
    c[static_cast<std::size_t>(deg)] = target.coeffs()[j];
  }
  return {LaurentPoly(std::move(c)), k};
}

/// complete -> angles -> plan for a Laurent target.
inline LaurentSynthesis synthesize_laurent(const LaurentPoly& target,
                                           const SynthesisOptions& opts = {}) {
  LaurentSynthesis out;
  out.scale = synthesis_scale(target, opts.headroom);
  auto [shifted, k] = to_nonnegative(target);
  out.k_negative = k;
  out.p = shifted.scaled(1.0 / out.scale);
  auto [b, report] = complete_via_optimization(out.p.coeffs(), opts.completion);
  out.report = report;
  if (!report.converged) {
    fail(ErrorKind::kNonConvergence,
         "completion did not converge: objective " + std::to_string(report.final_objective));
  }
  out.q = LaurentPoly(std::move(b));
  out.angles = compute_angles(out.p, out.q, opts.angle_tol);
  out.plan = plan_circuit(out.angles, k);
  return out;
}

}  // namespace gqsp
