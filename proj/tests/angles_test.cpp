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

#include "gqsp/angles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <array>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "gqsp/completion.hpp"
#include "gqsp/random.hpp"

namespace gqsp {
namespace {

constexpr double kPi = std::numbers::pi;

using PolyVec = std::vector<cplx>;

PolyVec add(const PolyVec& x, const PolyVec& y) {
  PolyVec out(std::max(x.size(), y.size()), cplx{0.0});
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
  return out;
}

PolyVec times(cplx s, const PolyVec& x, int shift = 0) {
  PolyVec out(x.size() + shift, cplx{0.0});
  for (std::size_t i = 0; i < x.size(); ++i) out[i + shift] = s * x[i];
  return out;
}

// First column of R_d A ... R_1 A R_0 as explicit 2x2 polynomial matrix
// products, entries of R written out by hand.
std::pair<PolyVec, PolyVec> product_oracle(const GqspAngles& a) {
  auto r = [](double th, double ph, double la) {
    return std::array<cplx, 4>{std::exp(cplx(0, la + ph)) * std::cos(th),
                               std::exp(cplx(0, ph)) * std::sin(th),
                               std::exp(cplx(0, la)) * std::sin(th), -std::cos(th)};
  };
  const auto r0 = r(a.theta[0], a.phi[0], a.lambda);
  PolyVec top{r0[0]}, bottom{r0[2]};
  for (std::size_t j = 1; j < a.theta.size(); ++j) {
    const PolyVec zt = times(1.0, top, 1);  // A multiplies the top row by z
    const auto m = r(a.theta[j], a.phi[j], 0.0);
    PolyVec nt = add(times(m[0], zt), times(m[1], bottom));
    PolyVec nb = add(times(m[2], zt), times(m[3], bottom));
    nt.resize(j + 1);
    nb.resize(j + 1);
    top = std::move(nt);
    bottom = std::move(nb);
  }
  return {top, bottom};
}

double max_diff(const LaurentPoly& x, const PolyVec& y) {
  double worst = 0.0;
  const std::size_t n = std::max(x.coeffs().size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = i < x.coeffs().size() ? x.coeffs()[i] : cplx{0.0};
    const cplx b = i < y.size() ? y[i] : cplx{0.0};
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

double max_diff(const LaurentPoly& x, const LaurentPoly& y) { return max_diff(x, y.coeffs()); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::kInvalidArgument;
}

TEST(AngleHelpers, ArgOfZeroAndWrap) {
  EXPECT_EQ(detail::arg0(cplx{0.0}), 0.0);
  EXPECT_NEAR(detail::arg0(cplx{0.0, 2.0}), kPi / 2, 1e-15);
  EXPECT_NEAR(detail::wrap_angle(3 * kPi), kPi, 1e-12);
  EXPECT_NEAR(detail::wrap_angle(-kPi), kPi, 1e-12);
  EXPECT_NEAR(detail::wrap_angle(-3 * kPi / 2), kPi / 2, 1e-12);
  EXPECT_NEAR(detail::wrap_angle(0.25), 0.25, 1e-15);
}

TEST(Reconstruct, MatchesExplicitProduct) {
  std::mt19937_64 rng(3);
  for (std::size_t d : {0u, 1u, 2u, 9u, 40u}) {
    const auto a = random_angles(d, rng);
    const auto [p, q] = reconstruct_polynomials(a);
    const auto [po, qo] = product_oracle(a);
    EXPECT_LE(max_diff(p, po), 1e-13) << "d=" << d;
    EXPECT_LE(max_diff(q, qo), 1e-13) << "d=" << d;
  }
}

TEST(Reconstruct, SatisfiesNormCondition) {
  std::mt19937_64 rng(5);
  const auto a = random_angles(30, rng);
  const auto [p, q] = reconstruct_polynomials(a);
  const auto pg = eval_grid(p, 256), qg = eval_grid(q, 256);
  for (std::size_t k = 0; k < 256; ++k) {
    EXPECT_NEAR(std::norm(pg[k]) + std::norm(qg[k]), 1.0, 1e-12);
  }
}

TEST(ComputeAngles, Identity) {
  const auto a = compute_angles(LaurentPoly({1.0}), LaurentPoly({0.0}));
  ASSERT_EQ(a.degree(), 0u);
  EXPECT_EQ(a.theta[0], 0.0);
  EXPECT_EQ(a.phi[0], 0.0);
  EXPECT_EQ(a.lambda, 0.0);
}

TEST(ComputeAngles, ConstantPair) {
  const auto a = compute_angles(LaurentPoly({0.6}), LaurentPoly({0.8}));
  EXPECT_NEAR(a.theta[0], std::atan2(0.8, 0.6), 1e-15);
  EXPECT_NEAR(a.phi[0], 0.0, 1e-15);
  EXPECT_NEAR(a.lambda, 0.0, 1e-15);
}

TEST(ComputeAngles, Monomial) {
  for (int d : {1, 2, 5}) {
    CoeffVector pc(d + 1, cplx{0.0});
    pc[d] = 1.0;
    const LaurentPoly p(pc);
    const auto q = LaurentPoly(CoeffVector(d + 1, cplx{0.0}));
    const auto a = compute_angles(p, q);
    ASSERT_EQ(a.degree(), static_cast<std::size_t>(d));
    for (int j = 0; j <= d; ++j) EXPECT_NEAR(a.theta[j], 0.0, 1e-15);
    const auto [pr, qr] = reconstruct_polynomials(a);
    EXPECT_LE(max_diff(pr, p), 1e-14);
    EXPECT_LE(max_diff(qr, q), 1e-14);
  }
}

TEST(ComputeAngles, HalfSum) {
  const LaurentPoly p({0.5, 0.5}), q({-0.5, 0.5});
  const auto a = compute_angles(p, q);
  ASSERT_EQ(a.degree(), 1u);
  EXPECT_NEAR(a.theta[0], kPi / 4, 1e-14);
  EXPECT_NEAR(a.theta[1], kPi / 4, 1e-14);
  const auto [pr, qr] = reconstruct_polynomials(a);
  EXPECT_LE(max_diff(pr, p), 1e-14);
  EXPECT_LE(max_diff(qr, q), 1e-14);
}

TEST(ComputeAngles, LowerDegreeQIsPadded) {
  // P = z, Q = 0 given as a shorter vector.
  const auto a = compute_angles(LaurentPoly({0.0, 1.0}), LaurentPoly({0.0}));
  EXPECT_EQ(a.degree(), 1u);
  const auto [pr, qr] = reconstruct_polynomials(a);
  EXPECT_LE(max_diff(pr, PolyVec{0.0, 1.0}), 1e-14);
  EXPECT_LE(max_diff(qr, PolyVec{0.0, 0.0}), 1e-14);
}

TEST(ComputeAngles, ComplexPhasesSurvive) {
  const cplx w = std::polar(1.0, 0.7);
  const LaurentPoly p({0.6 * w}), q({0.8 * std::polar(1.0, -2.0)});
  const auto a = compute_angles(p, q);
  const auto [pr, qr] = reconstruct_polynomials(a);
  EXPECT_LE(max_diff(pr, p), 1e-15);
  EXPECT_LE(max_diff(qr, q), 1e-15);
}

TEST(ComputeAngles, RoundTripRandomAngles) {
  std::mt19937_64 rng(7);
  for (std::size_t d : {1u, 2u, 8u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_angles(d, rng);
      const auto [p, q] = reconstruct_polynomials(a);
      const auto back = compute_angles(p, q);
      ASSERT_EQ(back.degree(), d);
      const auto [p2, q2] = reconstruct_polynomials(back);
      EXPECT_LE(max_diff(p2, p), 1e-10) << "d=" << d;
      EXPECT_LE(max_diff(q2, q), 1e-10) << "d=" << d;
    }
  }
}

TEST(ComputeAngles, RecoversAnglesAwayFromDegenerateValues) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> theta(0.2, 1.3);
  auto a = random_angles(6, rng);
  for (auto& t : a.theta) t = theta(rng);
  const auto [p, q] = reconstruct_polynomials(a);
  const auto back = compute_angles(p, q);
  for (std::size_t j = 0; j <= 6; ++j) {
    EXPECT_NEAR(back.theta[j], a.theta[j], 1e-10) << j;
    EXPECT_NEAR(std::abs(std::remainder(back.phi[j] - a.phi[j], 2 * kPi)), 0.0, 1e-10) << j;
  }
  EXPECT_NEAR(std::abs(std::remainder(back.lambda - a.lambda, 2 * kPi)), 0.0, 1e-10);
}

TEST(ComputeAngles, RoundTripCompletedPairs) {
  // Pairs coming out of the completion step, as in the synthesis pipeline.
  std::mt19937_64 rng(9);
  for (std::size_t d : {16u, 64u, 256u}) {
    const auto p = random_admissible_poly(d, 0.99, rng);
    const LaurentPoly q(complete_via_optimization(p.coeffs()).first);
    const auto [p2, q2] = reconstruct_polynomials(compute_angles(p, q));
    EXPECT_LE(max_diff(p2, p), 1e-10) << "d=" << d;
    EXPECT_LE(max_diff(q2, q), 1e-10) << "d=" << d;
  }
}

TEST(ComputeAngles, OutputLengthIsDegreePlusOne) {
  std::mt19937_64 rng(23);
  for (std::size_t d : {0u, 3u, 17u}) {
    const auto p = random_admissible_poly(d, 0.8, rng);
    const LaurentPoly q(complete_via_optimization(p.coeffs()).first);
    const auto a = compute_angles(p, q);
    EXPECT_EQ(a.theta.size(), d + 1);
    EXPECT_EQ(a.phi.size(), d + 1);
    for (double t : a.theta) {
      EXPECT_GE(t, 0.0);
      EXPECT_LE(t, kPi / 2);
    }
    for (double f : a.phi) {
      EXPECT_GT(f, -kPi);
      EXPECT_LE(f, kPi);
    }
  }
}

TEST(ComputeAngles, RoundTripWithExactZeroAngles) {
  // theta = 0 at interior steps zeroes out the top pair at some stages.
  std::mt19937_64 rng(11);
  auto a = random_angles(12, rng);
  a.theta[3] = 0.0;
  a.theta[7] = kPi / 2;
  a.theta[12] = 0.0;
  const auto [p, q] = reconstruct_polynomials(a);
  const auto [p2, q2] = reconstruct_polynomials(compute_angles(p, q));
  EXPECT_LE(max_diff(p2, p), 1e-12);
  EXPECT_LE(max_diff(q2, q), 1e-12);
}

TEST(ComputeAngles, RejectsPerturbedPair) {
  std::mt19937_64 rng(13);
  const auto a = random_angles(10, rng);
  auto [p, q] = reconstruct_polynomials(a);
  CoeffVector qc = q.coeffs();
  qc[4] += 1e-3;
  EXPECT_EQ(kind_of([&] { compute_angles(p, LaurentPoly(qc)); }), ErrorKind::kInvalidPair);
}

TEST(ComputeAngles, RejectsNonUnitConstantPair) {
  EXPECT_EQ(kind_of([] { compute_angles(LaurentPoly({0.5}), LaurentPoly({0.5})); }),
            ErrorKind::kInvalidPair);
}

TEST(ComputeAngles, RejectsNegativeDegrees) {
  EXPECT_EQ(kind_of([] { compute_angles(LaurentPoly({1.0}, -1), LaurentPoly({0.0})); }),
            ErrorKind::kInvalidArgument);
}

TEST(PlanCircuit, Structure) {
  std::mt19937_64 rng(17);
  const auto a0 = random_angles(0, rng);
  const auto plan0 = plan_circuit(a0);
  ASSERT_EQ(plan0.gates().size(), 1u);
  EXPECT_TRUE(std::holds_alternative<Rotation>(plan0.gates()[0]));

  const auto a = random_angles(3, rng);
  const auto plan = plan_circuit(a);
  ASSERT_EQ(plan.gates().size(), 7u);
  EXPECT_EQ(plan.degree(), 3u);
  EXPECT_EQ(plan.conjugate_signal_count(), 0u);
  EXPECT_NEAR(std::get<Rotation>(plan.gates()[0]).lambda, a.lambda, 0.0);
  for (std::size_t j = 0; j <= 3; ++j) {
    const auto& r = std::get<Rotation>(plan.gates()[2 * j]);
    EXPECT_EQ(r.theta, a.theta[j]);
    EXPECT_EQ(r.phi, a.phi[j]);
    if (j > 0) {
      EXPECT_EQ(r.lambda, 0.0);
      EXPECT_TRUE(std::holds_alternative<SignalU>(plan.gates()[2 * j - 1]));
    }
  }

  const auto neg = plan_circuit(a, 1);
  EXPECT_EQ(neg.conjugate_signal_count(), 1u);
  EXPECT_TRUE(std::holds_alternative<SignalU>(neg.gates()[1]));
  EXPECT_TRUE(std::holds_alternative<SignalU>(neg.gates()[3]));
  EXPECT_TRUE(std::holds_alternative<SignalUdg>(neg.gates()[5]));

  EXPECT_EQ(plan_circuit(a, 3).conjugate_signal_count(), 3u);
  EXPECT_THROW(plan_circuit(a, 4), Error);
}

}  // namespace
}  // namespace gqsp
