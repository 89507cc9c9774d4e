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

#include "gqsp/completion.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "gqsp/random.hpp"

namespace gqsp {
namespace {

constexpr double kPi = std::numbers::pi;

// Objective straight from its definition: naive autocorrelations, residual
// against the centered unit impulse.
double objective_oracle(const CoeffVector& a, const CoeffVector& b) {
  const std::size_t d = a.size() - 1;
  double acc = 0.0;
  for (long long lag = -static_cast<long long>(d); lag <= static_cast<long long>(d); ++lag) {
    cplx r = lag == 0 ? -1.0 : 0.0;
    for (long long n = 0; n <= static_cast<long long>(d); ++n) {
      const long long m = n - lag;
      if (m < 0 || m > static_cast<long long>(d)) continue;
      r += a[n] * std::conj(a[m]) + b[n] * std::conj(b[m]);
    }
    acc += std::norm(r);
  }
  return acc;
}

CoeffVector finite_difference_gradient(const CoeffVector& a, CoeffVector b, double h) {
  CoeffVector g(b.size());
  for (std::size_t m = 0; m < b.size(); ++m) {
    const cplx orig = b[m];
    double parts[2];
    for (int part = 0; part < 2; ++part) {
      const cplx step = part == 0 ? cplx(h, 0.0) : cplx(0.0, h);
      b[m] = orig + step;
      const double fp = objective_oracle(a, b);
      b[m] = orig - step;
      const double fm = objective_oracle(a, b);
      parts[part] = (fp - fm) / (2.0 * h);
    }
    b[m] = orig;
    g[m] = cplx(parts[0], parts[1]);
  }
  return g;
}

double max_q_sq_error(const CoeffVector& a, const CoeffVector& b, std::size_t m) {
  // | |Q|^2 - (1 - |P|^2) | pointwise.
  const auto pg = eval_grid(LaurentPoly(a), m);
  const auto qg = eval_grid(LaurentPoly(b), m);
  double worst = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    worst = std::max(worst, std::abs(std::norm(qg[k]) - (1.0 - std::norm(pg[k]))));
  }
  return worst;
}

CoeffVector random_complex(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  CoeffVector c(n);
  for (auto& v : c) v = cplx(normal(rng), normal(rng));
  return c;
}

TEST(CompletionObjective, Examples) {
  EXPECT_DOUBLE_EQ(completion_objective(CoeffVector{1.0}, CoeffVector{0.0}), 0.0);
  const CoeffVector a{0.5, 0.5}, b{-0.5, 0.5};
  EXPECT_NEAR(objective_oracle(a, b), 0.0, 1e-30);
  EXPECT_NEAR(completion_objective(a, b), 0.0, 1e-30);
  EXPECT_NEAR(completion_objective(CoeffVector{1.0}, CoeffVector{1.0}), 1.0, 1e-15);
}

TEST(CompletionObjective, LengthMismatchThrows) {
  EXPECT_THROW(completion_objective(CoeffVector{1.0, 0.0}, CoeffVector{0.0}), Error);
  EXPECT_THROW(completion_gradient(CoeffVector{1.0}, CoeffVector{0.0, 1.0}), Error);
  EXPECT_THROW(completion_objective(CoeffVector{}, CoeffVector{}), Error);
}

TEST(CompletionObjective, MatchesNaiveDefinition) {
  std::mt19937_64 rng(21);
  for (std::size_t d : {0u, 1u, 5u, 31u, 100u}) {
    const auto a = random_complex(d + 1, rng, 0.3);
    const auto b = random_complex(d + 1, rng, 0.3);
    const double want = objective_oracle(a, b);
    EXPECT_NEAR(completion_objective(a, b), want, 1e-12 * std::max(1.0, want)) << "d=" << d;
  }
}

TEST(CompletionGradient, Examples) {
  const auto g0 = completion_gradient(CoeffVector{1.0}, CoeffVector{0.0});
  EXPECT_EQ(g0.size(), 1u);
  EXPECT_NEAR(std::abs(g0[0]), 0.0, 1e-15);

  const auto g1 = completion_gradient(CoeffVector{0.5, 0.5}, CoeffVector{-0.5, 0.5});
  double norm = 0.0;
  for (const auto& v : g1) norm += std::norm(v);
  EXPECT_LT(std::sqrt(norm), 1e-10);

  const auto g2 = completion_gradient(CoeffVector{1.0}, CoeffVector{1.0});
  const auto fd = finite_difference_gradient({1.0}, {1.0}, 1e-6);
  EXPECT_NEAR(std::abs(g2[0] - fd[0]) / std::abs(fd[0]), 0.0, 1e-6);
  EXPECT_NEAR(g2[0].real(), 4.0, 1e-12);
}

TEST(CompletionGradient, MatchesCentralDifferences) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t d = rng() % 65;
    const auto a = random_complex(d + 1, rng, 0.4);
    const auto b = random_complex(d + 1, rng, 0.4);
    const auto g = completion_gradient(a, b);
    const auto fd = finite_difference_gradient(a, b, 1e-6);
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m <= d; ++m) {
      num += std::norm(g[m] - fd[m]);
      den += std::norm(fd[m]);
    }
    EXPECT_LE(std::sqrt(num / den), 1e-6) << "d=" << d;
  }
}

TEST(ValidateCompletion, Examples) {
  EXPECT_DOUBLE_EQ(validate_completion(CoeffVector{1.0}, CoeffVector{0.0}, 64), 0.0);
  EXPECT_LE(validate_completion(CoeffVector{0.5, 0.5}, CoeffVector{-0.5, 0.5}, 1024), 1e-14);
  EXPECT_NEAR(validate_completion(CoeffVector{1.0}, CoeffVector{1.0}, 64), 1.0, 1e-15);
}

TEST(CompleteViaOptimization, TrivialInput) {
  auto [b, report] = complete_via_optimization(CoeffVector{1.0});
  ASSERT_EQ(b.size(), 1u);
  EXPECT_NEAR(std::abs(b[0]), 0.0, 1e-12);
  EXPECT_LE(report.final_objective, 1e-24);
  EXPECT_TRUE(report.converged);
}

TEST(CompleteViaOptimization, HalfSumHasSineMagnitude) {
  for (bool spectral : {true, false}) {
    CompletionConfig cfg;
    cfg.spectral_start = spectral;
    auto [b, report] = complete_via_optimization(CoeffVector{0.5, 0.5}, cfg);
    ASSERT_EQ(b.size(), 2u);
    EXPECT_TRUE(report.converged) << "objective " << report.final_objective;
    for (int k = 0; k < 1024; ++k) {
      const double t = 2 * kPi * k / 1024;
      const double s = std::sin(t / 2);
      EXPECT_NEAR(std::norm(eval_unit_circle(LaurentPoly(b), t)), s * s, 1e-6);
    }
  }
}

TEST(CompleteViaOptimization, RandomDegree1024) {
  std::mt19937_64 rng(29);
  const auto p = random_admissible_poly(1024, 0.99, rng);
  auto [b, report] = complete_via_optimization(p.coeffs());
  EXPECT_EQ(b.size(), p.coeffs().size());
  EXPECT_LE(report.final_objective, 1e-10);
  EXPECT_LE(validate_completion(p.coeffs(), b, 4 * (2 * 1024 + 1)), 1e-5);
}

TEST(CompleteViaOptimization, RandomStartsAloneConvergeAtSmallDegree) {
  std::mt19937_64 rng(31);
  CompletionConfig cfg;
  cfg.spectral_start = false;
  cfg.objective_tol = 1e-20;
  for (std::size_t d : {1u, 4u, 12u}) {
    const auto p = random_admissible_poly(d, 0.9, rng);
    auto [b, report] = complete_via_optimization(p.coeffs(), cfg);
    EXPECT_TRUE(report.converged) << "d=" << d << " objective " << report.final_objective;
    EXPECT_LE(validate_completion(p.coeffs(), b, 4 * (2 * d + 1)), 1e-8);
  }
}

TEST(CompleteViaOptimization, SmallObjectiveBoundsPointwiseDeviation) {
  std::mt19937_64 rng(37);
  CompletionConfig cfg;
  cfg.spectral_start = false;
  cfg.objective_tol = 1e-12;
  for (std::size_t d : {3u, 40u, 120u}) {
    const auto p = random_admissible_poly(d, 0.95, rng);
    auto [b, report] = complete_via_optimization(p.coeffs(), cfg);
    ASSERT_LE(report.final_objective, 1e-12);
    EXPECT_LE(validate_completion(p.coeffs(), b, 4 * (2 * d + 1)), 1e-5);
  }
}

TEST(CompleteViaOptimization, InadmissibleInputThrows) {
  try {
    complete_via_optimization(CoeffVector{0.9, 0.9});
    FAIL() << "expected an admissibility error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInadmissible);
  }
}

TEST(CompleteViaOptimization, ConfigValidation) {
  CompletionConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(complete_via_optimization(CoeffVector{0.5}, cfg), Error);
  cfg = {};
  cfg.objective_tol = 0.0;
  EXPECT_THROW(complete_via_optimization(CoeffVector{0.5}, cfg), Error);
  cfg = {};
  cfg.max_iters = 0;
  EXPECT_THROW(complete_via_optimization(CoeffVector{0.5}, cfg), Error);
}

TEST(CompleteViaOptimization, NonConvergenceIsReportedNotThrown) {
  std::mt19937_64 rng(41);
  const auto p = random_admissible_poly(64, 0.99, rng);
  CompletionConfig cfg;
  cfg.spectral_start = false;
  cfg.max_iters = 2;
  cfg.restarts = 2;
  auto [b, report] = complete_via_optimization(p.coeffs(), cfg);
  EXPECT_FALSE(report.converged);
  EXPECT_GT(report.final_objective, cfg.objective_tol);
  EXPECT_EQ(report.restarts_used, 2);
  EXPECT_EQ(b.size(), 65u);
}

TEST(CompleteViaOptimization, DeterministicForSeedAndParallelRestartsAgree) {
  std::mt19937_64 rng(43);
  const auto p = random_admissible_poly(20, 0.9, rng);
  CompletionConfig cfg;
  cfg.spectral_start = false;
  cfg.seed = 1234;
  cfg.restarts = 3;
  const auto first = complete_via_optimization(p.coeffs(), cfg).first;
  const auto second = complete_via_optimization(p.coeffs(), cfg).first;
  EXPECT_EQ(first, second);
  cfg.parallel_restarts = true;
  auto [b, report] = complete_via_optimization(p.coeffs(), cfg);
  EXPECT_EQ(report.restarts_used, 3);
  EXPECT_LE(validate_completion(p.coeffs(), b, 4 * 41), 1e-8);
}

TEST(CompleteViaRoots, Examples) {
  const auto b0 = complete_via_roots(CoeffVector{1.0});
  ASSERT_EQ(b0.size(), 1u);
  EXPECT_EQ(b0[0], cplx(0.0));

  const auto b1 = complete_via_roots(CoeffVector{0.5, 0.5});
  ASSERT_EQ(b1.size(), 2u);
  for (int k = 0; k < 256; ++k) {
    const double t = 2 * kPi * k / 256;
    EXPECT_NEAR(std::norm(eval_unit_circle(LaurentPoly(b1), t)), std::pow(std::sin(t / 2), 2),
                1e-8);
  }

  const auto b2 = complete_via_roots(CoeffVector{0.0, 0.8});
  ASSERT_EQ(b2.size(), 2u);
  for (int k = 0; k < 64; ++k) {
    EXPECT_NEAR(std::norm(eval_unit_circle(LaurentPoly(b2), 2 * kPi * k / 64)), 0.36, 1e-12);
  }
}

TEST(CompleteViaRoots, RandomAdmissibleInputs) {
  std::mt19937_64 rng(47);
  for (std::size_t d : {1u, 2u, 7u, 16u, 32u}) {
    const auto p = random_admissible_poly(d, 0.97, rng);
    const auto b = complete_via_roots(p.coeffs());
    EXPECT_EQ(b.size(), d + 1);
    EXPECT_LE(max_q_sq_error(p.coeffs(), b, 1024), 1e-8) << "d=" << d;
  }
}

TEST(CompleteViaRoots, Errors) {
  std::mt19937_64 rng(53);
  const auto big = random_admissible_poly(33, 0.9, rng);
  try {
    complete_via_roots(big.coeffs());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnsupported);
  }
  try {
    complete_via_roots(CoeffVector{1.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInadmissible);
  }
}

TEST(CompletionPaths, MagnitudesAgree) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t d = 1 + rng() % 16;
    const auto p = random_admissible_poly(d, 0.95, rng);
    const auto b_opt = complete_via_optimization(p.coeffs()).first;
    const auto b_root = complete_via_roots(p.coeffs());
    ASSERT_EQ(b_opt.size(), b_root.size());
    const auto go = eval_grid(LaurentPoly(b_opt), 1024);
    const auto gr = eval_grid(LaurentPoly(b_root), 1024);
    for (std::size_t k = 0; k < 1024; ++k) {
      EXPECT_NEAR(std::norm(go[k]), std::norm(gr[k]), 1e-6);
    }
  }
}

TEST(SpectralFactorStart, CloseToAValidCompletion) {
  std::mt19937_64 rng(61);
  const auto p = random_admissible_poly(256, 0.9, rng);
  const auto b = spectral_factor_start(p.coeffs());
  EXPECT_EQ(b.size(), 257u);
  EXPECT_LE(completion_objective(p.coeffs(), b), 1e-12);
}

}  // namespace
}  // namespace gqsp
