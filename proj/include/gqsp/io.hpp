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

#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gqsp/angles.hpp"
#include "gqsp/circuit.hpp"
#include "gqsp/completion.hpp"
#include "gqsp/error.hpp"
#include "gqsp/poly.hpp"

namespace gqsp::io {

using json = nlohmann::json;

namespace detail {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ErrorKind::kInvalidArgument, std::string("missing JSON field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::kInvalidArgument, std::string("bad JSON field '") + key + "': " + e.what());
  }
}

}  // namespace detail

// Polynomial: {"min_degree": k, "coeffs": [[re, im], ...]}, ascending degree.

inline json to_json(const LaurentPoly& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back({c.real(), c.imag()});
  return {{"min_degree", p.min_degree()}, {"coeffs", std::move(coeffs)}};
}

inline LaurentPoly poly_from_json(const json& j) {
  const int min_degree = j.contains("min_degree") ? detail::field<int>(j, "min_degree") : 0;
  const auto raw = detail::field<std::vector<std::vector<double>>>(j, "coeffs");
  CoeffVector c;
  c.reserve(raw.size());
  for (const auto& pair : raw) {
    require(pair.size() == 2, "polynomial coefficients must be [re, im] pairs");
    c.emplace_back(pair[0], pair[1]);
  }
  return LaurentPoly(std::move(c), min_degree);
}

// Angles: {"theta": [...], "phi": [...], "lambda": x}.

inline json to_json(const GqspAngles& a) {
  return {{"theta", a.theta}, {"phi", a.phi}, {"lambda", a.lambda}};
}

inline GqspAngles angles_from_json(const json& j) {
  GqspAngles a;
  a.theta = detail::field<std::vector<double>>(j, "theta");
  a.phi = detail::field<std::vector<double>>(j, "phi");
  a.lambda = detail::field<double>(j, "lambda");
  require(!a.theta.empty() && a.theta.size() == a.phi.size(),
          "angles: theta and phi must have equal non-zero length");
  return a;
}

// Circuit: {"gates": [{"kind": "rotation", "theta", "phi", "lambda"} |
//                      {"kind": "signal"} | {"kind": "signal_dag"}]}.

inline json to_json(const CircuitPlan& plan) {
  json gates = json::array();
  for (const auto& g : plan.gates()) {
    if (const auto* r = std::get_if<Rotation>(&g)) {
      gates.push_back({{"kind", "rotation"}, {"theta", r->theta}, {"phi", r->phi},
                       {"lambda", r->lambda}});
    } else if (std::holds_alternative<SignalU>(g)) {
      gates.push_back({{"kind", "signal"}});
    } else {
      gates.push_back({{"kind", "signal_dag"}});
    }
  }
  return {{"gates", std::move(gates)}};
}

inline CircuitPlan circuit_from_json(const json& j) {
  const auto raw = detail::field<json>(j, "gates");
  require(raw.is_array(), "circuit: 'gates' must be an array");
  std::vector<Gate> gates;
  for (const auto& g : raw) {
    const auto kind = detail::field<std::string>(g, "kind");
    if (kind == "rotation") {
      gates.push_back(Rotation{detail::field<double>(g, "theta"), detail::field<double>(g, "phi"),
                               g.contains("lambda") ? detail::field<double>(g, "lambda") : 0.0});
    } else if (kind == "signal") {
      gates.push_back(SignalU{});
    } else if (kind == "signal_dag") {
      gates.push_back(SignalUdg{});
    } else {
      fail(ErrorKind::kInvalidArgument, "circuit: unknown gate kind '" + kind + "'");
    }
  }
  return CircuitPlan(std::move(gates));
}

inline json to_json(const CompletionReport& r) {
  return {{"final_objective", r.final_objective},
          {"iterations", r.iterations},
          {"grad_norm", r.grad_norm},
          {"wall_time_s", r.wall_time},
          {"restarts_used", r.restarts_used},
          {"converged", r.converged}};
}

// Unitary: {"n": N, "re": [[...]], "im": [[...]]}, row-major.

inline json to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> r, c;
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(r);
    im.push_back(c);
  }
  return {{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Matrix matrix_from_json(const json& j) {
  const auto n = detail::field<std::size_t>(j, "n");
  const auto re = detail::field<std::vector<std::vector<double>>>(j, "re");
  const auto im = detail::field<std::vector<std::vector<double>>>(j, "im");
  require(n > 0 && re.size() == n && im.size() == n, "matrix: row count does not match n");
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix m(ni, ni);
  for (std::size_t i = 0; i < n; ++i) {
    require(re[i].size() == n && im[i].size() == n, "matrix: column count does not match n");
    for (std::size_t k = 0; k < n; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = cplx(re[i][k], im[i][k]);
    }
  }
  return m;
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kInvalidArgument, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kInvalidArgument, "cannot parse '" + path + "': " + e.what());
  }
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace gqsp::io
