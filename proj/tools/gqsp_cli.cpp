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

// gqsp: command-line front end. Every subcommand reads and writes JSON;
// bench writes CSV. Failures print {"error", "stage", "message"} on stderr.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gqsp/gqsp.hpp"
#include "gqsp/io.hpp"
#include "gqsp/random.hpp"

namespace {

using gqsp::Error;
using gqsp::ErrorKind;
using gqsp::LaurentPoly;
using gqsp::io::json;

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kNumericalFailure = 3,
  kVerificationFailed = 4,
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonConvergence:
    case ErrorKind::kInvalidPair:
    case ErrorKind::kNumericalDegeneracy:
      return kNumericalFailure;
    case ErrorKind::kVerificationFailure:
      return kVerificationFailed;
    default:
      return kInvalidInput;
  }
}

struct Globals {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::size_t grid = 0;
  std::string output_dir;
};

// Which stage is running, for error reports.
std::string g_stage = "parse";

void report_error(std::string_view kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"stage", g_stage}, {"message", message}}.dump() << '\n';
}

/// Named outputs. With --output-dir each is written to <dir>/<name>.json;
/// otherwise a single artifact is printed as is and several as one object.
void emit(const Globals& g, const std::vector<std::pair<std::string, json>>& artifacts) {
  if (!g.output_dir.empty()) {
    std::filesystem::create_directories(g.output_dir);
    for (const auto& [name, j] : artifacts) {
      gqsp::io::write_file((std::filesystem::path(g.output_dir) / (name + ".json")).string(), j);
    }
    return;
  }
  if (artifacts.size() == 1) {
    std::cout << artifacts.front().second.dump(2) << '\n';
    return;
  }
  json all = json::object();
  for (const auto& [name, j] : artifacts) all[name] = j;
  std::cout << all.dump(2) << '\n';
}

std::string sci(double x) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(3) << x;
  return out.str();
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  gqsp::fail(ErrorKind::kInvalidArgument, "bad " + what + " '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

/// max_k |top_left(e^{it_k}) - target(e^{it_k})| with 1x1 signals on an m-grid.
double scalar_grid_error(const gqsp::CircuitPlan& plan, const LaurentPoly& target, std::size_t m) {
  gqsp::require(m >= 1, "scalar-grid size must be positive");
  double worst = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    gqsp::Matrix u(1, 1);
    u(0, 0) = std::polar(1.0, t);
    const auto block = gqsp::simulate(plan, u);
    worst = std::max(worst, std::abs(block.top_left(0, 0) - gqsp::eval_unit_circle(target, t)));
  }
  return worst;
}

/// --unitary: a matrix JSON file, random:N:seed or scalar-grid:m.
double verify_against(const std::string& spec, const gqsp::CircuitPlan& plan,
                      const LaurentPoly& target) {
  const auto parts = split(spec, ':');
  if (!parts.empty() && parts[0] == "random") {
    gqsp::require(parts.size() == 3, "expected random:N:seed");
    const auto n = parse_u64(parts[1], "dimension");
    gqsp::require(n >= 1 && n <= 64, "random unitary dimension must lie in [1, 64]");
    return gqsp::verify_block(plan, gqsp::random_unitary(n, parse_u64(parts[2], "seed")), target);
  }
  if (!parts.empty() && parts[0] == "scalar-grid") {
    gqsp::require(parts.size() == 2, "expected scalar-grid:m");
    return scalar_grid_error(plan, target, parse_u64(parts[1], "grid size"));
  }
  const gqsp::Matrix u = gqsp::io::matrix_from_json(gqsp::io::read_file(spec));
  gqsp::check_unitary(u);
  return gqsp::verify_block(plan, u, target);
}

void check_accept(double max_error, double accept_tol) {
  if (!(max_error <= accept_tol)) {
    gqsp::fail(ErrorKind::kVerificationFailure,
               "max_error " + sci(max_error) + " above accept tolerance " + sci(accept_tol));
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct BenchRow {
  std::size_t degree;
  std::string kind;
  double objective_eval_ms;
  double full_opt_ms;
  double iterations;
};

BenchRow bench_one(std::size_t d, bool complex_coeffs, int repeats, bool full_opt,
                   const gqsp::CompletionConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ (d * 0x9e3779b97f4a7c15ULL) ^ (complex_coeffs ? 1 : 0));
  const auto p = gqsp::random_admissible_poly(d, 0.99, rng, complex_coeffs);
  const auto b = gqsp::random_admissible_poly(d, 0.5, rng, complex_coeffs);
  gqsp::CompletionObjective obj(p.coeffs());
  gqsp::CoeffVector g;
  // A few evaluations per sample keep small degrees above timer resolution.
  const int inner = static_cast<int>(std::max<std::size_t>(1, (1u << 16) / (d + 1)));
  std::vector<double> eval_ms, opt_ms, iters;
  volatile double sink = 0.0;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < inner; ++i) {
      sink = sink + obj.value(b.coeffs());
      obj.gradient(g);
    }
    eval_ms.push_back(ms_since(t0) / inner);
    if (full_opt) {
      const auto t1 = std::chrono::steady_clock::now();
      const auto [q, report] = gqsp::complete_via_optimization(p.coeffs(), cfg);
      opt_ms.push_back(ms_since(t1));
      iters.push_back(report.iterations);
    }
  }
  return {d, complex_coeffs ? "complex" : "real", median(eval_ms),
          full_opt ? median(opt_ms) : 0.0, full_opt ? median(iters) : 0.0};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized quantum signal processing toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for completion restarts and random unitaries");
  app.add_option("--tol", g.tol,
                 "complete: objective tolerance; angles, pipeline, synth-*: cancellation tolerance");
  app.add_option("--grid", g.grid, "Grid size for validation and fitting (0: default)");
  app.add_option("--output-dir", g.output_dir, "Write artifacts as <dir>/<name>.json");

  gqsp::CompletionConfig completion;
  auto add_completion_flags = [&](CLI::App* sub) {
    sub->add_option("--max-iters", completion.max_iters, "L-BFGS iterations per restart");
    sub->add_option("--restarts", completion.restarts, "Completion restarts");
    sub->add_flag("--parallel-restarts", completion.parallel_restarts,
                  "Run completion restarts concurrently");
  };
  auto completion_config = [&] {
    gqsp::CompletionConfig cfg = completion;
    cfg.seed = g.seed;
    return cfg;
  };
  auto angle_tol = [&] { return g.tol.value_or(gqsp::kDefaultAngleTol); };

  // complete
  auto* complete = app.add_subcommand("complete", "Complementary polynomial Q for P");
  std::string p_path;
  bool use_oracle = false;
  complete->add_option("p", p_path, "Polynomial JSON for P")->required();
  complete->add_flag("--oracle", use_oracle, "Use the root-finding path (degree <= 32)");
  add_completion_flags(complete);

  // angles
  auto* angles = app.add_subcommand("angles", "Rotation angles for a pair (P, Q)");
  std::string q_path;
  std::optional<std::size_t> k_negative;
  angles->add_option("p", p_path, "Polynomial JSON for P")->required();
  angles->add_option("q", q_path, "Polynomial JSON for Q")->required();
  angles->add_option("--k-negative", k_negative, "Also emit the circuit with k conjugate signals");

  // plan
  auto* plan = app.add_subcommand("plan", "Circuit JSON from angles");
  std::string angles_path;
  std::size_t plan_k = 0;
  plan->add_option("angles", angles_path, "Angles JSON")->required();
  plan->add_option("--k-negative", plan_k, "Number of conjugate signal slots");

  // verify
  auto* verify = app.add_subcommand("verify", "Simulate a circuit and compare with a target");
  std::string circuit_path, target_path, unitary_spec;
  double accept_tol = 1e-8;
  verify->add_option("circuit", circuit_path, "Circuit JSON")->required();
  verify->add_option("target", target_path, "Target polynomial JSON")->required();
  verify->add_option("--unitary", unitary_spec, "Matrix JSON file, random:N:seed or scalar-grid:m")
      ->required();
  verify->add_option("--accept-tol", accept_tol, "Exit 4 when max_error exceeds this");

  // synth-diag
  auto* synth_diag = app.add_subcommand("synth-diag", "Diagonal operator diag(P(omega^j))");
  std::string filter_path;
  std::size_t n_qubits = 0;
  double headroom = 0.0;
  synth_diag->add_option("filter", filter_path, "Polynomial JSON")->required();
  synth_diag->add_option("--n-qubits", n_qubits, "System qubits")->required();
  synth_diag->add_option("--headroom", headroom, "Relative margin on sup|P|^2");
  add_completion_flags(synth_diag);

  // synth-circulant
  auto* synth_circ = app.add_subcommand("synth-circulant", "Circulant operator sum_k c_k P^k");
  std::size_t circ_n = 0;
  synth_circ->add_option("filter", filter_path, "Polynomial JSON, c_k at degree k")->required();
  synth_circ->add_option("--n", circ_n, "Dimension, a power of two")->required();
  synth_circ->add_option("--headroom", headroom, "Relative margin on sup|P|^2");
  add_completion_flags(synth_circ);

  // jacobi-anger
  auto* ja = app.add_subcommand("jacobi-anger", "Truncated series for e^{it cos} or e^{it sin}");
  double ja_t = 0.0, ja_eps = 1e-8;
  std::string ja_kind = "cos";
  ja->add_option("--t", ja_t, "Evolution time")->required();
  ja->add_option("--eps", ja_eps, "Truncation error");
  ja->add_option("--kind", ja_kind, "cos or sin")->check(CLI::IsMember({"cos", "sin"}));

  // fourier-fit
  auto* fit = app.add_subcommand("fourier-fit", "Least-squares series in e^{i pi m x / 2}");
  gqsp::FourierFitConfig fit_cfg;
  std::string fit_function;
  fit->add_option("--m", fit_cfg.M, "Largest frequency M");
  fit->add_option("--delta", fit_cfg.delta, "Fit on [-1 + delta, 1 - delta]");
  fit->add_option("--function", fit_function, "const1, exp-arcsin:<t> or exp-sqrt:<t>")
      ->required();

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "complete, angles, plan and verify in one go");
  std::optional<std::string> pipeline_unitary;
  pipeline->add_option("p", p_path, "Polynomial JSON for P")->required();
  pipeline->add_option("--accept-tol", accept_tol, "Exit 4 when max_error exceeds this");
  pipeline->add_option("--unitary", pipeline_unitary, "As for verify; default random:8:<seed>");
  add_completion_flags(pipeline);

  // bench
  auto* bench = app.add_subcommand("bench", "Timing of the completion objective and optimizer");
  std::vector<std::size_t> degrees{4096, 8192, 16384};
  std::vector<std::string> kinds{"real", "complex"};
  int repeats = 5;
  bool skip_opt = false;
  bench->add_option("--degrees", degrees, "Degrees, ascending")->delimiter(',');
  bench->add_option("--kinds", kinds, "real and/or complex")
      ->delimiter(',')
      ->check(CLI::IsMember({"real", "complex"}));
  bench->add_option("--repeats", repeats, "Samples per row (median reported)")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--skip-opt", skip_opt, "Time the objective only");
  add_completion_flags(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("invalid_argument", e.what());
    return kInvalidInput;
  }

  try {
    if (complete->parsed()) {
      g_stage = "complete";
      const auto p = gqsp::io::poly_from_json(gqsp::io::read_file(p_path));
      gqsp::require(p.min_degree() == 0, "complete: P must start at degree 0");
      auto cfg = completion_config();
      if (g.tol) cfg.objective_tol = *g.tol;
      gqsp::CoeffVector q;
      gqsp::CompletionReport report;
      if (use_oracle) {
        const auto start = std::chrono::steady_clock::now();
        q = gqsp::complete_via_roots(p.coeffs());
        report.final_objective = gqsp::completion_objective(p.coeffs(), q);
        report.wall_time = ms_since(start) / 1000.0;
        report.converged = true;
      } else {
        std::tie(q, report) = gqsp::complete_via_optimization(p.coeffs(), cfg);
      }
      const std::size_t m = g.grid != 0 ? g.grid : 4 * (2 * p.span() + 1);
      json rep = gqsp::io::to_json(report);
      rep["validation_error"] = gqsp::validate_completion(p.coeffs(), q, m);
      emit(g, {{"q", gqsp::io::to_json(LaurentPoly(q))}, {"report", rep}});
      if (!report.converged) {
        gqsp::fail(ErrorKind::kNonConvergence,
                   "objective " + sci(report.final_objective) + " above tolerance");
      }
    } else if (angles->parsed()) {
      g_stage = "angles";
      const auto p = gqsp::io::poly_from_json(gqsp::io::read_file(p_path));
      const auto q = gqsp::io::poly_from_json(gqsp::io::read_file(q_path));
      const auto a = gqsp::compute_angles(p, q, angle_tol());
      if (k_negative) {
        emit(g, {{"angles", gqsp::io::to_json(a)},
                 {"circuit", gqsp::io::to_json(gqsp::plan_circuit(a, *k_negative))}});
      } else {
        emit(g, {{"angles", gqsp::io::to_json(a)}});
      }
    } else if (plan->parsed()) {
      g_stage = "plan";
      const auto a = gqsp::io::angles_from_json(gqsp::io::read_file(angles_path));
      emit(g, {{"circuit", gqsp::io::to_json(gqsp::plan_circuit(a, plan_k))}});
    } else if (verify->parsed()) {
      g_stage = "verify";
      const auto c = gqsp::io::circuit_from_json(gqsp::io::read_file(circuit_path));
      const auto target = gqsp::io::poly_from_json(gqsp::io::read_file(target_path));
      const double err = verify_against(unitary_spec, c, target);
      emit(g, {{"verify", {{"max_error", err}}}});
      check_accept(err, accept_tol);
    } else if (synth_diag->parsed()) {
      g_stage = "synth-diag";
      const auto p = gqsp::io::poly_from_json(gqsp::io::read_file(filter_path));
      gqsp::SynthesisOptions opts{completion_config(), angle_tol(), headroom};
      const auto s = gqsp::synth_diagonal(p, n_qubits, opts);
      json out = gqsp::io::to_json(s.synthesis.plan);
      out["scale"] = s.scale();
      out["n_qubits"] = n_qubits;
      emit(g, {{"circuit", out}});
    } else if (synth_circ->parsed()) {
      g_stage = "synth-circulant";
      const auto filter = gqsp::io::poly_from_json(gqsp::io::read_file(filter_path));
      gqsp::SynthesisOptions opts{completion_config(), angle_tol(), headroom};
      const auto s = gqsp::synth_circulant({circ_n, filter}, opts);
      emit(g, {{"circulant",
                {{"pre", "dft"},
                 {"plan", gqsp::io::to_json(s.diagonal.synthesis.plan)},
                 {"post", "idft"},
                 {"scale", s.scale()},
                 {"dft_sign", s.dft_sign},
                 {"n", circ_n}}}});
    } else if (ja->parsed()) {
      g_stage = "jacobi-anger";
      const auto p = ja_kind == "cos" ? gqsp::jacobi_anger_cos(ja_t, ja_eps)
                                      : gqsp::jacobi_anger_sin(ja_t, ja_eps);
      emit(g, {{"poly", gqsp::io::to_json(p)}});
    } else if (fit->parsed()) {
      g_stage = "fourier-fit";
      fit_cfg.grid_size = g.grid;
      const auto r = gqsp::fit_fourier_series(gqsp::named_fit_function(fit_function), fit_cfg);
      json out = gqsp::io::to_json(r.coeffs);
      out["max_residual"] = r.max_residual;
      emit(g, {{"fit", out}});
    } else if (pipeline->parsed()) {
      if (g.output_dir.empty()) g.output_dir = ".";
      g_stage = "complete";
      const auto target = gqsp::io::poly_from_json(gqsp::io::read_file(p_path));
      const auto [p, k] = gqsp::to_nonnegative(target);
      auto [q, report] = gqsp::complete_via_optimization(p.coeffs(), completion_config());
      if (!report.converged) {
        gqsp::fail(ErrorKind::kNonConvergence,
                   "objective " + sci(report.final_objective) + " above tolerance");
      }
      const LaurentPoly qp(std::move(q));
      g_stage = "angles";
      const auto a = gqsp::compute_angles(p, qp, angle_tol());
      g_stage = "plan";
      const auto c = gqsp::plan_circuit(a, k);
      g_stage = "verify";
      const double err = verify_against(
          pipeline_unitary.value_or("random:8:" + std::to_string(g.seed)), c, target);
      emit(g, {{"q", gqsp::io::to_json(qp)},
               {"angles", gqsp::io::to_json(a)},
               {"circuit", gqsp::io::to_json(c)},
               {"verify", {{"max_error", err}}}});
      check_accept(err, accept_tol);
    } else if (bench->parsed()) {
      g_stage = "bench";
      gqsp::require(std::is_sorted(degrees.begin(), degrees.end()), "degrees must be ascending");
      gqsp::require(!degrees.empty() && degrees.front() >= 1, "degrees must be positive");
      std::ostringstream csv;
      csv << "degree,kind,objective_eval_ms,full_opt_ms,iterations\n";
      std::map<std::size_t, std::map<std::string, double>> eval_by_kind;
      for (const auto d : degrees) {
        for (const auto& kind : {std::string("real"), std::string("complex")}) {
          if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) continue;
          const auto row = bench_one(d, kind == "complex", repeats, !skip_opt,
                                     completion_config(), g.seed);
          eval_by_kind[d][kind] = row.objective_eval_ms;
          csv << row.degree << ',' << row.kind << ',' << row.objective_eval_ms << ','
              << row.full_opt_ms << ',' << row.iterations << '\n';
        }
      }
      if (g.output_dir.empty()) {
        std::cout << csv.str();
      } else {
        std::filesystem::create_directories(g.output_dir);
        std::ofstream((std::filesystem::path(g.output_dir) / "bench.csv").string()) << csv.str();
      }
      // Informational only; the ratio depends on the machine.
      for (const auto& [d, by_kind] : eval_by_kind) {
        if (by_kind.size() == 2) {
          std::clog << "complex/real objective time at d=" << d << ": "
                    << by_kind.at("complex") / by_kind.at("real") << '\n';
        }
      }
    }
  } catch (const Error& e) {
    report_error(gqsp::to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kNumericalFailure;
  }
  return kOk;
}
