// Copyright 2026 The qaoa-girth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qaoa-girth: command-line front end.
//
// Exit codes: 0 success, 2 usage error or size cap, 3 numeric failure,
// 4 tolerance breach.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qaoa_girth.hpp"
#include "qaoa_girth/io.hpp"

#ifndef QAOA_GIRTH_VERSION
#define QAOA_GIRTH_VERSION "unknown"
#endif

namespace qg = qaoa_girth;
namespace io = qaoa_girth::io;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitTolerance = 4;

constexpr double kOracleTolerance = 1e-10;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// --threads, else QAOA_GIRTH_THREADS, else everything OpenMP offers.
int resolve_threads(int flag) {
  int n = flag;
  if (n == 0) {
    if (const char* env = std::getenv("QAOA_GIRTH_THREADS"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (*end != '\0' || v < 1 || v > 4096) throw UsageError("QAOA_GIRTH_THREADS must be a positive integer");
      n = static_cast<int>(v);
    }
  }
  if (n < 0) throw UsageError("--threads must be positive");
  if (n > 0) qg::parallel::set_threads(n);
  return qg::parallel::max_threads();
}

void write_file_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
    if (!out.flush()) throw UsageError("cannot write " + path);
  }
  std::filesystem::rename(tmp, path);
}

std::string sidecar_path(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  if (p.extension() == ".csv") p.replace_extension(".json");
  else p += ".json";
  return p.string();
}

std::string cut_formula(int q) { return q == 2 ? "1/2 + nu/sqrt(D)" : "1/2 + nu*sqrt(q/(2D))"; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Loads the params file and reconciles it with --p / --q.
qg::QaoaParams load_checked(const std::string& path, int p_flag, int q_flag) {
  qg::QaoaParams x = io::load_params(path);
  if (p_flag > 0 && p_flag != x.p()) {
    throw UsageError("--p " + std::to_string(p_flag) + " does not match the parameter file (p = " +
                     std::to_string(x.p()) + ")");
  }
  if (q_flag > 0) x = x.with_q(q_flag);
  return x;
}

double evaluate(const qg::QaoaParams& x, std::optional<long long> D, qg::Method method) {
  const int q = x.q();
  if (D) return q == 2 ? qg::nu_finite(*D, x) : qg::nu_q_finite(*D, q, x);
  if (q == 2) return method == qg::Method::fast ? qg::nu_infinite_fast(x) : qg::nu_infinite_naive(x);
  return qg::nu_q_infinite(q, x, method);
}

// ---------------------------------------------------------------------------

struct EvalFlags {
  int p = 0;
  int q = 0;
  std::string params;
  long long branching = 0;
  bool infinite = false;
  std::string method = "fast";
  int threads = 0;
  std::string out;
};

int run_eval(const EvalFlags& f) {
  if (f.infinite == (f.branching > 0)) throw UsageError("give exactly one of --branching-D or --infinite");
  const int threads = resolve_threads(f.threads);
  const qg::QaoaParams x = load_checked(f.params, f.p, f.q);
  const qg::Method method = f.method == "naive" ? qg::Method::naive : qg::Method::fast;
  const std::optional<long long> D = f.infinite ? std::nullopt : std::optional<long long>(f.branching);

  const auto t0 = std::chrono::steady_clock::now();
  const double nu = evaluate(x, D, method);
  const double wall = seconds_since(t0);
  if (!std::isfinite(nu)) throw qg::NumericFailure("nu is not finite");

  json r = {{"p", x.p()},
            {"q", x.q()},
            {"gamma", x.gamma()},
            {"beta", x.beta()},
            {"nu", nu},
            {"method", D ? "finite" : f.method},
            {"cut_fraction_formula", cut_formula(x.q())},
            {"wall_time_seconds", wall},
            {"threads", threads},
            {"code_version", QAOA_GIRTH_VERSION}};
  if (D) r["D"] = *D;
  else r["D"] = "inf";
  std::cout << r.dump(2) << '\n';

  if (!f.out.empty()) {
    const bool fresh = !std::filesystem::exists(f.out) || std::filesystem::file_size(f.out) == 0;
    std::ofstream out(f.out, std::ios::app);
    if (!out) throw UsageError("cannot write " + f.out);
    if (fresh) out << "p,q,D,method,nu,wall_time_seconds,threads\n";
    out << x.p() << ',' << x.q() << ',' << (D ? std::to_string(*D) : std::string("inf")) << ','
        << r["method"].get<std::string>() << ',' << io::format_double(nu) << ',' << io::format_double(wall) << ','
        << threads << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct OptimizeFlags {
  int p = 0;      // optimize
  int p_max = 0;  // sweep
  int q = 2;
  std::uint64_t seed = 0;
  int multistarts = 8;
  std::string out;
  std::string warm_start;
  std::string params_out;
  long long branching = 0;
  double grad_tol = 1e-7;
  int max_iter = 500;
  int threads = 0;
};

qg::OptimizerConfig make_config(const OptimizeFlags& f) {
  qg::OptimizerConfig cfg;
  cfg.seed = f.seed;
  cfg.multistart_count = f.multistarts;
  cfg.grad_tolerance = f.grad_tol;
  cfg.max_iterations = f.max_iter;
  cfg.validate();
  return cfg;
}

qg::Objective make_objective(const OptimizeFlags& f) {
  if (f.branching <= 0) return qg::infinite_objective(f.q);
  const long long D = f.branching;
  const int q = f.q;
  return [D, q](const qg::QaoaParams& x) { return q == 2 ? qg::nu_finite(D, x) : qg::nu_q_finite(D, q, x); };
}

// Rewrites the CSV and its JSON sidecar with everything finished so far.
void flush_records(const OptimizeFlags& f, const std::vector<qg::OptimumRecord>& recs, int width, int threads,
                   const std::string& command) {
  std::string csv = io::records_csv_header(width) + "\n";
  for (const auto& r : recs) csv += io::records_csv_row(r, width) + "\n";
  if (f.out.empty()) return;
  write_file_atomically(f.out, csv);

  json side = {{"command", command},
               {"q", f.q},
               {"D", f.branching > 0 ? json(f.branching) : json("inf")},
               {"seed", f.seed},
               {"rng", "mt19937_64"},
               {"multistarts", f.multistarts},
               {"grad_tolerance", f.grad_tol},
               {"max_iterations", f.max_iter},
               {"threads", threads},
               {"code_version", QAOA_GIRTH_VERSION},
               {"records", json::array()}};
  for (const auto& r : recs) side["records"].push_back(io::record_to_json(r));
  write_file_atomically(sidecar_path(f.out), side.dump(2) + "\n");
}

int run_sweep(const OptimizeFlags& f, bool single_depth) {
  const int target = single_depth ? f.p : f.p_max;
  if (target < 1) throw UsageError(single_depth ? "--p must be >= 1" : "--p-max must be >= 1");
  if (f.q < 2) throw UsageError("--q must be >= 2");
  const int threads = resolve_threads(f.threads);
  const qg::OptimizerConfig cfg = make_config(f);
  const qg::Objective objective = make_objective(f);

  std::optional<qg::QaoaParams> warm;
  if (!f.warm_start.empty()) warm = io::load_params(f.warm_start).with_q(f.q);
  if (single_depth) {
    if (warm && warm->p() != target - 1) throw UsageError("--warm-start must hold depth p-1 angles");
    if (!warm && target > 1) throw UsageError("optimize at p > 1 needs --warm-start (or use sweep)");
  } else if (warm && warm->p() >= target) {
    throw UsageError("--warm-start depth must be below --p-max");
  }

  std::vector<qg::OptimumRecord> recs;
  const std::string command = single_depth ? "optimize" : "sweep";
  auto on_record = [&](const qg::OptimumRecord& r) {
    if (single_depth && r.params.p() != target) return;
    recs.push_back(r);
    flush_records(f, recs, target, threads, command);
    std::cout << io::records_csv_row(r, target) << std::endl;
  };

  std::cout << io::records_csv_header(target) << '\n';
  if (single_depth && !warm) {
    std::mt19937_64 rng(cfg.seed);
    auto starts = qg::random_inits(1, f.q, std::max(cfg.multistart_count, 1), rng);
    on_record(qg::best_of(objective, starts, cfg));
  } else {
    qg::sweep(target, f.q, cfg, on_record, warm, objective);
  }
  if (!f.params_out.empty() && !recs.empty()) io::save_params(f.params_out, recs.back().params);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct OracleFlags {
  int q = 2;
  long long branching = 0;
  int p = 0;
  std::string params;
  int j_draws = 10;
  std::uint64_t seed = 0;
  int threads = 0;
};

int run_oracle_check(const OracleFlags& f) {
  if (f.p < 1) throw UsageError("--p must be >= 1");
  if (f.branching < 1) throw UsageError("--branching-D must be >= 1");
  if (f.j_draws < 0) throw UsageError("--j-draws must be >= 0");
  const int threads = resolve_threads(f.threads);
  const qg::TreeSpec tree = qg::build_tree(f.q, f.branching, f.p);  // size cap first

  const qg::QaoaParams x =
      f.params.empty() ? qg::published::optimal_params(f.p).with_q(f.q) : load_checked(f.params, f.p, f.q);

  const auto t0 = std::chrono::steady_clock::now();
  const double sv = qg::statevector_nu(tree, x);
  const double it = f.q == 2 ? qg::nu_finite(f.branching, x) : qg::nu_q_finite(f.branching, f.q, x);
  const double dev = std::abs(sv - it);
  const auto rep = qg::j_independence_test(tree, x, f.j_draws, f.seed);
  const bool ok = dev < kOracleTolerance && rep.passed;

  const json out = {{"q", f.q},
                    {"D", f.branching},
                    {"p", f.p},
                    {"num_qubits", tree.num_vertices},
                    {"gamma", x.gamma()},
                    {"beta", x.beta()},
                    {"nu_statevector", sv},
                    {"nu_iteration", it},
                    {"abs_deviation", dev},
                    {"tolerance", kOracleTolerance},
                    {"j_draws", f.j_draws},
                    {"seed", f.seed},
                    {"rng", "mt19937_64"},
                    {"j_spread", rep.max_deviation},
                    {"j_tolerance", qg::kJSpreadTolerance},
                    {"passed", ok},
                    {"wall_time_seconds", seconds_since(t0)},
                    {"threads", threads},
                    {"code_version", QAOA_GIRTH_VERSION}};
  std::cout << out.dump(2) << '\n';
  if (!ok) {
    std::cerr << "oracle-check: tolerance breach: |nu_statevector - nu_iteration| = " << io::format_double(dev)
              << ", J spread = " << io::format_double(rep.max_deviation) << '\n';
    return kExitTolerance;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct FigureFlags {
  std::string figure;
  std::string records;
  std::string out;
};

int run_figure_data(const FigureFlags& f) {
  const auto recs = io::parse_records_csv(io::read_text(f.records));
  std::string csv;
  if (f.figure == "fig2") {
    csv = "inv_p,nu_bar\n";
    for (const auto& r : recs) csv += io::format_double(1.0 / r.params.p()) + "," + io::format_double(r.value) + "\n";
  } else {
    csv = "p,r,x,gamma_r,beta_r\n";
    for (const auto& r : recs) {
      const int p = r.params.p();
      for (int k = 1; k <= p; ++k) {
        const double x = p == 1 ? 0.0 : static_cast<double>(k - 1) / (p - 1);
        csv += std::to_string(p) + "," + std::to_string(k) + "," + io::format_double(x) + "," +
               io::format_double(r.params.gamma(k)) + "," + io::format_double(r.params.beta(k)) + "\n";
      }
    }
  }
  if (f.out.empty()) std::cout << csv;
  else write_file_atomically(f.out, csv);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PublishedFlags {
  bool lower_bound = false;
  std::vector<int> depths;
  bool evaluate = false;
  std::string emit_params;
  int threads = 0;
};

int run_published(const PublishedFlags& f) {
  const int threads = resolve_threads(f.threads);
  std::vector<int> depths = f.depths;
  if (depths.empty()) {
    if (f.lower_bound) depths = {18, 19, 20};
    else for (int p = 1; p <= 17; ++p) depths.push_back(p);
  }
  if (!f.emit_params.empty()) std::filesystem::create_directories(f.emit_params);

  std::cout << (f.evaluate ? "p,published,computed,abs_diff,wall_time_seconds,threads\n" : "p,published\n");
  for (int p : depths) {
    const qg::QaoaParams x = f.lower_bound ? qg::published::lower_bound_params(p) : qg::published::optimal_params(p);
    const double published = f.lower_bound ? *qg::published::lower_bound_value(p) : *qg::published::optimal_value(p);
    if (!f.emit_params.empty()) {
      const std::string name = std::string(f.lower_bound ? "lower_bound" : "optimal") + "_p" + std::to_string(p);
      io::save_params((std::filesystem::path(f.emit_params) / (name + ".json")).string(), x);
    }
    std::cout << p << ',' << io::format_double(published);
    if (f.evaluate) {
      const auto t0 = std::chrono::steady_clock::now();
      const double nu = qg::nu_infinite_fast(x);
      std::cout << ',' << io::format_double(nu) << ',' << io::format_double(std::abs(nu - published)) << ','
                << io::format_double(seconds_since(t0)) << ',' << threads;
    }
    std::cout << std::endl;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact QAOA performance on large-girth regular (hyper)graphs", "qaoa-girth"};
  app.set_version_flag("--version", std::string(QAOA_GIRTH_VERSION));
  app.require_subcommand(1);

  EvalFlags ef;
  auto* eval = app.add_subcommand("eval", "Evaluate nu at given angles");
  eval->add_option("--p", ef.p, "Depth (must match the parameter file)")->check(CLI::PositiveNumber);
  eval->add_option("--q", ef.q, "Clause arity (default: the file's q, else 2)")->check(CLI::Range(2, 64));
  eval->add_option("--params", ef.params, "Parameter JSON file")->required()->check(CLI::ExistingFile);
  auto* eval_d = eval->add_option("--branching-D", ef.branching, "Branching factor D (graph degree D+1)")
                     ->check(CLI::PositiveNumber);
  auto* eval_inf = eval->add_flag("--infinite", ef.infinite, "Use the D -> infinity limit");
  eval_d->excludes(eval_inf);
  eval->add_option("--method", ef.method, "Infinite-D route")->check(CLI::IsMember({"naive", "fast"}));
  eval->add_option("--threads", ef.threads, "Worker threads")->check(CLI::PositiveNumber);
  eval->add_option("--out", ef.out, "Append a CSV row to this file");

  OptimizeFlags sf, of;
  auto add_common = [](CLI::App* cmd, OptimizeFlags& f) {
    cmd->add_option("--q", f.q, "Clause arity")->check(CLI::Range(2, 64));
    cmd->add_option("--seed", f.seed, "Seed for the random starts");
    cmd->add_option("--multistarts", f.multistarts, "Random starts per depth")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", f.out, "Records CSV (a .json sidecar is written next to it)");
    cmd->add_option("--warm-start", f.warm_start, "Parameter JSON to warm-start from")->check(CLI::ExistingFile);
    cmd->add_option("--params-out", f.params_out, "Write the last optimum as parameter JSON");
    cmd->add_option("--branching-D", f.branching, "Optimize the finite-D value instead of the limit")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--grad-tol", f.grad_tol, "Gradient sup-norm tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", f.max_iter, "L-BFGS iteration budget per start")->check(CLI::NonNegativeNumber);
    cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto* sweep = app.add_subcommand("sweep", "Optimize p = 1..p_max with warm starts");
  sweep->add_option("--p-max", sf.p_max, "Largest depth")->required();
  add_common(sweep, sf);
  auto* optimize = app.add_subcommand("optimize", "Optimize a single depth");
  optimize->add_option("--p", of.p, "Depth")->required();
  add_common(optimize, of);

  OracleFlags rf;
  auto* oracle = app.add_subcommand("oracle-check", "Compare the iteration with a brute-force statevector");
  oracle->add_option("--q", rf.q, "Clause arity")->check(CLI::Range(2, 26));
  oracle->add_option("--branching-D", rf.branching, "Branching factor D")->required();
  oracle->add_option("--p", rf.p, "Depth")->required();
  oracle->add_option("--params", rf.params, "Parameter JSON (default: published optimum at p)")
      ->check(CLI::ExistingFile);
  oracle->add_option("--j-draws", rf.j_draws, "Random coupling draws for the J-independence test");
  oracle->add_option("--seed", rf.seed, "Seed for the coupling draws");
  oracle->add_option("--threads", rf.threads, "Worker threads")->check(CLI::PositiveNumber);

  FigureFlags ff;
  auto* figure = app.add_subcommand("figure-data", "Plot-ready CSV from a records file");
  figure->add_option("--figure", ff.figure, "fig2 (nu_bar vs 1/p) or fig3 (angles vs (r-1)/(p-1))")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3"}));
  figure->add_option("--records", ff.records, "Records CSV from sweep")->required()->check(CLI::ExistingFile);
  figure->add_option("--out", ff.out, "Output CSV (default: stdout)");

  PublishedFlags pf;
  auto* published = app.add_subcommand("published", "Published optimal angles and values");
  published->add_flag("--lower-bound", pf.lower_bound, "Use the extrapolated p = 18..20 angles");
  published->add_option("--p", pf.depths, "Depths to list (default: all)");
  published->add_flag("--evaluate", pf.evaluate, "Recompute nu at each depth (slow beyond p ~ 14)");
  published->add_option("--emit-params", pf.emit_params, "Directory for parameter JSON files");
  published->add_option("--threads", pf.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(ef);
    if (*sweep) return run_sweep(sf, false);
    if (*optimize) return run_sweep(of, true);
    if (*oracle) return run_oracle_check(rf);
    if (*figure) return run_figure_data(ff);
    if (*published) return run_published(pf);
  } catch (const qg::SizeCapError& e) {
    std::cerr << "qaoa-girth: size cap: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qg::NumericFailure& e) {
    std::cerr << "qaoa-girth: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qaoa-girth: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "qaoa-girth: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qaoa-girth: internal error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
