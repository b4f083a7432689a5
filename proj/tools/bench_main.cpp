// Command-line harness for the waveguide NEP solvers: single runs with
// convergence histories, refinement studies, and timing/scaling studies.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <wavenep/cayley_nep.hpp>
#include <wavenep/geometry.hpp>
#include <wavenep/iar.hpp>
#include <wavenep/tiar.hpp>
#include <wavenep/wtiar.hpp>

using namespace wavenep;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kMaxHistoryPairs = 8;

struct RunConfig {
  std::string preset = "benchmark";
  std::string geometry_file;
  Eigen::Index nx = 10;
  Eigen::Index nz = 11;
  std::vector<double> shift = {-3.0, pi};
  Eigen::Index iters = 100;
  std::string solver = "wtiar";
  double tol = 1e-8;
  std::string out_dir = ".";
  long long seed = -1;  // < 0: deterministic all-ones start vector
  bool all_ritz = false;
  // Region filter, override with --region re_max im_min im_max.
  double region_re_max = 0.0;
  double region_im_min = -2.0 * pi;
  double region_im_max = 0.0;
};

WaveguideGeometry make_geometry(const RunConfig& cfg) {
  if (!cfg.geometry_file.empty()) return load_geometry(cfg.geometry_file);
  if (cfg.preset == "benchmark") return benchmark_geometry();
  if (cfg.preset == "complex") return complex_geometry();
  throw CLI::ValidationError("--preset", "unknown preset '" + cfg.preset + "'");
}

Vector start_vector(const RunConfig& cfg, Eigen::Index n) {
  if (cfg.seed < 0) return Vector::Ones(n);
  std::mt19937 gen(static_cast<std::mt19937::result_type>(cfg.seed));
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(dist(gen), dist(gen));
  return v;
}

Complex fold(Complex gamma) { return gamma.imag() > 0.0 ? std::conj(gamma) : gamma; }

bool in_region(const RunConfig& cfg, Complex gamma) {
  return gamma.real() < cfg.region_re_max && gamma.imag() > cfg.region_im_min &&
         gamma.imag() < cfg.region_im_max;
}

struct HistoryRow {
  Eigen::Index iteration;
  int rank;
  Complex gamma;
  double residual;
};

struct RunOutcome {
  std::string solver;
  Eigen::Index n{0};
  HessenbergState hess;
  RitzReport ritz;
  PhaseTimes phases;
  double assembly_seconds{0.0};
  double factorization_seconds{0.0};
  double solve_seconds{0.0};
  std::size_t basis_scalars{0};       // logical complex scalars held by the basis
  std::size_t allocated_scalars{0};   // scalars actually allocated
  std::vector<HistoryRow> history;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Runs the configured solver on the configured problem; records history rows
/// (residuals of the best in-region Ritz pairs) after every iteration.
RunOutcome run_solver(const RunConfig& cfg, bool with_history) {
  RunOutcome out;
  out.solver = cfg.solver;

  const WaveguideGeometry geometry = make_geometry(cfg);
  const DiscretizationGrid grid(geometry, cfg.nx, cfg.nz);

  auto t0 = std::chrono::steady_clock::now();
  const WaveguideSystem sys(geometry, grid);
  out.assembly_seconds = seconds_since(t0);
  out.n = sys.dimension();

  const CayleyShift shift(Complex(cfg.shift[0], cfg.shift[1]));
  t0 = std::chrono::steady_clock::now();
  const CayleyNep nep(sys, shift, cfg.iters);
  out.factorization_seconds = seconds_since(t0);

  const Vector x1 = start_vector(cfg, sys.dimension());

  IterationObserver observer;
  if (with_history) {
    observer = [&](Eigen::Index k, const HessenbergState& hess, const RitzVectorBuilder& builder) {
      RitzReport report = ritz_values(hess, k, &shift);
      std::vector<HistoryRow> rows;
      for (std::size_t i = 0; i < report.pairs.size(); ++i) {
        const RitzPair& p = report.pairs[i];
        if (!p.gamma || p.mu_is_zero) continue;
        if (!cfg.all_ritz && !in_region(cfg, fold(*p.gamma))) continue;
        const Vector w = builder(report.eigenvectors.col(static_cast<Eigen::Index>(i)));
        rows.push_back({k, 0, *p.gamma, sys.residual(*p.gamma, w)});
      }
      std::sort(rows.begin(), rows.end(),
                [](const HistoryRow& a, const HistoryRow& b) { return a.residual < b.residual; });
      if (rows.size() > kMaxHistoryPairs) rows.resize(kMaxHistoryPairs);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].rank = static_cast<int>(i) + 1;
        out.history.push_back(rows[i]);
      }
    };
  }

  t0 = std::chrono::steady_clock::now();
  if (cfg.solver == "wtiar") {
    TiarResult r = wtiar_run(nep, x1, cfg.iters, observer, &out.phases);
    out.solve_seconds = seconds_since(t0);
    out.hess = r.hess;
    out.ritz = r.ritz;
    out.basis_scalars = r.basis.logical_storage_count();
    out.allocated_scalars = out.basis_scalars;
  } else if (cfg.solver == "tiar") {
    GenericStepAdapter generic(nep);
    TiarResult r = tiar_run(generic, x1, cfg.iters, &shift, observer, &out.phases);
    attach_waveguide_residuals(sys, r);
    out.solve_seconds = seconds_since(t0);
    out.hess = r.hess;
    out.ritz = r.ritz;
    out.basis_scalars = r.basis.logical_storage_count();
    out.allocated_scalars = out.basis_scalars;
  } else if (cfg.solver == "iar") {
    GenericStepAdapter generic(nep);
    IarResult r = iar_run(generic, x1, cfg.iters, &shift, observer, &out.phases);
    attach_waveguide_residuals(sys, r);
    out.solve_seconds = seconds_since(t0);
    out.hess = r.hess;
    out.ritz = r.ritz;
    const std::size_t k = static_cast<std::size_t>(r.hess.iterations) + 1;
    out.basis_scalars = k * k * static_cast<std::size_t>(sys.dimension());
    out.allocated_scalars = static_cast<std::size_t>(r.basis.size());
  } else {
    throw CLI::ValidationError("--solver", "unknown solver '" + cfg.solver + "'");
  }
  return out;
}

struct Eigenvalue {
  Complex gamma;      // folded into the requested region
  double residual;
  bool conjugated;    // true when folding flipped the sign of Im gamma
};

std::vector<Eigenvalue> select_eigenvalues(const RunConfig& cfg, const RitzReport& ritz) {
  std::vector<Eigenvalue> out;
  for (const RitzPair& p : ritz.pairs) {
    if (!p.gamma || p.mu_is_zero || std::isnan(p.residual)) continue;
    const Complex folded = fold(*p.gamma);
    const bool keep = cfg.all_ritz || (p.residual < cfg.tol && in_region(cfg, folded));
    if (keep) out.push_back({folded, p.residual, folded != *p.gamma});
  }
  return out;
}

void write_eigenvalues_csv(const std::string& path, const std::vector<Eigenvalue>& eigs) {
  std::ofstream f(path);
  f << "gamma_re,gamma_im,residual,conjugated\n";
  char buf[128];
  for (const Eigenvalue& e : eigs) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d\n", e.gamma.real(), e.gamma.imag(),
                  e.residual, e.conjugated ? 1 : 0);
    f << buf;
  }
}

void write_history_csv(const std::string& path, const std::vector<HistoryRow>& rows) {
  std::ofstream f(path);
  f << "iteration,rank,gamma_re,gamma_im,residual\n";
  char buf[160];
  for (const HistoryRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%lld,%d,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(r.iteration), r.rank, r.gamma.real(), r.gamma.imag(),
                  r.residual);
    f << buf;
  }
}

json timing_json(const RunConfig& cfg, const RunOutcome& out) {
  json j;
  j["solver"] = out.solver;
  j["n"] = out.n;
  j["nx"] = cfg.nx;
  j["nz"] = cfg.nz;
  j["iterations"] = out.hess.iterations;
  j["breakdown"] = out.hess.breakdown;
  j["assembly_seconds"] = out.assembly_seconds;
  j["factorization_seconds"] = out.factorization_seconds;
  j["solve_seconds"] = out.solve_seconds;
  j["phases"] = {{"y_access_seconds", out.phases.y_access},
                 {"y_solve_seconds", out.phases.y_solve},
                 {"orthogonalization_seconds", out.phases.orthogonalization},
                 {"hessenberg_eig_seconds", out.phases.hessenberg_eig}};
  j["memory"] = {{"basis_complex_scalars", out.basis_scalars},
                 {"basis_bytes", out.basis_scalars * sizeof(Complex)},
                 {"allocated_complex_scalars", out.allocated_scalars},
                 {"allocated_bytes", out.allocated_scalars * sizeof(Complex)}};
  return j;
}

int cmd_solve(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const RunOutcome out = run_solver(cfg, /*with_history=*/true);
  const std::vector<Eigenvalue> eigs = select_eigenvalues(cfg, out.ritz);

  write_eigenvalues_csv(cfg.out_dir + "/eigenvalues.csv", eigs);
  write_history_csv(cfg.out_dir + "/history.csv", out.history);
  std::ofstream(cfg.out_dir + "/timing.json") << timing_json(cfg, out).dump(2) << '\n';

  std::printf("%s on %lldx%lld (n=%lld), m=%lld: %zu eigenvalue(s)", cfg.solver.c_str(),
              static_cast<long long>(cfg.nx), static_cast<long long>(cfg.nz),
              static_cast<long long>(out.n), static_cast<long long>(cfg.iters), eigs.size());
  if (!cfg.all_ritz) std::printf(" with E < %.1e in the target region", cfg.tol);
  std::printf(", %.2f s\n", out.solve_seconds);
  for (const Eigenvalue& e : eigs)
    std::printf("  gamma = %.9f %+.9fi   E = %.2e%s\n", e.gamma.real(), e.gamma.imag(),
                e.residual, e.conjugated ? "  (conjugated)" : "");
  if (eigs.empty())
    std::fprintf(stderr, "warning: no Ritz pair passed the residual/region filter\n");
  return 0;
}

int cmd_refine(RunConfig cfg, int levels) {
  std::filesystem::create_directories(cfg.out_dir);
  struct Track {
    std::vector<Complex> values;
    std::vector<double> residuals;
  };
  std::vector<Track> tracks;
  std::vector<Eigen::Index> nxs, nzs;

  for (int level = 0; level < levels; ++level) {
    const RunOutcome out = run_solver(cfg, /*with_history=*/false);
    const std::vector<Eigenvalue> eigs = select_eigenvalues(cfg, out.ritz);
    nxs.push_back(cfg.nx);
    nzs.push_back(cfg.nz);
    if (level == 0) {
      for (const Eigenvalue& e : eigs) {
        if (tracks.size() >= 4) break;
        tracks.push_back({{e.gamma}, {e.residual}});
      }
      if (tracks.empty()) {
        std::fprintf(stderr, "error: no converged eigenvalue on the coarsest level to track\n");
        return kExitSolver;
      }
    } else {
      for (Track& t : tracks) {
        double best = std::numeric_limits<double>::infinity();
        const Eigenvalue* match = nullptr;
        for (const Eigenvalue& e : eigs) {
          const double d = std::abs(e.gamma - t.values.back());
          if (d < best) {
            best = d;
            match = &e;
          }
        }
        if (match == nullptr) {
          std::fprintf(stderr, "error: tracked eigenvalue lost at level %d\n", level);
          return kExitSolver;
        }
        t.values.push_back(match->gamma);
        t.residuals.push_back(match->residual);
      }
    }
    cfg.nx *= 2;
    cfg.nz = 2 * cfg.nz - 1;
  }

  std::ofstream f(cfg.out_dir + "/refine.csv");
  f << "level,nx,nz,track,gamma_re,gamma_im,residual,ratio\n";
  char buf[200];
  std::printf("level  nx    nz    track  eigenvalue                        ratio\n");
  for (int level = 0; level < levels; ++level) {
    for (std::size_t t = 0; t < tracks.size(); ++t) {
      const Complex g = tracks[t].values[static_cast<std::size_t>(level)];
      std::string ratio;
      if (level >= 2) {
        const auto& v = tracks[t].values;
        const double d_prev =
            std::abs(v[static_cast<std::size_t>(level - 2)] - v[static_cast<std::size_t>(level - 1)]);
        const double d_cur =
            std::abs(v[static_cast<std::size_t>(level - 1)] - v[static_cast<std::size_t>(level)]);
        std::snprintf(buf, sizeof(buf), "%.17g", d_prev / d_cur);
        ratio = buf;
      }
      std::snprintf(buf, sizeof(buf), "%d,%lld,%lld,%zu,%.17g,%.17g,%.17g,%s\n", level,
                    static_cast<long long>(nxs[static_cast<std::size_t>(level)]),
                    static_cast<long long>(nzs[static_cast<std::size_t>(level)]), t + 1,
                    g.real(), g.imag(), tracks[t].residuals[static_cast<std::size_t>(level)],
                    ratio.c_str());
      f << buf;
      std::printf("%-6d %-5lld %-5lld %-6zu %.9f %+.9fi   %s\n", level,
                  static_cast<long long>(nxs[static_cast<std::size_t>(level)]),
                  static_cast<long long>(nzs[static_cast<std::size_t>(level)]), t + 1, g.real(),
                  g.imag(), ratio.empty() ? "-" : ratio.c_str());
    }
  }
  return 0;
}

int cmd_timing(RunConfig cfg, const std::vector<Eigen::Index>& sizes) {
  std::filesystem::create_directories(cfg.out_dir);
  json study;
  study["solver"] = cfg.solver;
  study["m"] = cfg.iters;
  study["runs"] = json::array();
  std::vector<double> log_n, log_t;
  for (const Eigen::Index nx : sizes) {
    cfg.nx = nx;
    cfg.nz = nx % 2 == 0 ? nx + 1 : nx + 2;  // keep n_z odd
    const RunOutcome out = run_solver(cfg, /*with_history=*/false);
    json entry = timing_json(cfg, out);
    study["runs"].push_back(entry);
    const double step_orth = out.phases.y_access + out.phases.y_solve +
                             out.phases.orthogonalization;
    log_n.push_back(std::log(static_cast<double>(out.n)));
    log_t.push_back(std::log(std::max(step_orth, 1e-9)));
    std::printf("nx=%-5lld n=%-8lld solve %.3f s (step+orth %.3f s)\n",
                static_cast<long long>(nx), static_cast<long long>(out.n), out.solve_seconds,
                step_orth);
  }
  // Least-squares slope of log t vs log n: the observed scaling exponent of
  // the per-iteration work at fixed m.
  const double n_runs = static_cast<double>(log_n.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sx += log_n[i];
    sy += log_t[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_t[i];
  }
  const double exponent = (n_runs * sxy - sx * sy) / (n_runs * sxx - sx * sx);
  study["step_orth_scaling_exponent"] = exponent;
  std::ofstream(cfg.out_dir + "/timing_study.json") << study.dump(2) << '\n';
  std::printf("fitted step+orthogonalization scaling exponent: %.3f\n", exponent);
  return 0;
}

void add_common_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--preset", cfg.preset, "Geometry preset: benchmark or complex");
  app->add_option("--geometry", cfg.geometry_file, "Geometry JSON file (overrides --preset)");
  app->add_option("--nx", cfg.nx, "Interior grid columns in x");
  app->add_option("--nz", cfg.nz, "z-levels (must be odd)");
  app->add_option("--shift", cfg.shift, "Shift gamma0 as RE,IM")
      ->delimiter(',')
      ->expected(2);
  app->add_option("--iters", cfg.iters, "Arnoldi iterations m");
  app->add_option("--solver", cfg.solver, "Solver: iar, tiar, or wtiar");
  app->add_option("--tol", cfg.tol, "Residual threshold for reported eigenvalues");
  app->add_option("--out", cfg.out_dir, "Output directory");
  app->add_option("--seed", cfg.seed, "Random start vector seed (default: all-ones start)");
  app->add_flag("--all-ritz", cfg.all_ritz, "Report all Ritz values, not only converged in-region ones");
  app->add_option("--region", [&cfg](const std::vector<std::string>& vals) {
        cfg.region_re_max = std::stod(vals[0]);
        cfg.region_im_min = std::stod(vals[1]);
        cfg.region_im_max = std::stod(vals[2]);
        return true;
      },
      "Target region as RE_MAX,IM_MIN,IM_MAX (default 0,-2pi,0)")
      ->delimiter(',')
      ->expected(3);
}

void validate(const RunConfig& cfg) {
  if (cfg.nz < 1 || cfg.nz % 2 == 0) throw CLI::ValidationError("--nz", "n_z must be odd and positive");
  if (cfg.nx < 2) throw CLI::ValidationError("--nx", "n_x must be at least 2");
  if (cfg.iters < 1) throw CLI::ValidationError("--iters", "m must be at least 1");
  if (cfg.solver != "iar" && cfg.solver != "tiar" && cfg.solver != "wtiar")
    throw CLI::ValidationError("--solver", "must be iar, tiar, or wtiar");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waveguide nonlinear eigenvalue benchmark harness"};
  app.require_subcommand(1);

  RunConfig solve_cfg, refine_cfg, timing_cfg;
  int levels = 3;
  std::vector<Eigen::Index> sizes;

  CLI::App* solve = app.add_subcommand("solve", "Single solver run with history and timing");
  add_common_options(solve, solve_cfg);

  CLI::App* refine = app.add_subcommand("refine", "Eigenvalues across doubling refinements");
  add_common_options(refine, refine_cfg);
  refine->add_option("--levels", levels, "Number of refinement levels")->check(CLI::Range(1, 8));

  CLI::App* timing = app.add_subcommand("timing", "Wall-time scaling across grid sizes");
  add_common_options(timing, timing_cfg);
  timing->add_option("--sizes", sizes, "Comma-separated n_x values")
      ->delimiter(',')
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (solve->parsed()) {
      validate(solve_cfg);
      return cmd_solve(solve_cfg);
    }
    if (refine->parsed()) {
      validate(refine_cfg);
      return cmd_refine(refine_cfg, levels);
    }
    validate(timing_cfg);
    if (sizes.size() < 2) throw CLI::ValidationError("--sizes", "need at least 2 sizes");
    return cmd_timing(timing_cfg, sizes);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kExitSolver;
  }
}
