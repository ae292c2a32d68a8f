// Command-line front end: solve a named benchmark and run the empirical
// check harnesses, emitting CSV/JSON artifacts.
//
// Exit codes: 0 success, 1 runtime or check failure, 2 configuration error,
// 3 gate failure (converge --min-order).

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "eik/analysis.hpp"
#include "eik/io.hpp"
#include "eik/mdp.hpp"
#include "eik/rng.hpp"
#include "eik/solve.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitGate = 3;

struct CommonOpts {
  std::string benchmark;
  std::string out_dir = ".";
  std::string minimizer = "nested";
  double angle_tol = 1e-10;
};

void add_common(CLI::App* cmd, CommonOpts* o) {
  cmd->set_help_flag("--help", "print help");  // keep -h free for --h
  cmd->add_option("--benchmark", o->benchmark, "benchmark name")->required();
  cmd->add_option("--out-dir", o->out_dir, "output directory");
  cmd->add_option("--minimizer", o->minimizer, "angle minimizer: nested | multistart")
      ->check(CLI::IsMember({"nested", "multistart"}));
  cmd->add_option("--angle-tol", o->angle_tol, "golden-section angle tolerance (radians)");
}

eik::MinimizerConfig minimizer_config(const CommonOpts& o) {
  eik::MinimizerConfig cfg;
  cfg.method = o.minimizer == "multistart" ? eik::MinimizerConfig::Method::MultistartSampled
                                           : eik::MinimizerConfig::Method::Nested1d;
  cfg.refine_tolerance = o.angle_tol;
  return cfg;
}

eik::RunManifest make_manifest(const std::string& command, const CommonOpts& o) {
  eik::RunManifest m;
  m.command = command;
  m.benchmark = o.benchmark;
  m.minimizer_method = o.minimizer;
  m.angle_tolerance = o.angle_tol;
  m.out_dir = o.out_dir;
  return m;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + path.string());
  return os;
}

void write_json(const std::string& dir, const std::string& name, const nlohmann::json& j) {
  auto os = open_out(dir, name);
  os << j.dump(2) << "\n";
}

int cmd_solve(const CommonOpts& common, double h, bool constrained) {
  const eik::BenchmarkInstance inst = eik::benchmark(common.benchmark);
  eik::SolverConfig cfg;
  cfg.h = h;
  cfg.minimizer = minimizer_config(common);
  if (constrained) cfg.mode = eik::SolverConfig::Mode::Constrained;

  const eik::SolveResult r = eik::fast_march(inst, cfg);

  eik::RunManifest manifest = make_manifest(constrained ? "solve-constrained" : "solve", common);
  manifest.h_values = {h};

  auto csv = open_out(common.out_dir, "values.csv");
  eik::write_value_field_csv(csv, r.field);
  write_json(common.out_dir, "report.json",
             {{"manifest", to_json(manifest)}, {"report", to_json(r.report)}});
  return kExitOk;
}

int cmd_converge(const CommonOpts& common, std::vector<double> h_list, double margin,
                 double min_order) {
  const eik::BenchmarkInstance inst = eik::benchmark(common.benchmark);
  if (h_list.size() < 3) throw eik::ConfigError("converge needs at least 3 --h-list values");
  if (margin <= 0) margin = 10.0 * h_list.front();

  eik::SolverConfig base;
  base.minimizer = minimizer_config(common);
  const eik::ConvergenceRecord rec = eik::convergence_sweep(inst, h_list, margin, base);

  eik::RunManifest manifest = make_manifest("converge", common);
  manifest.h_values = h_list;
  manifest.margin = margin;
  manifest.min_order = min_order;

  auto csv = open_out(common.out_dir, "convergence.csv");
  eik::write_convergence_csv(csv, rec);
  const bool gate_pass = rec.fitted_order >= min_order;
  write_json(common.out_dir, "summary.json",
             {{"manifest", to_json(manifest)},
              {"fitted_order", rec.fitted_order},
              {"fitted_constant", rec.fitted_constant},
              {"h_values", rec.h_values},
              {"sup_errors", rec.sup_errors},
              {"gate", {{"min_order", min_order}, {"pass", gate_pass}}}});
  if (!gate_pass) {
    std::cerr << "converge: fitted order " << rec.fitted_order << " below gate " << min_order
              << "\n";
    return kExitGate;
  }
  return kExitOk;
}

int cmd_complexity(const CommonOpts& common, std::vector<long long> sizes) {
  const eik::BenchmarkInstance inst = eik::benchmark(common.benchmark);
  const auto points = eik::complexity_scaling(inst, sizes, minimizer_config(common));

  bool pops_ok = true;
  for (const auto& p : points) pops_ok = pops_ok && p.pops == p.reachable;
  const bool trend_ok = eik::complexity_trend_ok(points);

  eik::RunManifest manifest = make_manifest("complexity", common);
  auto csv = open_out(common.out_dir, "complexity.csv");
  eik::write_complexity_csv(csv, points);
  write_json(common.out_dir, "summary.json",
             {{"manifest", to_json(manifest)},
              {"pops_equal_reachable", pops_ok},
              {"trend_within_mlogm", trend_ok}});
  if (!pops_ok || !trend_ok) {
    std::cerr << "complexity: counter checks failed\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_semiconcavity(const CommonOpts& common, double h, std::vector<int> z_steps,
                      bool time_scale) {
  const eik::BenchmarkInstance inst = eik::benchmark(common.benchmark);
  eik::SolverConfig cfg;
  cfg.h = h;
  cfg.minimizer = minimizer_config(common);
  const eik::SolveResult r = eik::fast_march(inst, cfg);
  const eik::SemiconcavityProbe probe =
      eik::semiconcavity_probe(r.field, inst.target, z_steps,
                               time_scale ? eik::ProbeScale::Time : eik::ProbeScale::Kruzkov);

  eik::RunManifest manifest = make_manifest("semiconcavity", common);
  manifest.h_values = {h};

  double lo = probe.max_ratio.empty() ? 0 : probe.max_ratio.front();
  double hi = lo;
  for (double v : probe.max_ratio) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  auto csv = open_out(common.out_dir, "semiconcavity.csv");
  eik::write_semiconcavity_csv(csv, probe);
  write_json(common.out_dir, "summary.json",
             {{"manifest", to_json(manifest)},
              {"z", probe.z_magnitudes},
              {"max_ratio", probe.max_ratio},
              {"ratio_spread", lo > 0 ? hi / lo : std::nan("")}});
  return kExitOk;
}

int cmd_mdp_check(const CommonOpts& common, double h, std::uint64_t seed, long long samples) {
  const eik::BenchmarkInstance inst = eik::benchmark(common.benchmark);
  eik::SolverConfig cfg;
  cfg.h = h;
  cfg.minimizer = minimizer_config(common);
  const eik::Grid grid = eik::solver_grid(inst, h);

  nlohmann::json checks = nlohmann::json::array();
  bool all_pass = true;
  std::string first_failure;

  // Transition distribution invariants on 1000 random feasible draws.
  {
    eik::Rng rng(seed);
    constexpr double half_pi = 1.5707963267948966;
    double worst_sum = 0, worst_mean = 0, worst_var = 0;
    int made = 0;
    long long attempts = 0;
    while (made < 1000 && attempts < 200000) {
      ++attempts;
      const eik::NodeId x{rng.uniform_index(grid.size())};
      const eik::Orthant o = eik::orthant_from_code(grid.dim(), static_cast<int>(rng.uniform_index(1 << grid.dim())));
      std::array<double, eik::kMaxDim> angles{};
      for (int k = 0; k + 1 < grid.dim(); ++k) angles[k] = rng.uniform(0.0, half_pi);
      const eik::Direction dir = eik::direction_from_angles(
          {angles.data(), static_cast<std::size_t>(grid.dim() - 1)}, o);
      eik::TransitionDistribution t;
      try {
        t = eik::transition(grid, x, dir);
      } catch (const std::domain_error&) {
        continue;  // infeasible or leaves the grid; draw again
      }
      ++made;
      double psum = 0;
      eik::Vec mean = eik::Vec::zero(grid.dim());
      double second = 0;
      const eik::Vec xc = grid.node_coord(x);
      for (int k = 0; k < t.count; ++k) {
        psum += t.support[k].probability;
        const eik::Vec d = grid.node_coord(t.support[k].node) - xc;
        mean = mean + t.support[k].probability * d;
        second += t.support[k].probability * d.norm2();
      }
      const eik::Vec target_mean = h * dir.alpha;
      worst_sum = std::max(worst_sum, std::abs(psum - 1.0));
      worst_mean = std::max(worst_mean, eik::norm(mean - target_mean));
      worst_var = std::max(worst_var, (second - mean.norm2()) - h * h);
    }
    const bool pass = made == 1000 && worst_sum <= 1e-12 && worst_mean <= 1e-10 &&
                      worst_var <= 1e-10;
    checks.push_back({{"name", "transition_moments"},
                      {"draws", made},
                      {"max_prob_sum_error", worst_sum},
                      {"max_mean_displacement_error", worst_mean},
                      {"max_trace_var_excess", worst_var},
                      {"pass", pass}});
    if (!pass && all_pass) {
      all_pass = false;
      first_failure = "transition_moments";
    }
  }

  // Greedy rollout consistency at the documented probe nodes.
  {
    const eik::SolveResult solved = eik::fast_march(inst, cfg);
    const eik::GreedyPolicy policy(inst, cfg, solved.field);
    for (const eik::Vec& probe : inst.probe_points) {
      const eik::NodeId node = eik::node_at(grid, probe);
      const eik::McEstimate est = eik::monte_carlo_value(inst, cfg, policy, node, samples, seed);
      const double z = solved.field.at(node);
      // Slack 1e-9 covers the minimizer tolerance folded into the greedy
      // policy; it only matters for deterministic (zero-variance) chains.
      const bool pass = std::abs(est.mean - z) <= 3.0 * est.std_error + 1e-9;
      checks.push_back({{"name", "greedy_rollout"},
                        {"node", node.flat},
                        {"solver_value", z},
                        {"mc_mean", est.mean},
                        {"mc_std_error", est.std_error},
                        {"underpowered", est.underpowered},
                        {"truncated_runs", est.truncated_runs},
                        {"pass", pass}});
      if (!pass && all_pass) {
        all_pass = false;
        first_failure = "greedy_rollout at node " + std::to_string(node.flat);
      }
    }
  }

  eik::RunManifest manifest = make_manifest("mdp-check", common);
  manifest.h_values = {h};
  manifest.seed = seed;
  manifest.samples = samples;
  write_json(common.out_dir, "mdp_check.json",
             {{"manifest", to_json(manifest)},
              {"checks", checks},
              {"underpowered_warning", samples < 100},
              {"all_pass", all_pass}});
  if (!all_pass) {
    std::cerr << "mdp-check: failed gate: " << first_failure << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-time eikonal solver and empirical check harness"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  CommonOpts solve_opts, solvec_opts, conv_opts, compl_opts, semi_opts, mdp_opts;
  double solve_h = 0.05, solvec_h = 0.05, semi_h = 0.0125, mdp_h = 0.05;
  std::vector<double> h_list;
  double margin = 0.0, min_order = 0.8;
  std::vector<long long> grid_sizes{65, 129, 257};
  std::vector<int> z_steps{1, 2, 4};
  bool time_scale = false;
  std::uint64_t seed = 7;
  long long samples = 20000;

  auto* solve = app.add_subcommand("solve", "fast-march a benchmark, write the value field");
  add_common(solve, &solve_opts);
  solve->add_option("--h", solve_h, "mesh step")->required();

  auto* solvec = app.add_subcommand("solve-constrained", "fast-march in state-constrained mode");
  add_common(solvec, &solvec_opts);
  solvec->add_option("--h", solvec_h, "mesh step")->required();

  auto* conv = app.add_subcommand("converge", "mesh refinement sweep and order fit");
  add_common(conv, &conv_opts);
  conv->add_option("--h-list", h_list, "decreasing mesh steps (>= 3)")->required();
  conv->add_option("--margin", margin, "interior margin (default 10 * coarsest h)");
  conv->add_option("--min-order", min_order, "gate: minimum fitted order");

  auto* compl_ = app.add_subcommand("complexity", "fast-marching counter scaling");
  add_common(compl_, &compl_opts);
  compl_->add_option("--grid-sizes", grid_sizes, "per-axis node counts (>= 3 entries)");

  auto* semi = app.add_subcommand("semiconcavity", "second-difference probe of a solved field");
  add_common(semi, &semi_opts);
  semi->add_option("--h", semi_h, "mesh step");
  semi->add_option("--z-steps", z_steps, "offset step counts");
  semi->add_flag("--time-scale", time_scale, "probe T = -log(1-v) instead of v");

  auto* mdp = app.add_subcommand("mdp-check", "transition invariants and greedy rollouts");
  add_common(mdp, &mdp_opts);
  mdp->add_option("--h", mdp_h, "mesh step");
  mdp->add_option("--seed", seed, "rng seed");
  mdp->add_option("--samples", samples, "rollouts per probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_opts, solve_h, false);
    if (solvec->parsed()) return cmd_solve(solvec_opts, solvec_h, true);
    if (conv->parsed()) return cmd_converge(conv_opts, h_list, margin, min_order);
    if (compl_->parsed()) return cmd_complexity(compl_opts, grid_sizes);
    if (semi->parsed()) return cmd_semiconcavity(semi_opts, semi_h, z_steps, time_scale);
    if (mdp->parsed()) return cmd_mdp_check(mdp_opts, mdp_h, seed, samples);
  } catch (const eik::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfig;
}
