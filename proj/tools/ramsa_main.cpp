#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "ramsa/config.hpp"
#include "ramsa/problems.hpp"
#include "ramsa/tuning.hpp"
#include "ramsa/validation.hpp"

namespace {

using namespace ramsa;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

Problem load_problem(const std::string& name,
                     const std::string& problem_config) {
  if (!problem_config.empty())
    return problem_from_config(read_file(problem_config));
  return builtin_problem(name);
}

std::vector<double> load_point(const std::string& spec, const Problem& p) {
  if (spec == "sora") return sora_reference_point(p.name);
  std::vector<double> x;
  std::ifstream in(spec);
  if (!in) throw Error("cannot open point file '" + spec + "'");
  std::string token;
  while (std::getline(in, token, ',')) {
    std::istringstream item(token);
    double v;
    while (item >> v) x.push_back(v);
  }
  if (x.size() != static_cast<std::size_t>(p.design_dim))
    throw Error("point file holds " + std::to_string(x.size()) +
                " coordinates, problem needs " + std::to_string(p.design_dim));
  return x;
}

void print_vector(const char* label, const std::vector<double>& v) {
  std::printf("%s", label);
  for (std::size_t i = 0; i < v.size(); ++i)
    std::printf("%s%.8g", i ? ", " : "", v[i]);
  std::printf("\n");
}

void write_trace_csv(const std::string& path, const Problem& p,
                     const SolverResult& result) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write trace '" + path + "'");
  out << "k";
  for (int i = 1; i <= p.design_dim; ++i) out << ",x" << i;
  for (int j = 0; j <= p.constraint_count; ++j) out << ",t" << j;
  for (int j = 1; j <= p.constraint_count; ++j) out << ",lambda" << j;
  for (int j = 0; j <= p.constraint_count; ++j) out << ",alpha" << j;
  out << ",s1,s2,s3,s4\n";
  char buf[32];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.12g", v);
    out << buf;
  };
  for (const auto& row : result.trace) {
    out << row.k;
    for (double v : row.x) emit(v);
    for (double v : row.t) emit(v);
    for (double v : row.lambda) emit(v);
    for (double v : row.alpha) emit(v);
    emit(row.s1);
    emit(row.s2);
    emit(row.s3);
    emit(row.s4);
    out << "\n";
  }
}

void write_trial_csv(const std::string& path, const Problem& p,
                     const TrialReport& report) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write report '" + path + "'");
  out << "run_id,seed,success,mean_obj";
  for (int j = 1; j <= p.constraint_count; ++j) out << ",prob_" << j;
  for (int i = 1; i <= p.design_dim; ++i) out << ",x_" << i;
  out << ",evals\n";
  char buf[32];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.10g", v);
    out << buf;
  };
  for (const auto& rec : report.runs) {
    out << rec.run_id << "," << rec.seed << "," << (rec.success ? 1 : 0);
    emit(rec.feasibility.mean_objective);
    for (double pr : rec.feasibility.constraint_probs) emit(pr);
    for (double x : rec.solve.x_original) emit(x);
    out << "," << rec.solve.budget_used << "\n";
  }
}

struct CommonArgs {
  std::string problem;  // empty: from config file, else SCD
  std::string problem_config;
  std::string config_file;
  bool use_paper_row = false;
  std::string kernel;
  long budget = -1;
  long seed = -1;
  long k_max = -2;  // -2: unset, -1: auto

  std::string problem_name() const {
    return problem.empty() ? "SCD" : problem;
  }
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--problem", args.problem, "builtin problem name");
  cmd->add_option("--problem-config", args.problem_config,
                  "custom problem declaration file");
  auto* cfg =
      cmd->add_option("--config", args.config_file, "run configuration file");
  cmd->add_flag("--paper-row", args.use_paper_row,
                "use the published hyperparameter row for the problem")
      ->excludes(cfg);
  cmd->add_option("--kernel", args.kernel, "gaussian | truncated");
  cmd->add_option("--budget", args.budget, "blackbox evaluations per run");
  cmd->add_option("--seed", args.seed, "master seed (all randomness)");
  cmd->add_option("--k-max", args.k_max, "iteration cap (-1 = from budget)");
}

RunConfig resolve_config(const CommonArgs& args) {
  RunConfig rc;
  if (!args.config_file.empty())
    rc = parse_run_config(read_file(args.config_file));
  if (!args.problem.empty()) rc.problem = args.problem;
  if (args.use_paper_row)
    rc = paper_row(rc.problem, args.kernel.empty()
                                   ? KernelKind::Gaussian
                                   : kernel_from_name(args.kernel));
  if (!args.kernel.empty()) rc.kernel = kernel_from_name(args.kernel);
  if (args.budget >= 0) rc.budget = args.budget;
  if (args.seed >= 0) rc.seed = static_cast<std::uint64_t>(args.seed);
  if (args.k_max >= -1) rc.k_max = args.k_max;
  return rc;
}

int cmd_list() {
  for (const auto& name : builtin_problem_names()) {
    const Problem p = builtin_problem(name);
    std::printf("%-24s n=%d m=%d\n", name.c_str(), p.design_dim,
                p.constraint_count);
  }
  return 0;
}

int cmd_tune(const CommonArgs& common, long samples,
             const std::vector<double>& grid, const std::string& out_path) {
  const Problem problem =
      load_problem(common.problem_name(), common.problem_config);
  const KernelKind kind = common.kernel.empty()
                              ? KernelKind::Gaussian
                              : kernel_from_name(common.kernel);
  const std::uint64_t seed =
      common.seed >= 0 ? static_cast<std::uint64_t>(common.seed) : 0;
  const TuneReport report = tune_problem(problem, samples, kind, seed, grid);

  std::printf("tuning %s with the %s kernel, N=%ld samples per width\n",
              problem.name.c_str(), kernel_name(kind).c_str(), report.samples);
  std::printf("%-10s %s\n", "beta1", "avg variance of the design gradient");
  for (std::size_t i = 0; i < report.grid.size(); ++i)
    std::printf("%-10.4g %.6g\n", report.grid[i], report.avg_variance[i]);
  std::printf("chosen beta1      = %.6g (half the argmin)\n",
              report.chosen_beta1);
  std::printf("|mean g_x|/sqrt(n) = %.6g at beta1 = %.4g\n",
              report.grad_norm_ratio, report.reference_beta1);
  std::printf("chosen s2_0       = %.6g (coefficient %.4g)\n", report.chosen_s2,
              report.step_coefficient);
  std::printf("evaluations used  = %ld\n", report.evaluations_used);

  RunConfig rc;
  rc.problem = problem.name;
  rc.kernel = kind;
  rc.truncate_noise = kind == KernelKind::TruncatedGaussian;
  rc.beta1 = report.chosen_beta1;
  rc.s2_0 = report.chosen_s2;
  rc.alpha_star_objective = 0.0;
  if (common.budget >= 0) rc.budget = common.budget;
  if (common.seed >= 0) rc.seed = static_cast<std::uint64_t>(common.seed);
  const std::string emitted = emit_run_config(rc);
  if (!out_path.empty()) {
    write_file(out_path, emitted);
    std::printf("wrote %s\n", out_path.c_str());
  } else {
    std::printf("\n# ready-to-use configuration\n%s", emitted.c_str());
  }
  return 0;
}

int cmd_solve(const CommonArgs& common, const std::string& trace_path) {
  RunConfig rc = resolve_config(common);
  Problem problem = load_problem(rc.problem, common.problem_config);
  if (rc.truncate_noise) problem.uncertainty.truncate_design_noise = true;
  if (!trace_path.empty()) rc.trace = true;
  SolverConfig sc = rc.materialize(problem);
  const SolverResult result = run(problem, sc);

  std::printf("problem %s, kernel %s, seed %llu\n", problem.name.c_str(),
              kernel_name(rc.kernel).c_str(),
              static_cast<unsigned long long>(rc.seed));
  std::printf("iterations %ld, evaluations %ld, status %s\n",
              result.iterations, result.budget_used,
              result.status == RunStatus::Complete
                  ? "complete"
                  : result.status == RunStatus::BudgetExhausted
                        ? "budget-exhausted"
                        : "aborted");
  if (!result.diagnostic.empty())
    std::printf("diagnostic: %s\n", result.diagnostic.c_str());
  print_vector("x (unit):      ", result.x_unit);
  print_vector("x (original):  ", result.x_original);
  print_vector("t:             ", result.t);
  print_vector("lambda:        ", result.lambda);
  print_vector("alpha:         ", result.alpha);
  if (rc.kernel == KernelKind::TruncatedGaussian)
    std::printf("queries in bounds: %s\n",
                result.queries_in_bounds ? "yes" : "NO");
  if (!trace_path.empty()) {
    write_trace_csv(trace_path, problem, result);
    std::printf("trace written to %s\n", trace_path.c_str());
  }
  return 0;
}

int cmd_trial(const CommonArgs& common, int runs, long mc, int jobs,
              const std::string& out_path) {
  RunConfig rc = resolve_config(common);
  Problem problem = load_problem(rc.problem, common.problem_config);
  if (rc.truncate_noise) problem.uncertainty.truncate_design_noise = true;
  SolverConfig sc = rc.materialize(problem);
  const TrialReport report =
      run_trial(problem, sc, runs, rc.budget, mc, jobs);

  std::printf("trial: %s, %d runs x %ld evaluations, %ld MC samples\n",
              problem.name.c_str(), runs, rc.budget, mc);
  std::printf("successes: %d / %d\n", report.success_count, runs);
  std::printf("mean validated objective: %.6g\n", report.mean_objective);
  print_vector("mean constraint probabilities: ",
               report.mean_constraint_probs);
  print_vector("mean point:  ", report.mean_point);
  print_vector("point std:   ", report.point_std);
  if (!out_path.empty()) {
    write_trial_csv(out_path, problem, report);
    std::printf("per-run report written to %s\n", out_path.c_str());
  }
  return 0;
}

int cmd_validate(const CommonArgs& common, const std::string& point, long mc) {
  const Problem problem =
      load_problem(common.problem_name(), common.problem_config);
  const auto x = load_point(point, problem);
  const auto x_unit = unit_coordinates(x, problem.box);
  const std::uint64_t seed =
      common.seed >= 0 ? static_cast<std::uint64_t>(common.seed) : 0;
  const FeasibilityReport report = mc_feasibility(problem, x_unit, mc, seed);
  print_vector("point: ", x);
  std::printf("samples %ld (failures %ld%s)\n", report.n_samples,
              report.failures, report.valid ? "" : ", REPORT INVALID");
  std::printf("mean objective: %.8g (std %.4g)\n", report.mean_objective,
              report.objective_std);
  for (std::size_t j = 0; j < report.constraint_probs.size(); ++j)
    std::printf("P(C%zu <= 0) = %.6f +- %.6f\n", j + 1,
                report.constraint_probs[j], report.prob_std_errors[j]);
  std::printf("success (all >= %.2f): %s\n", kSuccessProbability,
              report.success ? "yes" : "no");
  return 0;
}

int cmd_epistemic(const std::string& variant, const std::string& point,
                  int resolution, long mc, long seed_arg,
                  const std::string& problem_config) {
  const std::string name = variant == "points" ? "VSI-epistemic-points"
                                               : "VSI-epistemic-interval";
  const Problem problem = load_problem(name, problem_config);
  const auto x = load_point(point, problem);
  const auto x_unit = unit_coordinates(x, problem.box);
  const std::uint64_t seed =
      seed_arg >= 0 ? static_cast<std::uint64_t>(seed_arg) : 0;

  print_vector("point: ", x);
  if (variant == "points") {
    const auto idx = problem.uncertainty.epistemic_indices();
    if (idx.size() != 2)
      throw Error("the points check expects exactly two epistemic "
                  "components");
    bool all_ok = true;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const auto& c8 = problem.uncertainty.components[idx[0]];
        const auto& c9 = problem.uncertainty.components[idx[1]];
        const std::vector<double> means = {a ? c8.p2 : c8.p1,
                                           b ? c9.p2 : c9.p1};
        const auto rep =
            mc_feasibility(problem.with_epistemic_means(means), x_unit, mc,
                           derive_seed(seed, 11,
                                       static_cast<std::uint64_t>(2 * a + b)));
        double worst = 1.0;
        for (double pr : rep.constraint_probs) worst = std::min(worst, pr);
        std::printf("means (%.3f, %.3f): worst constraint prob %.6f -> %s\n",
                    means[0], means[1], worst, rep.success ? "pass" : "FAIL");
        all_ok = all_ok && rep.success;
      }
    std::printf("feasible under points epistemic uncertainty: %s\n",
                all_ok ? "yes" : "no");
    return 0;
  }
  const auto grid = EpistemicGrid::for_problem(problem, resolution);
  const auto report = worst_case_epistemic(problem, x_unit, grid, mc, seed);
  for (std::size_t j = 0; j < report.per_constraint.size(); ++j) {
    const auto& row = report.per_constraint[j];
    std::printf("C%zu: argmax means (", j + 1);
    for (std::size_t d = 0; d < row.argmax_means.size(); ++d)
      std::printf("%s%.4f", d ? ", " : "", row.argmax_means[d]);
    std::printf("), deterministic value %.6g, P(C%zu <= 0) = %.6f -> %s\n",
                row.deterministic_value, j + 1, row.probability,
                row.feasible ? "pass" : "FAIL");
  }
  std::printf("feasible under interval epistemic uncertainty: %s\n",
              report.feasible ? "yes" : "no");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CVaR-constrained blackbox optimization solver"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list builtin problems");

  CommonArgs tune_args;
  long tune_samples = 1000;
  std::vector<double> tune_grid;
  std::string tune_out;
  auto* tune = app.add_subcommand("tune", "hyperparameter selection rules");
  add_common(tune, tune_args);
  tune->add_option("--samples", tune_samples, "gradient samples per width");
  tune->add_option("--grid", tune_grid, "candidate widths")->delimiter(',');
  tune->add_option("--out", tune_out, "write the tuned configuration here");

  CommonArgs solve_args;
  std::string solve_trace;
  auto* solve = app.add_subcommand("solve", "single seeded solver run");
  add_common(solve, solve_args);
  solve->add_option("--trace", solve_trace, "per-iteration CSV trace path");

  CommonArgs trial_args;
  int trial_runs = 100;
  long trial_mc = 10000;
  int trial_jobs = 0;
  std::string trial_out;
  auto* trial = app.add_subcommand("trial", "repeated seeded runs with "
                                            "Monte-Carlo validation");
  add_common(trial, trial_args);
  trial->add_option("--runs", trial_runs, "number of independent runs");
  trial->add_option("--mc", trial_mc, "Monte-Carlo samples per validation");
  trial->add_option("--jobs", trial_jobs, "parallel runs (0 = cores)");
  trial->add_option("--out", trial_out, "per-run CSV report path");

  CommonArgs validate_args;
  std::string validate_point;
  long validate_mc = 10000;
  auto* validate =
      app.add_subcommand("validate", "Monte-Carlo check of a given point");
  add_common(validate, validate_args);
  validate->add_option("--point", validate_point,
                       "coordinate file (original units) or 'sora'")
      ->required();
  validate->add_option("--mc", validate_mc, "Monte-Carlo samples");

  std::string epi_variant = "interval", epi_point, epi_problem_config;
  int epi_grid = 15;
  long epi_mc = 10000, epi_seed = -1;
  auto* epistemic = app.add_subcommand(
      "epistemic", "worst-case feasibility under epistemic means");
  epistemic->add_option("--variant", epi_variant, "points | interval")
      ->check(CLI::IsMember({"points", "interval"}));
  epistemic->add_option("--point", epi_point,
                        "coordinate file (original units) or 'sora'")
      ->required();
  epistemic->add_option("--grid", epi_grid, "grid resolution per axis");
  epistemic->add_option("--mc", epi_mc, "Monte-Carlo samples per check");
  epistemic->add_option("--seed", epi_seed, "master seed");
  epistemic->add_option("--problem-config", epi_problem_config,
                        "custom problem declaration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (list->parsed()) return cmd_list();
    if (tune->parsed())
      return cmd_tune(tune_args, tune_samples, tune_grid, tune_out);
    if (solve->parsed()) return cmd_solve(solve_args, solve_trace);
    if (trial->parsed())
      return cmd_trial(trial_args, trial_runs, trial_mc, trial_jobs,
                       trial_out);
    if (validate->parsed())
      return cmd_validate(validate_args, validate_point, validate_mc);
    if (epistemic->parsed())
      return cmd_epistemic(epi_variant, epi_point, epi_grid, epi_mc, epi_seed,
                           epi_problem_config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
