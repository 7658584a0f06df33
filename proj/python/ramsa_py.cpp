#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ramsa/config.hpp"
#include "ramsa/problems.hpp"
#include "ramsa/tuning.hpp"
#include "ramsa/validation.hpp"

namespace py = pybind11;
using namespace ramsa;

namespace {

SolverConfig config_for(const Problem& problem, const std::string& kernel,
                        long budget, std::uint64_t seed, double beta1,
                        double s2_0, double s4_0, bool paper_row_defaults,
                        bool trace) {
  RunConfig rc;
  if (paper_row_defaults) {
    try {
      rc = paper_row(problem.name, kernel_from_name(kernel));
    } catch (const LookupError&) {
      // custom problems fall back to the generic defaults
    }
  }
  rc.problem = problem.name;
  rc.kernel = kernel_from_name(kernel);
  if (budget > 0) rc.budget = budget;
  rc.seed = seed;
  if (beta1 > 0) rc.beta1 = beta1;
  if (s2_0 > 0) rc.s2_0 = s2_0;
  if (s4_0 > 0) rc.s4_0 = s4_0;
  rc.trace = trace;
  return rc.materialize(problem);
}

}  // namespace

PYBIND11_MODULE(_ramsa, m) {
  m.doc() = "CVaR-constrained blackbox optimization solver";

  py::register_exception<Error>(m, "RamsaError");

  py::class_<Box>(m, "Box")
      .def(py::init<std::vector<double>, std::vector<double>>())
      .def_readonly("lower", &Box::lower)
      .def_readonly("upper", &Box::upper);

  py::class_<Problem>(m, "Problem")
      .def_readonly("name", &Problem::name)
      .def_readonly("design_dim", &Problem::design_dim)
      .def_readonly("constraint_count", &Problem::constraint_count)
      .def_readonly("box", &Problem::box)
      .def_readonly("x0", &Problem::x0)
      .def("x0_unit", &Problem::x0_unit)
      .def("with_epistemic_means", &Problem::with_epistemic_means)
      .def("set_truncated_noise",
           [](Problem& p, bool on) {
             p.uncertainty.truncate_design_noise = on;
           })
      .def("evaluate",
           [](const Problem& p, const std::vector<double>& x_original,
              const std::vector<double>& noise) {
             return evaluate_raw(p, x_original, noise);
           },
           py::arg("x_original"), py::arg("noise"))
      .def("zero_noise", &Problem::zero_noise);

  py::class_<SolverResult>(m, "SolverResult")
      .def_readonly("x_unit", &SolverResult::x_unit)
      .def_readonly("x_original", &SolverResult::x_original)
      .def_readonly("t", &SolverResult::t)
      .def_readonly("lam", &SolverResult::lambda)
      .def_readonly("alpha", &SolverResult::alpha)
      .def_readonly("iterations", &SolverResult::iterations)
      .def_readonly("budget_used", &SolverResult::budget_used)
      .def_readonly("queries_in_bounds", &SolverResult::queries_in_bounds)
      .def_property_readonly("status", [](const SolverResult& r) {
        switch (r.status) {
          case RunStatus::Complete: return "complete";
          case RunStatus::BudgetExhausted: return "budget-exhausted";
          default: return "aborted";
        }
      });

  py::class_<FeasibilityReport>(m, "FeasibilityReport")
      .def_readonly("mean_objective", &FeasibilityReport::mean_objective)
      .def_readonly("objective_std", &FeasibilityReport::objective_std)
      .def_readonly("constraint_probs", &FeasibilityReport::constraint_probs)
      .def_readonly("prob_std_errors", &FeasibilityReport::prob_std_errors)
      .def_readonly("n_samples", &FeasibilityReport::n_samples)
      .def_readonly("failures", &FeasibilityReport::failures)
      .def_readonly("valid", &FeasibilityReport::valid)
      .def_readonly("success", &FeasibilityReport::success);

  py::class_<TrialReport>(m, "TrialReport")
      .def_readonly("success_count", &TrialReport::success_count)
      .def_readonly("mean_objective", &TrialReport::mean_objective)
      .def_readonly("mean_constraint_probs",
                    &TrialReport::mean_constraint_probs)
      .def_readonly("mean_point", &TrialReport::mean_point)
      .def_readonly("point_std", &TrialReport::point_std)
      .def_property_readonly("runs", [](const TrialReport& t) {
        py::list rows;
        for (const auto& rec : t.runs) {
          py::dict d;
          d["run_id"] = rec.run_id;
          d["seed"] = rec.seed;
          d["success"] = rec.success;
          d["mean_objective"] = rec.feasibility.mean_objective;
          d["constraint_probs"] = rec.feasibility.constraint_probs;
          d["x_original"] = rec.solve.x_original;
          d["evals"] = rec.solve.budget_used;
          rows.append(d);
        }
        return rows;
      });

  py::class_<TuneReport>(m, "TuneReport")
      .def_readonly("grid", &TuneReport::grid)
      .def_readonly("avg_variance", &TuneReport::avg_variance)
      .def_readonly("chosen_beta1", &TuneReport::chosen_beta1)
      .def_readonly("grad_norm_ratio", &TuneReport::grad_norm_ratio)
      .def_readonly("chosen_s2", &TuneReport::chosen_s2)
      .def_readonly("samples", &TuneReport::samples)
      .def_readonly("evaluations_used", &TuneReport::evaluations_used);

  m.def("list_problems", [] { return builtin_problem_names(); });
  m.def("builtin_problem", &builtin_problem, py::arg("name"));
  m.def("sora_reference_point", &sora_reference_point, py::arg("name"));

  m.def("scale_to_box", &scale_to_box, py::arg("x_unit"), py::arg("box"));
  m.def("unit_coordinates", &unit_coordinates, py::arg("x_original"),
        py::arg("box"));
  m.def("output_transform", &output_transform, py::arg("c"));

  m.def("mc_var",
        [](const std::vector<double>& values, double alpha) {
          return mc_var(SampleBatch(values), RiskLevel(alpha));
        },
        py::arg("values"), py::arg("alpha"));
  m.def("mc_cvar",
        [](const std::vector<double>& values, double alpha) {
          return mc_cvar(SampleBatch(values), RiskLevel(alpha));
        },
        py::arg("values"), py::arg("alpha"));

  m.def("solve",
        [](const Problem& problem, const std::string& kernel, long budget,
           std::uint64_t seed, double beta1, double s2_0, double s4_0,
           bool paper_row_defaults) {
          const auto sc =
              config_for(problem, kernel, budget, seed, beta1, s2_0, s4_0,
                         paper_row_defaults, false);
          py::gil_scoped_release release;
          return run(problem, sc);
        },
        py::arg("problem"), py::arg("kernel") = "gaussian",
        py::arg("budget") = 5000, py::arg("seed") = 0, py::arg("beta1") = -1.0,
        py::arg("s2_0") = -1.0, py::arg("s4_0") = -1.0,
        py::arg("paper_row_defaults") = true);

  m.def("trial",
        [](const Problem& problem, const std::string& kernel, int runs,
           long budget, long mc_samples, std::uint64_t seed, double beta1,
           double s2_0, double s4_0, bool paper_row_defaults, int jobs) {
          const auto sc = config_for(problem, kernel, budget, seed, beta1,
                                     s2_0, s4_0, paper_row_defaults, false);
          py::gil_scoped_release release;
          return run_trial(problem, sc, runs, budget, mc_samples, jobs);
        },
        py::arg("problem"), py::arg("kernel") = "gaussian",
        py::arg("runs") = 100, py::arg("budget") = 5000,
        py::arg("mc_samples") = 10000, py::arg("seed") = 0,
        py::arg("beta1") = -1.0, py::arg("s2_0") = -1.0,
        py::arg("s4_0") = -1.0, py::arg("paper_row_defaults") = true,
        py::arg("jobs") = 0);

  m.def("tune",
        [](const Problem& problem, long samples, const std::string& kernel,
           std::uint64_t seed) {
          py::gil_scoped_release release;
          return tune_problem(problem, samples, kernel_from_name(kernel),
                              seed);
        },
        py::arg("problem"), py::arg("samples") = 1000,
        py::arg("kernel") = "gaussian", py::arg("seed") = 0);

  m.def("mc_feasibility",
        [](const Problem& problem, const std::vector<double>& x_unit,
           long n_samples, std::uint64_t seed) {
          py::gil_scoped_release release;
          return mc_feasibility(problem, x_unit, n_samples, seed);
        },
        py::arg("problem"), py::arg("x_unit"), py::arg("n_samples") = 10000,
        py::arg("seed") = 0);

  m.def("worst_case_epistemic",
        [](const Problem& problem, const std::vector<double>& x_unit,
           int resolution, long mc_samples, std::uint64_t seed) {
          const auto grid = EpistemicGrid::for_problem(problem, resolution);
          py::gil_scoped_release release;
          const auto report =
              worst_case_epistemic(problem, x_unit, grid, mc_samples, seed);
          py::gil_scoped_acquire acquire;
          py::list rows;
          for (const auto& row : report.per_constraint) {
            py::dict d;
            d["argmax_means"] = row.argmax_means;
            d["deterministic_value"] = row.deterministic_value;
            d["probability"] = row.probability;
            d["feasible"] = row.feasible;
            rows.append(d);
          }
          py::dict out;
          out["per_constraint"] = rows;
          out["feasible"] = report.feasible;
          return out;
        },
        py::arg("problem"), py::arg("x_unit"), py::arg("resolution") = 15,
        py::arg("mc_samples") = 10000, py::arg("seed") = 0);
}
