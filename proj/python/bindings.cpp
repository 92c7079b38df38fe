#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "msmd/analysis.hpp"
#include "msmd/baselines.hpp"
#include "msmd/benchmarks.hpp"
#include "msmd/experiment.hpp"
#include "msmd/solver.hpp"

namespace py = pybind11;

namespace {

msmd::SolveOptions build_options(const msmd::ProblemInstance& problem, int K,
                                 const std::string& outer, double alpha,
                                 double rho_step, const std::string& inner,
                                 double theta, double gamma, const std::string& budget,
                                 int S, double r, double cf, double rho,
                                 bool record_stationarity) {
  msmd::SolveOptions options;
  options.K = K;
  options.outer = outer == "varying" ? msmd::OuterSchedule::varying(rho_step)
                                     : msmd::OuterSchedule::fixed(alpha);
  double delta = rho * (problem.upper - problem.lower).norm();
  if (inner == "fixed") {
    options.inner = msmd::InnerSchedule::fixed(
        theta, msmd::compute_m_star(problem.m, cf, delta));
  } else if (inner == "varying") {
    options.inner = msmd::InnerSchedule::varying(
        theta, msmd::compute_m_star(problem.m, cf, delta));
  } else {
    options.inner = msmd::InnerSchedule::explicit_gamma(gamma);
  }
  if (budget == "global-square") {
    options.budget = msmd::InnerBudgetRule::global_square();
  } else if (budget == "per-iter-square") {
    options.budget = msmd::InnerBudgetRule::per_iter_square();
  } else {
    options.budget = msmd::InnerBudgetRule::explicit_steps_of(S);
  }
  options.tail_fraction = r;
  options.gradient_bound = cf;
  options.record_stationarity = record_stationarity;
  return options;
}

py::dict trajectory_to_dict(const msmd::Trajectory& traj, int n, int m) {
  const auto rows = static_cast<Eigen::Index>(traj.points.size());
  Eigen::MatrixXd xs(rows, n), fs(rows, m);
  Eigen::VectorXd d_norms(rows), stationarity(rows);
  bool have_stat = true;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& pt = traj.points[i];
    xs.row(i) = pt.x.transpose();
    fs.row(i) = pt.f.transpose();
    d_norms[i] = pt.d_norm;
    if (pt.stationarity.has_value()) {
      stationarity[i] = *pt.stationarity;
    } else {
      have_stat = false;
    }
  }
  py::dict out;
  out["x"] = xs;
  out["f"] = fs;
  out["d_norm"] = d_norms;
  if (have_stat) out["stationarity"] = stationarity;
  out["failed"] = traj.failure.has_value();
  if (traj.failure.has_value()) out["failure"] = *traj.failure;
  return out;
}

}  // namespace

PYBIND11_MODULE(_msmd, mod) {
  mod.doc() = "multi-gradient stochastic mirror descent toolkit";

  mod.def("list_problems", [] { return msmd::benchmark_names(); });

  mod.def("problem_info", [](const std::string& name) {
    msmd::BenchmarkSpec spec = msmd::get_problem(name);
    py::dict out;
    out["name"] = spec.name;
    out["m"] = spec.problem.m;
    out["n"] = spec.problem.n;
    out["lower"] = spec.problem.lower;
    out["upper"] = spec.problem.upper;
    out["reference_point"] = spec.reference_point;
    return out;
  });

  mod.def("evaluate", [](const std::string& name, const msmd::Vec& x) {
    return msmd::get_problem(name).problem.evaluate(x);
  });

  mod.def("gradient", [](const std::string& name, const msmd::Vec& x) {
    return msmd::get_problem(name).problem.gradient(x);
  });

  mod.def(
      "multi_start",
      [](const std::string& name, int n_starts, std::uint64_t seed) {
        msmd::BenchmarkSpec spec = msmd::get_problem(name);
        auto pts = msmd::multi_start(spec.problem, n_starts, seed);
        Eigen::MatrixXd out(n_starts, spec.problem.n);
        for (int i = 0; i < n_starts; ++i) out.row(i) = pts[i].transpose();
        return out;
      },
      py::arg("problem"), py::arg("n_starts"), py::arg("seed") = 0);

  mod.def(
      "solve",
      [](const std::string& name, const msmd::Vec& x0, int K, double alpha,
         double gamma, int S, double r, double rho, std::uint64_t seed, double mu,
         std::optional<msmd::Vec> w, const std::string& outer, double rho_step,
         const std::string& inner, double theta, const std::string& budget,
         double cf, bool record_stationarity) {
        msmd::BenchmarkSpec spec = msmd::get_problem(name);
        const msmd::ProblemInstance& problem = spec.problem;
        double bound = cf > 0.0 ? cf : msmd::estimate_gradient_bound(problem);
        msmd::SolveOptions options =
            build_options(problem, K, outer, alpha, rho_step, inner, theta, gamma,
                          budget, S, r, bound, rho, record_stationarity);
        msmd::StochasticOracle oracle(problem, rho, seed);
        msmd::Trajectory traj;
        if (mu > 0.0 || w.has_value()) {
          msmd::Vec weights = w.has_value()
                                  ? *w
                                  : msmd::Vec::Constant(problem.m, 1.0 / problem.m);
          msmd::PreferenceSpec pref{msmd::SimplexWeights(weights), mu, bound, -1.0};
          traj = msmd::solve_with_preference(problem, oracle, x0, pref, options);
        } else {
          traj = msmd::solve(problem, oracle, x0, options);
        }
        py::dict out = trajectory_to_dict(traj, problem.n, problem.m);
        out["oracle_draws"] = oracle.draw_count();
        out["cf"] = bound;
        return out;
      },
      py::arg("problem"), py::arg("x0"), py::arg("K") = 100,
      py::arg("alpha") = 0.01, py::arg("gamma") = 0.05, py::arg("S") = 300,
      py::arg("r") = 0.5, py::arg("rho") = 0.5, py::arg("seed") = 0,
      py::arg("mu") = 0.0, py::arg("w") = std::nullopt, py::arg("outer") = "fixed",
      py::arg("rho_step") = 1.0, py::arg("inner") = "explicit",
      py::arg("theta") = 1.0, py::arg("budget") = "explicit", py::arg("cf") = 0.0,
      py::arg("record_stationarity") = false);

  mod.def(
      "mgda_minnorm",
      [](const msmd::Mat& G, int max_fw_iters, double tol) {
        msmd::MinNormSolution sol = msmd::mgda_minnorm(G, max_fw_iters, tol);
        py::dict out;
        out["lambda"] = sol.lambda.values();
        out["d"] = sol.d;
        out["value"] = sol.value;
        out["converged"] = sol.converged;
        return out;
      },
      py::arg("G"), py::arg("max_fw_iters") = 500, py::arg("tol") = 1e-8);

  mod.def(
      "pcgrad_direction",
      [](const msmd::Mat& G, std::uint64_t seed) {
        msmd::Rng rng(seed);
        return msmd::pcgrad_direction(G, rng);
      },
      py::arg("G"), py::arg("seed") = 0);

  mod.def("pareto_stationarity_measure", &msmd::pareto_stationarity_measure);

  mod.def("compute_m_star", &msmd::compute_m_star, py::arg("m"), py::arg("cf"),
          py::arg("delta"));
  mod.def("compute_m_star_preference", &msmd::compute_m_star_preference,
          py::arg("m"), py::arg("cf"), py::arg("delta"), py::arg("mu"),
          py::arg("cg"), py::arg("delta0"));

  mod.def(
      "entropy_prox",
      [](const msmd::Vec& lam, const msmd::Vec& exponent) {
        return msmd::entropy_prox(msmd::SimplexWeights(lam), exponent).values();
      },
      py::arg("lam"), py::arg("exponent"));

  mod.def(
      "euclidean_prox",
      [](const msmd::Vec& d, double radius, const msmd::Vec& step) {
        return msmd::euclidean_prox(msmd::Direction(d, radius), step).vec;
      },
      py::arg("d"), py::arg("radius"), py::arg("step"));

  mod.def("nondominated_filter", [](const Eigen::MatrixXd& points) {
    std::vector<msmd::Vec> pts;
    pts.reserve(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i)
      pts.push_back(points.row(i).transpose());
    msmd::ParetoFront front = msmd::nondominated_filter(pts);
    std::vector<int> indices;
    indices.reserve(front.points.size());
    for (const auto& pt : front.points) indices.push_back(pt.origin);
    return indices;
  });

  mod.def("hypervolume", [](const Eigen::MatrixXd& points, const msmd::Vec& ref) {
    std::vector<msmd::Vec> pts;
    pts.reserve(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i)
      pts.push_back(points.row(i).transpose());
    return msmd::hypervolume(msmd::nondominated_filter(pts), ref);
  });

  mod.def("bk1_front_distance", &msmd::bk1_front_distance);
  mod.def("rate_slope", &msmd::rate_slope, py::arg("K_values"), py::arg("means"));
}
