#include "msmd/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "msmd/baselines.hpp"

namespace msmd {

OuterSchedule OuterSchedule::fixed(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("outer schedule: alpha must be >= 0");
  return {Kind::kFixed, alpha, 0.0};
}

OuterSchedule OuterSchedule::varying(double rho_step) {
  if (!(rho_step > 0.0))
    throw std::invalid_argument("outer schedule: rho must be > 0");
  return {Kind::kVarying, 0.0, rho_step};
}

double outer_step_size(const OuterSchedule& schedule, int k) {
  if (k < 0) throw std::out_of_range("outer step size: k must be >= 0");
  if (schedule.kind == OuterSchedule::Kind::kFixed) return schedule.alpha;
  return schedule.rho_step / (k + 1);
}

InnerBudgetRule InnerBudgetRule::global_square() {
  return {Kind::kGlobalSquare, 1};
}

InnerBudgetRule InnerBudgetRule::per_iter_square() {
  return {Kind::kPerIterSquare, 1};
}

InnerBudgetRule InnerBudgetRule::explicit_steps_of(int steps) {
  if (steps < 1) throw std::invalid_argument("inner budget: S must be >= 1");
  return {Kind::kExplicit, steps};
}

long inner_budget(const InnerBudgetRule& rule, int k, int K) {
  if (k < 0 || k >= K) throw std::out_of_range("inner budget: need 0 <= k < K");
  switch (rule.kind) {
    case InnerBudgetRule::Kind::kGlobalSquare:
      return static_cast<long>(K + 1) * (K + 1);
    case InnerBudgetRule::Kind::kPerIterSquare:
      return static_cast<long>(k + 1) * (k + 1);
    case InnerBudgetRule::Kind::kExplicit:
      return rule.explicit_steps;
  }
  throw std::logic_error("inner budget: unknown rule kind");
}

namespace {

TrajectoryPoint make_point(int k, const Vec& x, const ProblemInstance& problem,
                           bool record_stationarity) {
  TrajectoryPoint pt;
  pt.k = k;
  pt.x = x;
  pt.f = problem.evaluate(x);
  if (record_stationarity) {
    pt.stationarity = pareto_stationarity_measure(problem.gradient(x));
  }
  return pt;
}

}  // namespace

Trajectory solve(const ProblemInstance& problem, StochasticOracle& oracle,
                 const Vec& x0, const SolveOptions& options) {
  if (options.K < 1) throw std::invalid_argument("solve: K must be >= 1");
  if (x0.size() != problem.n) throw std::invalid_argument("solve: x0 size mismatch");
  const PreferenceSpec* pref = nullptr;
  if (options.preference.has_value() && options.preference->mu != 0.0) {
    pref = &options.preference.value();
  }

  const double c_f = options.gradient_bound;
  if (!(c_f > 0.0)) throw std::invalid_argument("solve: gradient bound must be > 0");
  double radius = c_f;
  std::optional<PreferenceTerm> pref_term;
  if (pref != nullptr) {
    double c_g = pref->c_g > 0.0 ? pref->c_g : c_f;
    radius = std::sqrt(2.0 * (c_f * c_f + pref->mu * pref->mu * c_g * c_g));
    pref_term = PreferenceTerm{pref->w, pref->mu};
  }

  Trajectory traj;
  traj.points.reserve(options.K + 1);
  Vec x = x0;

  for (int k = 0; k < options.K; ++k) {
    TrajectoryPoint pt = make_point(k, x, problem, options.record_stationarity);
    const double alpha = outer_step_size(options.outer, k);
    const long steps = inner_budget(options.budget, k, options.K);

    InnerOptions inner_opts;
    inner_opts.steps = static_cast<int>(steps);
    inner_opts.tail_fraction = options.tail_fraction;
    inner_opts.radius = radius;
    inner_opts.preference = pref_term;

    InnerResult inner = options.inner_hook
                            ? options.inner_hook(oracle, x, options.inner, inner_opts)
                            : run_inner(oracle, x, options.inner, inner_opts);

    pt.alpha = alpha;
    pt.inner_steps = steps;
    pt.d_norm = inner.d_avg.vec.norm();
    traj.points.push_back(std::move(pt));

    x += alpha * inner.d_avg.vec;
    if (!x.allFinite()) {
      traj.failure = "non-finite iterate after outer step " + std::to_string(k);
      return traj;
    }
  }

  TrajectoryPoint last =
      make_point(options.K, x, problem, options.record_stationarity);
  last.alpha = traj.points.back().alpha;
  last.inner_steps = traj.points.back().inner_steps;
  last.d_norm = traj.points.back().d_norm;
  traj.points.push_back(std::move(last));
  return traj;
}

Trajectory solve_with_preference(const ProblemInstance& problem,
                                 StochasticOracle& oracle, const Vec& x0,
                                 const PreferenceSpec& preference,
                                 SolveOptions options) {
  if (preference.mu < 0.0)
    throw std::invalid_argument("preference: mu must be >= 0");
  if (preference.w.size() != problem.m)
    throw std::invalid_argument("preference: weight vector size mismatch");
  // mu = 0 degenerates to the plain method; routing through the same path
  // keeps the two bitwise identical under equal seeds.
  if (preference.mu == 0.0) {
    options.preference.reset();
  } else {
    options.preference = preference;
  }
  return solve(problem, oracle, x0, options);
}

double pareto_stationarity_measure(const Mat& G) {
  if (!G.allFinite())
    throw std::invalid_argument("stationarity: non-finite gradient matrix");
  return std::sqrt(mgda_minnorm(G).value);
}

}  // namespace msmd
