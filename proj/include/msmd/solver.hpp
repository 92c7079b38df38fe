#ifndef MSMD_SOLVER_HPP_
#define MSMD_SOLVER_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "msmd/inner_smd.hpp"

namespace msmd {

struct OuterSchedule {
  enum class Kind { kFixed, kVarying };

  Kind kind = Kind::kFixed;
  double alpha = 0.0;     // fixed
  double rho_step = 0.0;  // varying: alpha_k = rho_step / (k + 1)

  static OuterSchedule fixed(double alpha);
  static OuterSchedule varying(double rho_step);
};

double outer_step_size(const OuterSchedule& schedule, int k);

struct InnerBudgetRule {
  enum class Kind { kGlobalSquare, kPerIterSquare, kExplicit };

  Kind kind = Kind::kExplicit;
  int explicit_steps = 1;

  static InnerBudgetRule global_square();
  static InnerBudgetRule per_iter_square();
  static InnerBudgetRule explicit_steps_of(int steps);
};

long inner_budget(const InnerBudgetRule& rule, int k, int K);

struct PreferenceSpec {
  SimplexWeights w;
  double mu = 0.0;
  double c_g = 0.0;     // preference-gradient bound; defaults to C_f when <= 0
  double delta0 = -1.0; // preference variance bound; defaults to delta when < 0
};

struct TrajectoryPoint {
  int k = 0;
  Vec x;
  Vec f;
  double alpha = 0.0;      // step taken from this iterate (last step at k = K)
  long inner_steps = 0;    // S_k (same convention)
  double d_norm = 0.0;     // ||d tilde|| of that step
  std::optional<double> stationarity;  // ||d*|| from the true gradients
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;  // length K + 1, k strictly increasing
  std::optional<std::string> failure;   // set when the run aborted early

  const TrajectoryPoint& terminal() const { return points.back(); }
};

// Test hook: replaces the stochastic inner solve (e.g. with the analytic
// min-norm solution) while keeping the outer loop identical.
using InnerSolveHook = std::function<InnerResult(
    StochasticOracle&, const Vec&, const InnerSchedule&, const InnerOptions&)>;

struct SolveOptions {
  int K = 1;
  OuterSchedule outer;
  InnerSchedule inner;
  InnerBudgetRule budget;
  double tail_fraction = 0.5;  // r
  double gradient_bound = 1.0; // C_f, sets the ball radius
  bool record_stationarity = false;
  std::optional<PreferenceSpec> preference;
  InnerSolveHook inner_hook;   // empty = run_inner
};

// Outer loop: x_{k+1} = x_k + alpha_k * d_avg. The averaged direction
// approximates the negated min-norm combination, so "+" moves downhill.
Trajectory solve(const ProblemInstance& problem, StochasticOracle& oracle,
                 const Vec& x0, const SolveOptions& options);

Trajectory solve_with_preference(const ProblemInstance& problem,
                                 StochasticOracle& oracle, const Vec& x0,
                                 const PreferenceSpec& preference,
                                 SolveOptions options);

// ||sum_i lambda*_i g_i||_2 with lambda* the exact min-norm weights; zero
// exactly at Pareto-stationary points.
double pareto_stationarity_measure(const Mat& G);

}  // namespace msmd

#endif  // MSMD_SOLVER_HPP_
