#ifndef MSMD_BASELINES_HPP_
#define MSMD_BASELINES_HPP_

#include <utility>

#include "msmd/geometry.hpp"

namespace msmd {

struct MinNormSolution {
  SimplexWeights lambda;
  Vec d;             // -sum_i lambda_i g_i
  double value;      // ||sum_i lambda_i g_i||_2^2
  bool converged;    // Frank-Wolfe hit the gap tolerance (always true for m=2)
};

// Minimal l2-norm convex combination of the gradient rows. Closed form for
// m = 2, Frank-Wolfe with exact line search for m >= 3.
MinNormSolution mgda_minnorm(const Mat& G, int max_fw_iters = 500,
                             double tol = 1e-8);

// Gradient surgery: project each task gradient against the others in a
// uniformly random order whenever the running dot product is negative, then
// return the negated sum. Zero-norm opposing gradients are skipped.
Vec pcgrad_direction(const Mat& G, Rng& rng);

// One stochastic multi-gradient step: min-norm solve on a single sampled
// matrix, then descend along the sampled combination.
Vec smg_step(StochasticOracle& oracle, const Vec& x, double alpha);

struct CrMogmState {
  SimplexWeights lambda_tracked;
  double beta;  // in [0, 1]
};

// Correlation-reduced step: blend the sampled min-norm weights into the
// tracked weights, then descend along the blended combination.
std::pair<CrMogmState, Vec> cr_mogm_step(const CrMogmState& state,
                                         StochasticOracle& oracle, const Vec& x,
                                         double alpha);

// Euclidean projection onto the standard simplex.
Vec project_to_simplex(const Vec& v);

struct SdmgradLiteResult {
  Vec x_next;
  SimplexWeights lambda;
};

// Subproblem-SGD reconstruction: S projected-SGD steps on lambda, each using
// two independent gradient samples for the Gram estimate plus a third
// independent sample that refreshes the move direction; three draws per inner
// step. x moves once, along the final direction sample.
SdmgradLiteResult sdmgrad_lite_step(StochasticOracle& oracle, const Vec& x,
                                    double alpha, int inner_steps, double gamma);

enum class ScalarOptKind { kSgd, kAdam, kRmsProp };

struct WeightedSumState {
  ScalarOptKind kind = ScalarOptKind::kSgd;
  long step_count = 0;
  Vec first_moment;   // Adam
  Vec second_moment;  // Adam / RMSProp

  static WeightedSumState init(ScalarOptKind kind, int n);
};

// Single-objective update on the equally weighted sum (1/m) sum_i f_i using
// one sampled gradient matrix averaged across rows. Adam: beta1 = 0.9,
// beta2 = 0.999, eps = 1e-8; RMSProp: decay 0.99, eps = 1e-8.
std::pair<WeightedSumState, Vec> weighted_sum_step(const WeightedSumState& state,
                                                   StochasticOracle& oracle,
                                                   const Vec& x, double alpha);

}  // namespace msmd

#endif  // MSMD_BASELINES_HPP_
