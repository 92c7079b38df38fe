#ifndef MSMD_CORE_HPP_
#define MSMD_CORE_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "msmd/rng.hpp"

namespace msmd {

using Vec = Eigen::VectorXd;
// Gradient matrix convention: row i holds the gradient of objective i, so the
// shape is m x n and every solver consumes convex combinations of rows.
using Mat = Eigen::MatrixXd;

// Sum_i lambda_i * row_i(G). Throws on a row/weight count mismatch.
Vec combo(const Mat& G, const Vec& lambda);

struct ProblemInstance {
  int m = 0;
  int n = 0;
  Vec lower;
  Vec upper;
  std::function<Vec(const Vec&)> evaluate;
  std::function<Mat(const Vec&)> gradient;
  // Parametric description of the known Pareto set, t in [0,1] -> x.
  // Present only for problems whose set has a closed form; analysis-only.
  std::optional<std::function<Vec(double)>> pareto_set;

  void validate() const;  // throws std::invalid_argument on a bad instance
};

// Central differences per objective and coordinate; test oracle only.
// Requires x at least h away from both box faces in every coordinate.
Mat finite_difference_gradient(const ProblemInstance& problem, const Vec& x,
                               double h);

// True gradient plus independent Gaussian noise with per-coordinate standard
// deviation sigma_j = rho * (upper_j - lower_j), drawn row-major.
Mat noisy_gradient(const ProblemInstance& problem, const Vec& x, double rho,
                   Rng& rng);

// Gradient-norm bound estimated from a Latin hypercube probe of the box:
// max over probe points and objectives of ||grad f_i||_2, times `safety`.
double estimate_gradient_bound(const ProblemInstance& problem,
                               int probe_points = 1000, double safety = 1.5,
                               std::uint64_t seed = 0);

// Unbiased gradient oracle. Owns its RNG stream: one oracle per run.
class StochasticOracle {
 public:
  StochasticOracle(const ProblemInstance& problem, double noise_ratio,
                   std::uint64_t seed);

  Mat sample(const Vec& x);
  void sample_into(const Vec& x, Mat& out);

  const ProblemInstance& problem() const { return *problem_; }
  double noise_ratio() const { return rho_; }
  // ||sigma||_2, the variance bound implied by the noise model.
  double delta() const { return delta_; }
  const Vec& sigma() const { return sigma_; }
  std::uint64_t draw_count() const { return draws_; }

 private:
  const ProblemInstance* problem_;
  double rho_;
  Vec sigma_;
  double delta_;
  Rng rng_;
  std::uint64_t draws_ = 0;
};

}  // namespace msmd

#endif  // MSMD_CORE_HPP_
