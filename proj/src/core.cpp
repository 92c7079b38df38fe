#include "msmd/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace msmd {

Vec combo(const Mat& G, const Vec& lambda) {
  if (G.rows() != lambda.size()) {
    throw std::invalid_argument("combo: gradient matrix has " +
                                std::to_string(G.rows()) + " rows but " +
                                std::to_string(lambda.size()) +
                                " weights were given");
  }
  return G.transpose() * lambda;
}

void ProblemInstance::validate() const {
  if (n < 1) throw std::invalid_argument("problem: n must be >= 1");
  if (m < 2) throw std::invalid_argument("problem: m must be >= 2");
  if (lower.size() != n || upper.size() != n)
    throw std::invalid_argument("problem: bound size mismatch");
  for (int j = 0; j < n; ++j) {
    if (!(lower[j] < upper[j]))
      throw std::invalid_argument("problem: lower bound must be < upper bound in coordinate " +
                                  std::to_string(j));
  }
  if (!evaluate || !gradient)
    throw std::invalid_argument("problem: evaluate and gradient are required");
}

Mat finite_difference_gradient(const ProblemInstance& problem, const Vec& x,
                               double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite differences: h must be > 0");
  for (int j = 0; j < problem.n; ++j) {
    if (x[j] - h < problem.lower[j] || x[j] + h > problem.upper[j]) {
      throw std::invalid_argument(
          "finite differences: point is within h of the box boundary in coordinate " +
          std::to_string(j));
    }
  }
  Mat out(problem.m, problem.n);
  Vec xp = x, xm = x;
  for (int j = 0; j < problem.n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    Vec fp = problem.evaluate(xp);
    Vec fm = problem.evaluate(xm);
    out.col(j) = (fp - fm) / (2.0 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return out;
}

Mat noisy_gradient(const ProblemInstance& problem, const Vec& x, double rho,
                   Rng& rng) {
  Mat g = problem.gradient(x);
  if (rho == 0.0) return g;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      g(i, j) += rho * (problem.upper[j] - problem.lower[j]) * rng.normal();
    }
  }
  return g;
}

double estimate_gradient_bound(const ProblemInstance& problem, int probe_points,
                               double safety, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x1A7B5CEDULL, 0));
  const int n = problem.n;
  // Latin hypercube: one stratified sample per stratum and coordinate, with
  // an independent stratum permutation per coordinate.
  std::vector<std::vector<int>> perm(n, std::vector<int>(probe_points));
  for (int j = 0; j < n; ++j) {
    std::iota(perm[j].begin(), perm[j].end(), 0);
    for (int i = probe_points - 1; i > 0; --i) {
      int swap_with = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[j][i], perm[j][swap_with]);
    }
  }
  double worst = 0.0;
  Vec x(n);
  for (int i = 0; i < probe_points; ++i) {
    for (int j = 0; j < n; ++j) {
      double u = (perm[j][i] + rng.uniform01()) / probe_points;
      x[j] = problem.lower[j] + u * (problem.upper[j] - problem.lower[j]);
    }
    Mat g = problem.gradient(x);
    for (int r = 0; r < g.rows(); ++r) worst = std::max(worst, g.row(r).norm());
  }
  return worst * safety;
}

StochasticOracle::StochasticOracle(const ProblemInstance& problem,
                                   double noise_ratio, std::uint64_t seed)
    : problem_(&problem), rho_(noise_ratio), rng_(seed) {
  if (noise_ratio < 0.0)
    throw std::invalid_argument("oracle: noise ratio must be >= 0");
  problem.validate();
  sigma_ = rho_ * (problem.upper - problem.lower);
  delta_ = sigma_.norm();
}

Mat StochasticOracle::sample(const Vec& x) {
  Mat out;
  sample_into(x, out);
  return out;
}

void StochasticOracle::sample_into(const Vec& x, Mat& out) {
  ++draws_;
  out = problem_->gradient(x);
  if (rho_ == 0.0) return;
  for (int i = 0; i < out.rows(); ++i) {
    for (int j = 0; j < out.cols(); ++j) {
      out(i, j) += sigma_[j] * rng_.normal();
    }
  }
}

}  // namespace msmd
