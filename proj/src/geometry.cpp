#include "msmd/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace msmd {

namespace {
constexpr double kSimplexSumTol = 1e-12;
constexpr double kBallTol = 1e-9;
constexpr double kWeightFloor = 1e-300;
}  // namespace

SimplexWeights::SimplexWeights(Vec w) : w_(std::move(w)) {
  if (w_.size() < 1) throw std::invalid_argument("simplex: empty weight vector");
  double sum = 0.0;
  for (int i = 0; i < w_.size(); ++i) {
    if (!std::isfinite(w_[i]) || w_[i] < 0.0)
      throw std::invalid_argument("simplex: weights must be finite and >= 0");
    sum += w_[i];
  }
  if (std::abs(sum - 1.0) > kSimplexSumTol)
    throw std::invalid_argument("simplex: weights sum to " + std::to_string(sum) +
                                ", expected 1");
}

SimplexWeights SimplexWeights::uniform(int m) {
  if (m < 1) throw std::invalid_argument("simplex: m must be >= 1");
  return SimplexWeights(Vec::Constant(m, 1.0 / m));
}

Direction::Direction(Vec v, double ball_radius) : vec(std::move(v)), radius(ball_radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("direction: radius must be > 0");
  if (!vec.allFinite()) throw std::invalid_argument("direction: non-finite entry");
  if (vec.norm() > radius + kBallTol)
    throw std::invalid_argument("direction: norm exceeds ball radius");
}

GeometryConstants GeometryConstants::plain(int m, double c_f) {
  return {c_f * c_f / 2.0, std::log(static_cast<double>(m)), 1.0};
}

GeometryConstants GeometryConstants::with_preference(int m, double c_f, double mu,
                                                     double c_g) {
  return {c_f * c_f + mu * mu * c_g * c_g, std::log(static_cast<double>(m)), 1.0};
}

Direction euclidean_prox(const Direction& d, const Vec& step) {
  if (!step.allFinite()) throw std::invalid_argument("euclidean prox: non-finite step");
  Vec next = d.vec - step;
  double norm = next.norm();
  if (norm > d.radius) next *= d.radius / norm;
  return Direction(std::move(next), d.radius);
}

SimplexWeights entropy_prox(const SimplexWeights& lambda, const Vec& exponent) {
  const Vec& w = lambda.values();
  if (exponent.size() != w.size())
    throw std::invalid_argument("entropy prox: exponent size mismatch");
  if (!exponent.allFinite())
    throw std::invalid_argument("entropy prox: non-finite exponent");
  for (int i = 0; i < w.size(); ++i) {
    if (w[i] <= 0.0)
      throw std::domain_error("entropy prox: weights must be strictly positive");
  }
  const double shift = exponent.maxCoeff();
  Vec next(w.size());
  double sum = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    next[i] = w[i] * std::exp(exponent[i] - shift);
    sum += next[i];
  }
  next /= sum;
  // Guard against underflow only; the multiplicative update itself preserves
  // strictly positive support.
  double floored = 0.0;
  for (int i = 0; i < next.size(); ++i) {
    if (next[i] < kWeightFloor) next[i] = kWeightFloor;
    floored += next[i];
  }
  next /= floored;
  return SimplexWeights(std::move(next));
}

double bregman_distance(BregmanKind kind, const Vec& x, const Vec& u) {
  if (x.size() != u.size())
    throw std::invalid_argument("bregman distance: size mismatch");
  if (kind == BregmanKind::kEuclidean) return 0.5 * (x - u).squaredNorm();
  double total = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    if (u[i] < 0.0) throw std::domain_error("bregman distance: u must be >= 0");
    if (u[i] == 0.0) {
      total += x[i];  // 0 ln 0 := 0
      continue;
    }
    if (x[i] <= 0.0)
      throw std::domain_error(
          "bregman distance: infinite (u puts mass where x has none)");
    total += u[i] * std::log(u[i] / x[i]) + x[i] - u[i];
  }
  return total;
}

double pair_norm(const InnerState& z, const GeometryConstants& consts) {
  double d_term = z.d.vec.squaredNorm() / (2.0 * consts.r_d_sq);
  double lam_term =
      std::pow(z.lambda.values().lpNorm<1>(), 2) / (2.0 * consts.r_lambda_sq);
  return std::sqrt(d_term + lam_term);
}

double pair_dual_norm(const Vec& g_d, const Vec& g_lambda,
                      const GeometryConstants& consts) {
  double d_term = 2.0 * consts.r_d_sq * g_d.squaredNorm();
  double lam_term =
      2.0 * consts.r_lambda_sq * std::pow(g_lambda.lpNorm<Eigen::Infinity>(), 2);
  return std::sqrt(d_term + lam_term);
}

}  // namespace msmd
