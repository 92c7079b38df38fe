#ifndef MSMD_GEOMETRY_HPP_
#define MSMD_GEOMETRY_HPP_

#include "msmd/core.hpp"

namespace msmd {

// Point on the standard simplex: nonnegative, sums to 1 within 1e-12.
class SimplexWeights {
 public:
  explicit SimplexWeights(Vec w);
  static SimplexWeights uniform(int m);

  const Vec& values() const { return w_; }
  int size() const { return static_cast<int>(w_.size()); }
  double operator[](int i) const { return w_[i]; }

 private:
  Vec w_;
};

// Candidate direction constrained to the Euclidean ball of the given radius.
struct Direction {
  Direction(Vec v, double ball_radius);

  Vec vec;
  double radius;
};

// The saddle pair z = (d, lambda).
struct InnerState {
  Direction d;
  SimplexWeights lambda;
};

struct GeometryConstants {
  double r_d_sq;       // C_f^2 / 2, or C_f^2 + mu^2 C_g^2 with a preference
  double r_lambda_sq;  // ln m
  double diameter_sq = 1.0;  // Bregman diameter bound, configurable

  static GeometryConstants plain(int m, double c_f);
  static GeometryConstants with_preference(int m, double c_f, double mu,
                                           double c_g);
};

// d' = projection of (d.vec - step) onto the ball. Identity on interior points.
Direction euclidean_prox(const Direction& d, const Vec& step);

// Exponentiated-weights update lambda'_i = lambda_i e^{e_i} / sum, computed
// with max-shifted exponents. Input weights must be strictly positive.
SimplexWeights entropy_prox(const SimplexWeights& lambda, const Vec& exponent);

enum class BregmanKind { kEuclidean, kEntropy };

// V(x, u) for the two generating functions the solver instantiates.
double bregman_distance(BregmanKind kind, const Vec& x, const Vec& u);

double pair_norm(const InnerState& z, const GeometryConstants& consts);
double pair_dual_norm(const Vec& g_d, const Vec& g_lambda,
                      const GeometryConstants& consts);

}  // namespace msmd

#endif  // MSMD_GEOMETRY_HPP_
