#ifndef MSMD_TESTS_SUPPORT_HPP_
#define MSMD_TESTS_SUPPORT_HPP_

#include <vector>

#include "msmd/core.hpp"

namespace msmd::testing {

// Linear objectives f_i(x) = <g_i, x>: the gradient matrix is constant, which
// pins the inner saddle problem to a fixed matrix.
inline ProblemInstance linear_problem(const Mat& G, double box = 100.0) {
  ProblemInstance p;
  p.m = static_cast<int>(G.rows());
  p.n = static_cast<int>(G.cols());
  p.lower = Vec::Constant(p.n, -box);
  p.upper = Vec::Constant(p.n, box);
  p.evaluate = [G](const Vec& x) { return Vec(G * x); };
  p.gradient = [G](const Vec&) { return G; };
  return p;
}

// Random matrix with entries ~ N(0, 1).
inline Mat random_matrix(int m, int n, Rng& rng) {
  Mat G(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  return G;
}

// Rows rescaled to random norms in [lo, hi]; keeps the saddle well scaled.
inline Mat random_matrix_unit_rows(int m, int n, Rng& rng, double lo = 0.5,
                                   double hi = 1.0) {
  Mat G = random_matrix(m, n, rng);
  for (int i = 0; i < m; ++i) {
    double norm = G.row(i).norm();
    if (norm == 0.0) {
      G(i, 0) = lo;
      norm = lo;
    }
    G.row(i) *= rng.uniform(lo, hi) / norm;
  }
  return G;
}

// Independently written dominance filter used as the oracle for the
// production implementation (scan-all-pairs with early exit inverted).
inline std::vector<int> naive_front_indices(const std::vector<Vec>& pts) {
  std::vector<int> keep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool is_dominated = false;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      bool le_all = true, lt_any = false;
      for (int c = 0; c < pts[i].size(); ++c) {
        if (pts[j][c] > pts[i][c]) le_all = false;
        if (pts[j][c] < pts[i][c]) lt_any = true;
      }
      if (le_all && lt_any) {
        is_dominated = true;
        break;
      }
    }
    if (!is_dominated) keep.push_back(static_cast<int>(i));
  }
  return keep;
}

}  // namespace msmd::testing

#endif  // MSMD_TESTS_SUPPORT_HPP_
