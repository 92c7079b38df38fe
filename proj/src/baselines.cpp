#include "msmd/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace msmd {

namespace {

// Exact line search between a current combination c and a vertex gradient g:
// minimizes ||(1 - eta) c + eta g||^2 over eta in [0, 1].
double segment_minimizer(const Vec& c, const Vec& g) {
  Vec diff = c - g;
  double denom = diff.squaredNorm();
  if (denom <= 0.0) return 0.0;
  double eta = c.dot(diff) / denom;
  return std::clamp(eta, 0.0, 1.0);
}

MinNormSolution two_point_solution(const Mat& G) {
  Vec g1 = G.row(0), g2 = G.row(1);
  Vec diff = g1 - g2;
  double denom = diff.squaredNorm();
  double w1;
  if (denom <= 0.0) {
    w1 = 0.5;  // identical rows
  } else {
    w1 = std::clamp(g2.dot(g2 - g1) / denom, 0.0, 1.0);
  }
  Vec lambda(2);
  lambda << w1, 1.0 - w1;
  Vec c = combo(G, lambda);
  return {SimplexWeights(lambda), -c, c.squaredNorm(), true};
}

}  // namespace

MinNormSolution mgda_minnorm(const Mat& G, int max_fw_iters, double tol) {
  if (!G.allFinite()) throw std::invalid_argument("min norm: non-finite gradient matrix");
  const int m = static_cast<int>(G.rows());
  if (m < 1) throw std::invalid_argument("min norm: empty gradient matrix");
  if (m == 1) {
    Vec lambda = Vec::Ones(1);
    Vec c = G.row(0);
    return {SimplexWeights(lambda), -c, c.squaredNorm(), true};
  }
  if (m == 2) return two_point_solution(G);

  // Frank-Wolfe on h(lambda) = ||G^T lambda||^2 over the simplex.
  Vec lambda = Vec::Constant(m, 1.0 / m);
  Vec c = combo(G, lambda);
  bool converged = false;
  for (int iter = 0; iter < max_fw_iters; ++iter) {
    Vec scores = G * c;  // scores_i = <g_i, c>, half the gradient of h
    int best = 0;
    scores.minCoeff(&best);
    double gap = 2.0 * (c.dot(c) - scores[best]);
    if (gap <= tol) {
      converged = true;
      break;
    }
    Vec g_best = G.row(best);
    double eta = segment_minimizer(c, g_best);
    lambda *= (1.0 - eta);
    lambda[best] += eta;
    c = (1.0 - eta) * c + eta * g_best;
  }
  lambda /= lambda.sum();
  c = combo(G, lambda);
  return {SimplexWeights(lambda), -c, c.squaredNorm(), converged};
}

Vec pcgrad_direction(const Mat& G, Rng& rng) {
  const int m = static_cast<int>(G.rows());
  const int n = static_cast<int>(G.cols());
  if (m < 1) throw std::invalid_argument("pcgrad: empty gradient matrix");
  Vec total = Vec::Zero(n);
  std::vector<int> order(m - 1);
  for (int i = 0; i < m; ++i) {
    Vec v = G.row(i);
    int pos = 0;
    for (int j = 0; j < m; ++j) {
      if (j != i) order[pos++] = j;
    }
    for (int j = static_cast<int>(order.size()) - 1; j > 0; --j) {
      int swap_with = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(j) + 1));
      std::swap(order[j], order[swap_with]);
    }
    for (int j : order) {
      double dot = v.dot(G.row(j));
      if (dot < 0.0) {
        double norm_sq = G.row(j).squaredNorm();
        if (norm_sq == 0.0) continue;
        v -= (dot / norm_sq) * G.row(j).transpose();
      }
    }
    total += v;
  }
  return -total;
}

Vec smg_step(StochasticOracle& oracle, const Vec& x, double alpha) {
  Mat sample = oracle.sample(x);
  MinNormSolution sol = mgda_minnorm(sample);
  return x + alpha * sol.d;
}

std::pair<CrMogmState, Vec> cr_mogm_step(const CrMogmState& state,
                                         StochasticOracle& oracle, const Vec& x,
                                         double alpha) {
  if (state.beta < 0.0 || state.beta > 1.0)
    throw std::invalid_argument("cr-mogm: beta must lie in [0,1]");
  Mat sample = oracle.sample(x);
  MinNormSolution sol = mgda_minnorm(sample);
  Vec blended = state.beta * state.lambda_tracked.values() +
                (1.0 - state.beta) * sol.lambda.values();
  CrMogmState next{SimplexWeights(blended), state.beta};
  Vec x_next = x - alpha * combo(sample, blended);
  return {std::move(next), std::move(x_next)};
}

Vec project_to_simplex(const Vec& v) {
  const int m = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + m);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double running = 0.0;
  double tau = 0.0;
  for (int i = 0; i < m; ++i) {
    running += u[i];
    double candidate = (running - 1.0) / (i + 1);
    if (u[i] - candidate > 0.0) tau = candidate;
  }
  Vec out(m);
  for (int i = 0; i < m; ++i) out[i] = std::max(v[i] - tau, 0.0);
  return out;
}

SdmgradLiteResult sdmgrad_lite_step(StochasticOracle& oracle, const Vec& x,
                                    double alpha, int inner_steps, double gamma) {
  if (inner_steps < 1) throw std::invalid_argument("sdmgrad: S must be >= 1");
  const int m = oracle.problem().m;
  Vec lambda = Vec::Constant(m, 1.0 / m);
  Vec direction = Vec::Zero(x.size());
  Mat s1, s2, s3;
  for (int s = 0; s < inner_steps; ++s) {
    oracle.sample_into(x, s1);
    oracle.sample_into(x, s2);
    oracle.sample_into(x, s3);
    // Unbiased Gram-vector estimate: entry i is <g_i(xi1), combo(xi2)>.
    Vec grad = s1 * (s2.transpose() * lambda);
    lambda = project_to_simplex(lambda - gamma * grad);
    direction = -combo(s3, lambda);
  }
  return {x + alpha * direction, SimplexWeights(lambda)};
}

WeightedSumState WeightedSumState::init(ScalarOptKind kind, int n) {
  return {kind, 0, Vec::Zero(n), Vec::Zero(n)};
}

std::pair<WeightedSumState, Vec> weighted_sum_step(const WeightedSumState& state,
                                                   StochasticOracle& oracle,
                                                   const Vec& x, double alpha) {
  Mat sample = oracle.sample(x);
  Vec g = sample.colwise().mean();
  WeightedSumState next = state;
  next.step_count = state.step_count + 1;
  Vec x_next;
  switch (state.kind) {
    case ScalarOptKind::kSgd:
      x_next = x - alpha * g;
      break;
    case ScalarOptKind::kAdam: {
      constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
      next.first_moment = beta1 * state.first_moment + (1.0 - beta1) * g;
      next.second_moment =
          beta2 * state.second_moment + (1.0 - beta2) * g.cwiseProduct(g);
      double t = static_cast<double>(next.step_count);
      Vec m_hat = next.first_moment / (1.0 - std::pow(beta1, t));
      Vec v_hat = next.second_moment / (1.0 - std::pow(beta2, t));
      Vec denom = v_hat.cwiseSqrt() + Vec::Constant(x.size(), eps);
      x_next = x - alpha * m_hat.cwiseQuotient(denom);
      break;
    }
    case ScalarOptKind::kRmsProp: {
      constexpr double decay = 0.99, eps = 1e-8;
      next.second_moment =
          decay * state.second_moment + (1.0 - decay) * g.cwiseProduct(g);
      Vec denom = next.second_moment.cwiseSqrt() + Vec::Constant(x.size(), eps);
      x_next = x - alpha * g.cwiseQuotient(denom);
      break;
    }
  }
  return {std::move(next), std::move(x_next)};
}

}  // namespace msmd
