#include "msmd/inner_smd.hpp"

#include <cmath>
#include <stdexcept>

namespace msmd {

namespace {

// Shared by smd_step and the run_inner loop so the two paths are identical.
void step_inplace(Vec& d, Vec& lambda, double radius, const Mat& G, double gamma,
                  const PreferenceTerm* preference, Vec& g_d, Vec& g_lambda) {
  g_d.noalias() = G.transpose() * lambda;
  if (preference != nullptr && preference->mu != 0.0) {
    g_d.noalias() += preference->mu * (G.transpose() * preference->w.values());
  }
  g_d += d;
  g_lambda.noalias() = G * d;

  // d' = Pi_C(d - gamma g_d)
  d -= gamma * g_d;
  double norm = d.norm();
  if (norm > radius) d *= radius / norm;

  // lambda'_i proportional to lambda_i exp(gamma <row_i, d_old>), max-shifted.
  // g_lambda was formed from the pre-step d.
  g_lambda *= gamma;
  double shift = g_lambda.maxCoeff();
  double sum = 0.0;
  for (int i = 0; i < lambda.size(); ++i) {
    lambda[i] *= std::exp(g_lambda[i] - shift);
    sum += lambda[i];
  }
  lambda /= sum;
  double floored = 0.0;
  for (int i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 1e-300) lambda[i] = 1e-300;
    floored += lambda[i];
  }
  lambda /= floored;
}

}  // namespace

InnerSchedule InnerSchedule::fixed(double theta, double m_star) {
  if (!(theta > 0.0) || !(m_star > 0.0))
    throw std::invalid_argument("inner schedule: theta and M* must be > 0");
  return {Kind::kFixed, theta, m_star, 0.0};
}

InnerSchedule InnerSchedule::varying(double theta, double m_star) {
  if (!(theta > 0.0) || !(m_star > 0.0))
    throw std::invalid_argument("inner schedule: theta and M* must be > 0");
  return {Kind::kVarying, theta, m_star, 0.0};
}

InnerSchedule InnerSchedule::explicit_gamma(double gamma) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("inner schedule: gamma must be > 0");
  return {Kind::kExplicit, 0.0, 0.0, gamma};
}

double inner_step_size(const InnerSchedule& schedule, int s, int S) {
  if (s < 1 || s > S)
    throw std::out_of_range("inner step size: s is 1-based and must satisfy 1 <= s <= S");
  switch (schedule.kind) {
    case InnerSchedule::Kind::kFixed:
      return schedule.theta / (schedule.m_star * std::sqrt(static_cast<double>(S)));
    case InnerSchedule::Kind::kVarying:
      return schedule.theta / (schedule.m_star * std::sqrt(static_cast<double>(s)));
    case InnerSchedule::Kind::kExplicit:
      return schedule.gamma;
  }
  throw std::logic_error("inner step size: unknown schedule kind");
}

double compute_m_star(int m, double c_f, double delta) {
  if (m < 2) throw std::invalid_argument("M*: m must be >= 2");
  if (!(c_f > 0.0) || delta < 0.0)
    throw std::invalid_argument("M*: need C_f > 0 and delta >= 0");
  const double md = static_cast<double>(m);
  const double log_m = std::log(md);
  const double cf2 = c_f * c_f;
  double sq = (2.0 + log_m) * md * md * cf2 * cf2 +
              (0.5 + log_m) * md * md * cf2 * delta * delta;
  return std::sqrt(sq);
}

double compute_m_star_preference(int m, double c_f, double delta, double mu,
                                 double c_g, double delta0) {
  if (m < 2) throw std::invalid_argument("M0*: m must be >= 2");
  if (!(c_f > 0.0) || !(c_g > 0.0) || delta < 0.0 || delta0 < 0.0 || mu < 0.0)
    throw std::invalid_argument("M0*: invalid constants");
  const double md = static_cast<double>(m);
  const double log_m = std::log(md);
  const double q = c_f * c_f + mu * mu * c_g * c_g;
  double sq = 9.0 * q * q +
              2.0 * (md * log_m * c_f * c_f + delta * delta +
                     mu * mu * delta0 * delta0 + md * log_m * delta * delta) *
                  q;
  return std::sqrt(sq);
}

void subproblem_gradient(const Mat& G_sample, const InnerState& z,
                         const PreferenceTerm* preference, Vec& g_d,
                         Vec& g_lambda) {
  if (G_sample.rows() != z.lambda.size())
    throw std::invalid_argument("subproblem gradient: matrix has " +
                                std::to_string(G_sample.rows()) + " rows, state has " +
                                std::to_string(z.lambda.size()) + " weights");
  if (G_sample.cols() != z.d.vec.size())
    throw std::invalid_argument("subproblem gradient: matrix has " +
                                std::to_string(G_sample.cols()) + " columns, direction has " +
                                std::to_string(z.d.vec.size()) + " entries");
  g_d.noalias() = G_sample.transpose() * z.lambda.values();
  if (preference != nullptr && preference->mu != 0.0) {
    if (preference->w.size() != G_sample.rows())
      throw std::invalid_argument("subproblem gradient: preference weight size mismatch");
    g_d.noalias() += preference->mu * (G_sample.transpose() * preference->w.values());
  }
  g_d += z.d.vec;
  g_lambda.noalias() = G_sample * z.d.vec;
}

InnerState smd_step(const InnerState& z, const Mat& G_sample, double gamma,
                    const PreferenceTerm* preference) {
  if (!(gamma > 0.0)) throw std::invalid_argument("smd step: gamma must be > 0");
  if (G_sample.rows() != z.lambda.size() || G_sample.cols() != z.d.vec.size())
    throw std::invalid_argument("smd step: sample shape mismatch");
  Vec d = z.d.vec;
  Vec lambda = z.lambda.values();
  Vec g_d(d.size()), g_lambda(lambda.size());
  step_inplace(d, lambda, z.d.radius, G_sample, gamma, preference, g_d, g_lambda);
  return InnerState{Direction(std::move(d), z.d.radius),
                    SimplexWeights(std::move(lambda))};
}

InnerResult run_inner(StochasticOracle& oracle, const Vec& x,
                      const InnerSchedule& schedule, const InnerOptions& options) {
  const int S = options.steps;
  const double r = options.tail_fraction;
  if (S < 1) throw std::invalid_argument("run inner: S must be >= 1");
  if (!(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument("run inner: r must lie in (0,1)");
  const int m = oracle.problem().m;
  const int n = oracle.problem().n;
  const int P = static_cast<int>(std::ceil(r * S));

  Vec d = Vec::Zero(n);
  Vec lambda = Vec::Constant(m, 1.0 / m);
  Vec g_d(n), g_lambda(m);
  Mat sample(m, n);
  const PreferenceTerm* pref =
      options.preference.has_value() ? &options.preference.value() : nullptr;

  Vec d_sum = Vec::Zero(n);
  Vec lambda_sum = Vec::Zero(m);
  double weight_sum = 0.0;
  InnerResult result{Direction(Vec::Zero(n), options.radius),
                     SimplexWeights::uniform(m), S, P, {}};
  if (options.trace) result.d_norm_trace.reserve(S);

  for (int s = 1; s <= S; ++s) {
    const double gamma = inner_step_size(schedule, s, S);
    try {
      oracle.sample_into(x, sample);
    } catch (const std::exception& err) {
      throw std::runtime_error("run inner: oracle failed at step " +
                               std::to_string(s) + ": " + err.what());
    }
    step_inplace(d, lambda, options.radius, sample, gamma, pref, g_d, g_lambda);
    if (options.trace) result.d_norm_trace.push_back(d.norm());
    if (s >= P) {
      d_sum += gamma * d;
      lambda_sum += gamma * lambda;
      weight_sum += gamma;
    }
  }

  result.d_avg = Direction(d_sum / weight_sum, options.radius);
  // Kill the summation drift a long tail can accumulate on the simplex.
  Vec lambda_avg = lambda_sum / weight_sum;
  lambda_avg /= lambda_avg.sum();
  result.lambda_avg = SimplexWeights(std::move(lambda_avg));
  return result;
}

}  // namespace msmd
