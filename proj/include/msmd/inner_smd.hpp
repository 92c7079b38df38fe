#ifndef MSMD_INNER_SMD_HPP_
#define MSMD_INNER_SMD_HPP_

#include <optional>
#include <vector>

#include "msmd/geometry.hpp"

namespace msmd {

// Inner step-size rule. Fixed and Varying follow gamma_s = theta / (M* sqrt(S))
// and theta / (M* sqrt(s)); Explicit pins a constant gamma directly, which is
// how the experiment grids are expressed.
struct InnerSchedule {
  enum class Kind { kFixed, kVarying, kExplicit };

  Kind kind = Kind::kFixed;
  double theta = 1.0;
  double m_star = 1.0;
  double gamma = 0.0;  // Explicit only

  static InnerSchedule fixed(double theta, double m_star);
  static InnerSchedule varying(double theta, double m_star);
  static InnerSchedule explicit_gamma(double gamma);
};

// gamma_s for 1-based step s of a run with S total steps.
double inner_step_size(const InnerSchedule& schedule, int s, int S);

// M*^2 = (2 + ln m) m^2 C_f^4 + (1/2 + ln m) m^2 C_f^2 delta^2
double compute_m_star(int m, double c_f, double delta);

// Preference variant:
// M_{0,*}^2 = 9 (C_f^2 + mu^2 C_g^2)^2
//           + 2 (m ln m C_f^2 + delta^2 + mu^2 delta_0^2 + m ln m delta^2)
//             (C_f^2 + mu^2 C_g^2)
double compute_m_star_preference(int m, double c_f, double delta, double mu,
                                 double c_g, double delta0);

// Preference pull toward g0 = sum_i w_i grad f_i, scaled by mu. The sampled
// g0 is formed from the same gradient draw, so it costs no extra oracle call.
struct PreferenceTerm {
  SimplexWeights w;
  double mu = 0.0;
};

// g_d = combo(G, lambda) + d (+ mu * combo(G, w));  g_lambda_i = <row_i, d>.
void subproblem_gradient(const Mat& G_sample, const InnerState& z,
                         const PreferenceTerm* preference, Vec& g_d,
                         Vec& g_lambda);

// One mirror-descent step on the saddle pair: Euclidean prox on d (descent),
// entropy prox on lambda with ascent exponent +gamma <row_i, d>.
InnerState smd_step(const InnerState& z, const Mat& G_sample, double gamma,
                    const PreferenceTerm* preference = nullptr);

struct InnerResult {
  Direction d_avg;
  SimplexWeights lambda_avg;
  int steps = 0;       // S
  int tail_start = 0;  // P = ceil(r S)
  std::vector<double> d_norm_trace;  // filled only when requested
};

struct InnerOptions {
  int steps = 1;                    // S
  double tail_fraction = 0.5;       // r in (0,1)
  double radius = 1.0;              // ball radius for d
  std::optional<PreferenceTerm> preference;
  bool trace = false;
};

// Full inner solve at a fixed outer iterate: d0 = 0, lambda0 uniform, one
// oracle draw per step, gamma-weighted tail average over s = P..S.
InnerResult run_inner(StochasticOracle& oracle, const Vec& x,
                      const InnerSchedule& schedule, const InnerOptions& options);

}  // namespace msmd

#endif  // MSMD_INNER_SMD_HPP_
