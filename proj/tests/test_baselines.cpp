#include <doctest.h>

#include <cmath>

#include "msmd/baselines.hpp"
#include "msmd/benchmarks.hpp"
#include "support.hpp"

using namespace msmd;
using msmd::testing::linear_problem;
using msmd::testing::random_matrix;

namespace {

// 1e-3 grid over the simplex, m <= 3; value oracle for the min-norm solve.
double grid_minnorm_value(const Mat& G) {
  const int m = static_cast<int>(G.rows());
  double best = 1e300;
  if (m == 2) {
    for (int i = 0; i <= 1000; ++i) {
      Vec lam(2);
      lam << i / 1000.0, 1.0 - i / 1000.0;
      best = std::min(best, combo(G, lam).squaredNorm());
    }
  } else {
    for (int i = 0; i <= 1000; ++i) {
      for (int j = 0; j <= 1000 - i; ++j) {
        Vec lam(3);
        lam << i / 1000.0, j / 1000.0, 1.0 - (i + j) / 1000.0;
        best = std::min(best, combo(G, lam).squaredNorm());
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("min-norm solve: pinned two-gradient examples") {
  Mat axes(2, 2);
  axes << 1, 0, 0, 1;
  MinNormSolution sol = mgda_minnorm(axes);
  CHECK(sol.lambda[0] == doctest::Approx(0.5));
  CHECK(sol.d[0] == doctest::Approx(-0.5));
  CHECK(sol.d[1] == doctest::Approx(-0.5));
  CHECK(sol.value == doctest::Approx(0.5));

  Mat dup(2, 2);
  dup.row(0) << 2.0, -1.0;
  dup.row(1) << 2.0, -1.0;
  MinNormSolution same = mgda_minnorm(dup);
  CHECK(same.d.isApprox(Vec(-dup.row(0).transpose())));

  Mat opposing(2, 2);
  opposing.row(0) << 3.0, 1.0;
  opposing.row(1) << -3.0, -1.0;
  MinNormSolution zero = mgda_minnorm(opposing);
  CHECK(zero.d.norm() == doctest::Approx(0.0));
  CHECK(zero.lambda[0] == doctest::Approx(0.5));
}

TEST_CASE("Frank-Wolfe agrees with the closed form and the grid oracle") {
  Rng rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    Mat G = random_matrix(2, 3, rng);
    MinNormSolution closed = mgda_minnorm(G);

    // Force the Frank-Wolfe path by stacking a duplicated row: the optimal
    // value is unchanged when row 2 repeats row 1.
    Mat G3(3, 3);
    G3.row(0) = G.row(0);
    G3.row(1) = G.row(1);
    G3.row(2) = G.row(1);
    MinNormSolution fw = mgda_minnorm(G3);
    CHECK(std::abs(fw.value - closed.value) <= 1e-6);
  }

  Rng rng2(43);
  for (int trial = 0; trial < 25; ++trial) {
    Mat G2 = random_matrix(2, 2, rng2);
    CHECK(std::abs(mgda_minnorm(G2).value - grid_minnorm_value(G2)) <= 1e-4);
    Mat G3 = random_matrix(3, 2, rng2);
    CHECK(std::abs(mgda_minnorm(G3).value - grid_minnorm_value(G3)) <= 1e-4);
  }
}

TEST_CASE("min-norm direction satisfies the stationarity certificate") {
  Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + static_cast<int>(rng.bounded(2));
    Mat G = random_matrix(m, 3, rng);
    MinNormSolution sol = mgda_minnorm(G);
    double d_sq = sol.d.squaredNorm();
    for (int i = 0; i < m; ++i) {
      CHECK(G.row(i).dot(sol.d) <= -d_sq + 1e-9);
    }
  }
}

TEST_CASE("pcgrad: pinned examples") {
  Rng rng(7);

  Mat no_conflict(2, 2);
  no_conflict << 1, 0, 0, 1;
  Vec d = pcgrad_direction(no_conflict, rng);
  CHECK(d[0] == doctest::Approx(-1.0));
  CHECK(d[1] == doctest::Approx(-1.0));

  Mat conflict(2, 2);
  conflict.row(0) << 1.0, 0.0;
  conflict.row(1) << -1.0, 1.0;
  Vec d2 = pcgrad_direction(conflict, rng);
  CHECK(d2[0] == doctest::Approx(-0.5));
  CHECK(d2[1] == doctest::Approx(-1.5));

  Mat single(1, 2);
  single << 4.0, -2.0;
  Vec d3 = pcgrad_direction(single, rng);
  CHECK(d3[0] == doctest::Approx(-4.0));
  CHECK(d3[1] == doctest::Approx(2.0));

  // A zero-norm counterpart is skipped rather than dividing by zero.
  Mat with_zero(2, 2);
  with_zero.row(0) << 1.0, 0.0;
  with_zero.row(1) << 0.0, 0.0;
  Vec d4 = pcgrad_direction(with_zero, rng);
  CHECK(d4[0] == doctest::Approx(-1.0));
  CHECK(d4[1] == doctest::Approx(0.0));
}

TEST_CASE("smg with zero noise equals a deterministic MGDA step") {
  Rng rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    Mat G = random_matrix(2, 3, rng);
    ProblemInstance problem = linear_problem(G);
    StochasticOracle oracle(problem, 0.0, 900 + trial);
    Vec x(3);
    x << rng.normal(), rng.normal(), rng.normal();
    Vec stepped = smg_step(oracle, x, 0.07);
    Vec expected = x + 0.07 * mgda_minnorm(G).d;
    CHECK((stepped - expected).norm() <= 1e-10);
  }
}

TEST_CASE("smg bias on an asymmetric opposing-gradient instance") {
  // Rows 2 and -1 in one dimension: the deterministic common direction is 0,
  // but the sampled min-norm combination has a strictly positive mean.
  Mat G(2, 1);
  G << 2.0, -1.0;
  ProblemInstance problem = linear_problem(G, 1.0);  // box [-1,1], range 2
  StochasticOracle oracle(problem, 0.5, 4242);       // sigma = 1 per entry

  const int N = 10000;
  double sum = 0.0, sum_sq = 0.0;
  Vec x = Vec::Zero(1);
  for (int i = 0; i < N; ++i) {
    Vec moved = smg_step(oracle, x, 1.0);
    double d = moved[0] - x[0];  // alpha = 1: d equals the update direction
    sum += d;
    sum_sq += d * d;
  }
  double mean = sum / N;
  double sd_mean = std::sqrt((sum_sq / N - mean * mean) / N);
  CHECK(std::abs(mean) >= 5.0 * sd_mean);
}

TEST_CASE("cr-mogm: beta=0 matches smg bitwise, beta=1 freezes the weights") {
  Mat G(2, 2);
  G.row(0) << 1.0, 2.0;
  G.row(1) << -0.5, 1.0;
  ProblemInstance problem = linear_problem(G);
  Vec x(2);
  x << 0.3, -0.4;

  StochasticOracle oracle_a(problem, 0.4, 99);
  StochasticOracle oracle_b(problem, 0.4, 99);
  CrMogmState state{SimplexWeights::uniform(2), 0.0};
  auto [next_state, x_blend] = cr_mogm_step(state, oracle_a, x, 0.05);
  Vec x_smg = smg_step(oracle_b, x, 0.05);
  CHECK(x_blend == x_smg);

  Vec frozen_w(2);
  frozen_w << 0.9, 0.1;
  CrMogmState frozen{SimplexWeights(frozen_w), 1.0};
  auto [frozen_next, moved] = cr_mogm_step(frozen, oracle_a, x, 0.05);
  CHECK(frozen_next.lambda_tracked.values() == frozen_w);

  Vec prev(2), cur_expected(2);
  prev << 1.0, 0.0;
  // Blend check on the pure update rule with beta = 0.5.
  Mat axes(2, 2);
  axes << 1, 0, 0, 1;
  ProblemInstance ax_problem = linear_problem(axes);
  StochasticOracle ax_oracle(ax_problem, 0.0, 1);
  CrMogmState half{SimplexWeights(prev), 0.5};
  auto [half_next, unused] = cr_mogm_step(half, ax_oracle, Vec::Zero(2), 0.1);
  // min-norm of the axes matrix is (0.5, 0.5): blend = (0.75, 0.25).
  CHECK(half_next.lambda_tracked[0] == doctest::Approx(0.75));
  CHECK(half_next.lambda_tracked[1] == doctest::Approx(0.25));
}

TEST_CASE("simplex projection: clamps, normalizes, and handles m=1") {
  Vec one(1);
  one << -3.7;
  Vec projected = project_to_simplex(one);
  CHECK(projected[0] == doctest::Approx(1.0));

  Vec v(3);
  v << 0.1, 0.2, 0.3;
  Vec p = project_to_simplex(v);
  CHECK(p.sum() == doctest::Approx(1.0));
  for (int i = 0; i < 3; ++i) CHECK(p[i] >= 0.0);

  Vec inside(2);
  inside << 0.25, 0.75;
  CHECK(project_to_simplex(inside).isApprox(inside, 1e-12));
}

TEST_CASE("sdmgrad-lite: three draws per inner step and weight convergence") {
  Rng rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    Mat G = msmd::testing::random_matrix_unit_rows(2, 2, rng);
    ProblemInstance problem = linear_problem(G);
    StochasticOracle oracle(problem, 0.0, 500 + trial);
    MinNormSolution exact = mgda_minnorm(G);

    const int S = 4000;
    SdmgradLiteResult result =
        sdmgrad_lite_step(oracle, Vec::Zero(2), 0.0, S, 0.2);
    CHECK(oracle.draw_count() == 3ULL * S);
    CHECK((result.lambda.values() - exact.lambda.values()).lpNorm<1>() <= 0.05);
  }
}

TEST_CASE("weighted-sum steps: sgd, adam, rmsprop") {
  // f(x) = x^2 duplicated across both objectives; mean gradient is 2x.
  Mat row(1, 1);
  ProblemInstance p;
  p.m = 2;
  p.n = 1;
  p.lower = Vec::Constant(1, -10.0);
  p.upper = Vec::Constant(1, 10.0);
  p.evaluate = [](const Vec& x) {
    Vec f(2);
    f << x[0] * x[0], x[0] * x[0];
    return f;
  };
  p.gradient = [](const Vec& x) {
    Mat g(2, 1);
    g << 2.0 * x[0], 2.0 * x[0];
    return g;
  };

  Vec x0(1);
  x0 << 1.0;

  StochasticOracle oracle(p, 0.0, 21);
  auto [s1, x1] = weighted_sum_step(WeightedSumState::init(ScalarOptKind::kSgd, 1),
                                    oracle, x0, 0.1);
  CHECK(x1[0] == doctest::Approx(0.8));

  // Adam's bias-corrected first step has magnitude ~ alpha for any scale.
  for (double scale : {1.0, 1e3, 1e-3}) {
    ProblemInstance q = p;
    q.gradient = [scale](const Vec& x) {
      Mat g(2, 1);
      g << scale * x[0], scale * x[0];
      return g;
    };
    StochasticOracle qo(q, 0.0, 22);
    auto [sa, xa] = weighted_sum_step(
        WeightedSumState::init(ScalarOptKind::kAdam, 1), qo, x0, 0.1);
    CHECK(std::abs(x0[0] - xa[0]) == doctest::Approx(0.1).epsilon(1e-4));
  }

  StochasticOracle ro(p, 0.0, 23);
  auto [sr, xr] = weighted_sum_step(
      WeightedSumState::init(ScalarOptKind::kRmsProp, 1), ro, x0, 0.1);
  // v = 0.01 * 4, denom = sqrt(0.04) + 1e-8 = 0.2: step = 0.1 * 2 / 0.2 = 1.
  CHECK(std::abs(xr[0]) <= 1e-6);

  // Equal objectives: the weighted-sum run equals a single-objective run on f1.
  Vec x = x0;
  WeightedSumState state = WeightedSumState::init(ScalarOptKind::kSgd, 1);
  StochasticOracle so(p, 0.0, 24);
  for (int i = 0; i < 5; ++i) {
    auto [next_state, next_x] = weighted_sum_step(state, so, x, 0.1);
    state = next_state;
    x = next_x;
  }
  double scalar_x = 1.0;
  for (int i = 0; i < 5; ++i) scalar_x -= 0.1 * 2.0 * scalar_x;
  CHECK(x[0] == doctest::Approx(scalar_x).epsilon(1e-12));
}

TEST_CASE("baselines are seed-deterministic") {
  Mat G(2, 2);
  G.row(0) << 1.0, -1.0;
  G.row(1) << 0.5, 2.0;
  ProblemInstance problem = linear_problem(G);
  Vec x(2);
  x << 0.1, 0.2;

  StochasticOracle a(problem, 0.3, 314);
  StochasticOracle b(problem, 0.3, 314);
  CHECK(smg_step(a, x, 0.02) == smg_step(b, x, 0.02));

  Rng ra(11), rb(11);
  CHECK(pcgrad_direction(G, ra) == pcgrad_direction(G, rb));
}
