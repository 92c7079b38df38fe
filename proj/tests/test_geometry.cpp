#include <doctest.h>

#include <cmath>

#include "msmd/geometry.hpp"
#include "support.hpp"

using namespace msmd;

TEST_CASE("euclidean prox: identity, radial projection, exact subtraction") {
  Vec zero = Vec::Zero(2);
  Direction d0(zero, 1.0);
  CHECK(euclidean_prox(d0, zero).vec == zero);

  Vec step(2);
  step << -2.0, 0.0;
  Direction projected = euclidean_prox(d0, step);
  CHECK(projected.vec[0] == doctest::Approx(1.0));
  CHECK(projected.vec[1] == doctest::Approx(0.0));

  Vec v(2);
  v << 0.3, 0.4;
  Direction d1(v, 1.0);
  Direction res = euclidean_prox(d1, v);
  CHECK(res.vec.norm() == doctest::Approx(0.0));
}

TEST_CASE("entropy prox: identity, shift invariance, closed form") {
  SimplexWeights half = SimplexWeights::uniform(2);
  CHECK(entropy_prox(half, Vec::Zero(2)).values() == half.values());

  SimplexWeights third = SimplexWeights::uniform(3);
  Vec shift = Vec::Constant(3, 123.456);
  Vec out = entropy_prox(third, shift).values();
  for (int i = 0; i < 3; ++i) CHECK(out[i] == doctest::Approx(1.0 / 3).epsilon(1e-14));

  Vec e(2);
  e << std::log(2.0), 0.0;
  Vec two_thirds = entropy_prox(half, e).values();
  CHECK(two_thirds[0] == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(two_thirds[1] == doctest::Approx(1.0 / 3).epsilon(1e-14));
}

TEST_CASE("entropy prox rejects boundary weights") {
  Vec w(2);
  w << 1.0, 0.0;
  SimplexWeights boundary(w);
  CHECK_THROWS_AS(entropy_prox(boundary, Vec::Zero(2)), std::domain_error);
}

TEST_CASE("entropy prox stays on the simplex under extreme exponents") {
  Rng rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    int m = 2 + static_cast<int>(rng.bounded(4));
    Vec w(m);
    for (int i = 0; i < m; ++i) w[i] = rng.uniform(1e-12, 1.0);
    w /= w.sum();
    Vec e(m);
    for (int i = 0; i < m; ++i) e[i] = rng.uniform(-700.0, 700.0);
    Vec out = entropy_prox(SimplexWeights(w), e).values();
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      CHECK(out[i] > 0.0);
      sum += out[i];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("entropy prox equals the brute-force KL minimizer on the 2-simplex") {
  Rng rng(555);
  for (int trial = 0; trial < 50; ++trial) {
    Vec w(2);
    w[0] = rng.uniform(0.05, 0.95);
    w[1] = 1.0 - w[0];
    Vec e(2);
    e << rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0);
    Vec analytic = entropy_prox(SimplexWeights(w), e).values();

    double best = 1e300, best_l = 0.0;
    for (int g = 1; g < 1000; ++g) {
      double l = g / 1000.0;
      double obj = -(e[0] * l + e[1] * (1.0 - l)) + l * std::log(l / w[0]) +
                   (1.0 - l) * std::log((1.0 - l) / w[1]);
      if (obj < best) {
        best = obj;
        best_l = l;
      }
    }
    CHECK(std::abs(analytic[0] - best_l) <= 2e-3);
  }
}

TEST_CASE("euclidean prox equals the brute-force ball minimizer in 2-D") {
  Rng rng(556);
  for (int trial = 0; trial < 20; ++trial) {
    Vec d(2);
    d << rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7);
    if (d.norm() > 1.0) d /= d.norm() * 1.01;
    Vec g(2);
    g << rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0);
    Vec analytic = euclidean_prox(Direction(d, 1.0), g).vec;

    double best = 1e300;
    Vec best_pt(2);
    const int grid = 400;
    for (int a = -grid; a <= grid; ++a) {
      for (int b = -grid; b <= grid; ++b) {
        Vec cand(2);
        cand << a / static_cast<double>(grid), b / static_cast<double>(grid);
        if (cand.norm() > 1.0) continue;
        double obj = g.dot(cand - d) + 0.5 * (cand - d).squaredNorm();
        if (obj < best) {
          best = obj;
          best_pt = cand;
        }
      }
    }
    CHECK((analytic - best_pt).norm() <= 5e-3);
  }
}

TEST_CASE("bregman distances: pinned values") {
  Vec x(2), u(2);
  x << 1.0, 2.0;
  u << 4.0, 6.0;
  CHECK(bregman_distance(BregmanKind::kEuclidean, x, u) == doctest::Approx(12.5));

  Vec p(2);
  p << 0.3, 0.7;
  CHECK(bregman_distance(BregmanKind::kEntropy, p, p) == doctest::Approx(0.0));

  Vec half(2), corner(2);
  half << 0.5, 0.5;
  corner << 1.0, 0.0;
  CHECK(bregman_distance(BregmanKind::kEntropy, half, corner) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  Vec bad(2);
  bad << 0.0, 1.0;
  CHECK_THROWS_AS(bregman_distance(BregmanKind::kEntropy, bad, corner),
                  std::domain_error);
}

TEST_CASE("entropy distance satisfies the Pinsker-type l1 lower bound") {
  Rng rng(777);
  for (int trial = 0; trial < 1000; ++trial) {
    int m = 2 + static_cast<int>(rng.bounded(3));
    Vec x(m), u(m);
    for (int i = 0; i < m; ++i) {
      x[i] = rng.uniform(1e-3, 1.0);
      u[i] = rng.uniform(0.0, 1.0);
    }
    x /= x.sum();
    u /= u.sum();
    double kl = bregman_distance(BregmanKind::kEntropy, x, u);
    double l1 = (x - u).lpNorm<1>();
    CHECK(kl >= 0.5 * l1 * l1 - 1e-12);
  }
}

TEST_CASE("pair norms: substitution values and Cauchy-Schwarz") {
  GeometryConstants consts = GeometryConstants::plain(2, 1.0);
  CHECK(consts.r_d_sq == doctest::Approx(0.5));
  CHECK(consts.r_lambda_sq == doctest::Approx(std::log(2.0)));

  InnerState z{Direction(Vec::Zero(2), 1.0), SimplexWeights::uniform(2)};
  CHECK(pair_norm(z, consts) == doctest::Approx(0.8493218002880191).epsilon(1e-12));

  CHECK(pair_dual_norm(Vec::Zero(2), Vec::Zero(2), consts) == doctest::Approx(0.0));

  Vec gd(2);
  gd << 1.0, 0.0;
  CHECK(pair_dual_norm(gd, Vec::Zero(2), consts) == doctest::Approx(1.0));

  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    Vec d(2);
    d << rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7);
    Vec lam(2);
    lam[0] = rng.uniform(0.01, 0.99);
    lam[1] = 1.0 - lam[0];
    InnerState state{Direction(d, 1.0), SimplexWeights(lam)};
    Vec g_d(2), g_l(2);
    g_d << rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0);
    g_l << rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0);
    double inner = g_d.dot(d) + g_l.dot(lam);
    CHECK(pair_dual_norm(g_d, g_l, consts) * pair_norm(state, consts) >=
          std::abs(inner) - 1e-9);
  }
}

TEST_CASE("preference geometry enlarges the direction ball constant") {
  GeometryConstants consts = GeometryConstants::with_preference(2, 1.0, 1.0, 1.0);
  CHECK(consts.r_d_sq == doctest::Approx(2.0));
  CHECK(consts.diameter_sq == doctest::Approx(1.0));
}
