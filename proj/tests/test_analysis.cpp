#include <doctest.h>

#include <cmath>

#include "msmd/analysis.hpp"
#include "support.hpp"

using namespace msmd;
using msmd::testing::naive_front_indices;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

double monte_carlo_hv(const std::vector<Vec>& front, const Vec& ref, int samples,
                      Rng& rng, double& stderr_out) {
  const int m = static_cast<int>(ref.size());
  Vec lo = front.front();
  for (const auto& p : front) lo = lo.cwiseMin(p);
  double box = 1.0;
  for (int i = 0; i < m; ++i) box *= ref[i] - lo[i];
  int hits = 0;
  Vec pt(m);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < m; ++i) pt[i] = rng.uniform(lo[i], ref[i]);
    for (const auto& p : front) {
      bool dominated = true;
      for (int i = 0; i < m; ++i) dominated = dominated && p[i] <= pt[i];
      if (dominated) {
        ++hits;
        break;
      }
    }
  }
  double frac = static_cast<double>(hits) / samples;
  stderr_out = box * std::sqrt(frac * (1.0 - frac) / samples);
  return box * frac;
}

}  // namespace

TEST_CASE("dominance and the filter: pinned examples") {
  CHECK(dominates(v2(1, 2), v2(2, 2)));
  CHECK_FALSE(dominates(v2(1, 2), v2(1, 2)));  // u != v fails
  CHECK_FALSE(dominates(v2(2, 1), v2(1, 2)));

  auto front = nondominated_filter({v2(1, 2), v2(2, 1), v2(2, 2)});
  REQUIRE(front.points.size() == 2);
  CHECK(front.points[0].origin == 0);
  CHECK(front.points[1].origin == 1);

  auto dup = nondominated_filter({v2(1, 1), v2(1, 1)});
  CHECK(dup.points.size() == 2);

  auto single = nondominated_filter({v3(1, 2, 3)});
  CHECK(single.points.size() == 1);
}

TEST_CASE("filter equals an independent naive implementation") {
  Rng rng(808);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + static_cast<int>(rng.bounded(2));
    int count = 1 + static_cast<int>(rng.bounded(200));
    std::vector<Vec> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
      Vec p(m);
      // A coarse lattice forces ties and duplicates.
      for (int c = 0; c < m; ++c) p[c] = std::round(rng.uniform(0.0, 8.0));
      pts.push_back(p);
    }
    auto fast = nondominated_filter(pts);
    auto slow = naive_front_indices(pts);
    REQUIRE(fast.points.size() == slow.size());
    for (std::size_t i = 0; i < slow.size(); ++i) {
      CHECK(fast.points[i].origin == slow[i]);
    }
  }
}

TEST_CASE("hypervolume: pinned examples") {
  auto front = nondominated_filter({v2(1, 2), v2(2, 1)});
  CHECK(hypervolume(front, v2(3, 3)) == doctest::Approx(3.0));

  auto unit = nondominated_filter({v2(1, 1)});
  CHECK(hypervolume(unit, v2(2, 2)) == doctest::Approx(1.0));

  ParetoFront empty;
  CHECK(hypervolume(empty, v2(1, 1)) == doctest::Approx(0.0));

  auto bad = nondominated_filter({v2(5, 5)});
  CHECK_THROWS_WITH_AS(hypervolume(bad, v2(3, 3)), doctest::Contains("origin 0"),
                       std::invalid_argument);

  // Hand 3-D case: two boxes, overlap subtracted once.
  auto cube = nondominated_filter({v3(0, 0, 1), v3(1, 1, 0)});
  // vol([0,2]x[0,2]x[1,2]) + vol([1,2]x[1,2]x[0,2]) - overlap [1,2]^2 x [1,2]
  CHECK(hypervolume(cube, v3(2, 2, 2)) == doctest::Approx(4.0 + 2.0 - 1.0));
}

TEST_CASE("hypervolume agrees with Monte-Carlo within 3 standard errors") {
  Rng rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    int m = trial % 2 == 0 ? 2 : 3;
    std::vector<Vec> pts;
    for (int i = 0; i < 12; ++i) {
      Vec p(m);
      for (int c = 0; c < m; ++c) p[c] = rng.uniform(0.0, 1.0);
      pts.push_back(p);
    }
    auto front = nondominated_filter(pts);
    Vec ref = Vec::Constant(m, 1.2);
    double exact = hypervolume(front, ref);
    std::vector<Vec> plain;
    for (const auto& fp : front.points) plain.push_back(fp.f);
    double se = 0.0;
    double estimate = monte_carlo_hv(plain, ref, 200000, rng, se);
    CHECK(std::abs(exact - estimate) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("hypervolume monotonicity and translation invariance") {
  Rng rng(909);
  for (int trial = 0; trial < 50; ++trial) {
    int m = 2 + static_cast<int>(rng.bounded(2));
    std::vector<Vec> pts;
    for (int i = 0; i < 10; ++i) {
      Vec p(m);
      for (int c = 0; c < m; ++c) p[c] = rng.uniform(0.0, 1.0);
      pts.push_back(p);
    }
    Vec ref = Vec::Constant(m, 1.5);
    double base = hypervolume(nondominated_filter(pts), ref);

    // Adding a fresh point never shrinks the dominated region.
    Vec extra(m);
    for (int c = 0; c < m; ++c) extra[c] = rng.uniform(0.0, 1.0);
    auto more = pts;
    more.push_back(extra);
    CHECK(hypervolume(nondominated_filter(more), ref) >= base - 1e-12);

    // Shifting everything (points and reference) leaves the volume unchanged.
    Vec shift(m);
    for (int c = 0; c < m; ++c) shift[c] = rng.uniform(-5.0, 5.0);
    std::vector<Vec> moved;
    for (const auto& p : pts) moved.push_back(p + shift);
    double shifted = hypervolume(nondominated_filter(moved), Vec(ref + shift));
    CHECK(shifted == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("bk1 front distance: pinned examples") {
  CHECK(bk1_front_distance(v2(2, 2)) == doctest::Approx(0.0));
  CHECK(bk1_front_distance(v2(1, 0)) == doctest::Approx(std::sqrt(0.5)));
  CHECK(bk1_front_distance(v2(6, 6)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("rate slope: exact power laws") {
  std::vector<double> K = {25, 50, 100, 200};
  std::vector<double> sqrt_law, flat, linear;
  for (double k : K) {
    sqrt_law.push_back(3.7 / std::sqrt(k));
    flat.push_back(2.2);
    linear.push_back(5.0 / k);
  }
  CHECK(rate_slope(K, sqrt_law) == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(rate_slope(K, flat) == doctest::Approx(0.0));
  CHECK(rate_slope(K, linear) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK_THROWS_AS(rate_slope(K, {1.0, -1.0, 1.0, 1.0}), std::invalid_argument);
}
