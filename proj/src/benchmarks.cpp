#include "msmd/benchmarks.hpp"

#include <cmath>
#include <stdexcept>

namespace msmd {

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

BenchmarkSpec make_bk1() {
  ProblemInstance p;
  p.m = 2;
  p.n = 2;
  p.lower = vec2(-5.0, -5.0);
  p.upper = vec2(10.0, 10.0);
  p.evaluate = [](const Vec& x) {
    Vec f(2);
    f[0] = x[0] * x[0] + x[1] * x[1];
    f[1] = (x[0] - 5.0) * (x[0] - 5.0) + (x[1] - 5.0) * (x[1] - 5.0);
    return f;
  };
  p.gradient = [](const Vec& x) {
    Mat g(2, 2);
    g.row(0) << 2.0 * x[0], 2.0 * x[1];
    g.row(1) << 2.0 * (x[0] - 5.0), 2.0 * (x[1] - 5.0);
    return g;
  };
  p.pareto_set = [](double t) { return vec2(5.0 * t, 5.0 * t); };
  return {"bk1", std::move(p), vec2(60.0, 60.0)};
}

BenchmarkSpec make_ff1() {
  ProblemInstance p;
  p.m = 2;
  p.n = 2;
  p.lower = vec2(-1.0, -1.0);
  p.upper = vec2(1.0, 1.0);
  p.evaluate = [](const Vec& x) {
    Vec f(2);
    f[0] = 1.0 - std::exp(-(x[0] - 1.0) * (x[0] - 1.0) - (x[1] + 1.0) * (x[1] + 1.0));
    f[1] = 1.0 - std::exp(-(x[0] + 1.0) * (x[0] + 1.0) - (x[1] - 1.0) * (x[1] - 1.0));
    return f;
  };
  p.gradient = [](const Vec& x) {
    Mat g(2, 2);
    double e1 = std::exp(-(x[0] - 1.0) * (x[0] - 1.0) - (x[1] + 1.0) * (x[1] + 1.0));
    double e2 = std::exp(-(x[0] + 1.0) * (x[0] + 1.0) - (x[1] - 1.0) * (x[1] - 1.0));
    g.row(0) << 2.0 * (x[0] - 1.0) * e1, 2.0 * (x[1] + 1.0) * e1;
    g.row(1) << 2.0 * (x[0] + 1.0) * e2, 2.0 * (x[1] - 1.0) * e2;
    return g;
  };
  // Segment between the two exponential wells.
  p.pareto_set = [](double t) { return vec2(1.0 - 2.0 * t, -1.0 + 2.0 * t); };
  return {"ff1", std::move(p), vec2(1.2, 1.2)};
}

BenchmarkSpec make_lov1() {
  ProblemInstance p;
  p.m = 2;
  p.n = 2;
  p.lower = vec2(-10.0, -10.0);
  p.upper = vec2(10.0, 10.0);
  p.evaluate = [](const Vec& x) {
    Vec f(2);
    f[0] = 1.05 * x[0] * x[0] + 0.98 * x[1] * x[1];
    f[1] = 0.99 * (x[0] - 3.0) * (x[0] - 3.0) + 1.03 * (x[1] - 2.5) * (x[1] - 2.5);
    return f;
  };
  p.gradient = [](const Vec& x) {
    Mat g(2, 2);
    g.row(0) << 2.1 * x[0], 1.96 * x[1];
    g.row(1) << 1.98 * (x[0] - 3.0), 2.06 * (x[1] - 2.5);
    return g;
  };
  // Weighted-minimum curve of the two quadratics.
  p.pareto_set = [](double t) {
    double lam = 1.0 - t;
    double x1 = (1.0 - lam) * 0.99 * 3.0 / (lam * 1.05 + (1.0 - lam) * 0.99);
    double x2 = (1.0 - lam) * 1.03 * 2.5 / (lam * 0.98 + (1.0 - lam) * 1.03);
    return vec2(x1, x2);
  };
  return {"lov1", std::move(p), vec2(20.0, 20.0)};
}

BenchmarkSpec make_lov3() {
  ProblemInstance p;
  p.m = 2;
  p.n = 2;
  p.lower = vec2(-20.0, -20.0);
  p.upper = vec2(20.0, 20.0);
  p.evaluate = [](const Vec& x) {
    Vec f(2);
    f[0] = x[0] * x[0] + x[1] * x[1];
    f[1] = (x[0] - 6.0) * (x[0] - 6.0) + (x[1] + 0.3) * (x[1] + 0.3);
    return f;
  };
  p.gradient = [](const Vec& x) {
    Mat g(2, 2);
    g.row(0) << 2.0 * x[0], 2.0 * x[1];
    g.row(1) << 2.0 * (x[0] - 6.0), 2.0 * (x[1] + 0.3);
    return g;
  };
  p.pareto_set = [](double t) { return vec2(6.0 * t, -0.3 * t); };
  return {"lov3", std::move(p), vec2(40.0, 40.0)};
}

BenchmarkSpec make_toi4() {
  ProblemInstance p;
  p.m = 2;
  p.n = 4;
  p.lower = Vec::Constant(4, -2.0);
  p.upper = Vec::Constant(4, 5.0);
  p.evaluate = [](const Vec& x) {
    Vec f(2);
    f[0] = x[0] * x[0] + x[1] * x[1] + 1.0;
    f[1] = 0.5 * ((x[0] - x[1]) * (x[0] - x[1]) + (x[2] - x[3]) * (x[2] - x[3])) + 1.0;
    return f;
  };
  p.gradient = [](const Vec& x) {
    Mat g(2, 4);
    g.row(0) << 2.0 * x[0], 2.0 * x[1], 0.0, 0.0;
    g.row(1) << x[0] - x[1], x[1] - x[0], x[2] - x[3], x[3] - x[2];
    return g;
  };
  Vec ref(2);
  ref << 60.0, 60.0;
  return {"toi4", std::move(p), std::move(ref)};
}

BenchmarkSpec make_mop5() {
  ProblemInstance p;
  p.m = 3;
  p.n = 2;
  p.lower = vec2(-30.0, -30.0);
  p.upper = vec2(30.0, 30.0);
  p.evaluate = [](const Vec& x) {
    double s = x[0] * x[0] + x[1] * x[1];
    Vec f(3);
    f[0] = 0.5 * s + std::sin(s);
    double u = 3.0 * x[0] - 2.0 * x[1] + 4.0;
    double v = x[0] - x[1] + 1.0;
    f[1] = u * u / 8.0 + v * v / 27.0 + 15.0;
    f[2] = 1.0 / (s + 1.0) - 1.1 * std::exp(-s);
    return f;
  };
  p.gradient = [](const Vec& x) {
    double s = x[0] * x[0] + x[1] * x[1];
    double u = 3.0 * x[0] - 2.0 * x[1] + 4.0;
    double v = x[0] - x[1] + 1.0;
    double w = 1.1 * std::exp(-s) - 1.0 / ((s + 1.0) * (s + 1.0));
    Mat g(3, 2);
    g.row(0) << x[0] * (1.0 + 2.0 * std::cos(s)), x[1] * (1.0 + 2.0 * std::cos(s));
    g.row(1) << 3.0 * u / 4.0 + 2.0 * v / 27.0, -u / 2.0 - 2.0 * v / 27.0;
    g.row(2) << 2.0 * x[0] * w, 2.0 * x[1] * w;
    return g;
  };
  Vec ref(3);
  ref << 950.0, 3200.0, 0.5;
  return {"mop5", std::move(p), std::move(ref)};
}

}  // namespace

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names = {"bk1",  "ff1",  "lov1",
                                                 "lov3", "toi4", "mop5"};
  return names;
}

BenchmarkSpec get_problem(const std::string& name) {
  if (name == "bk1") return make_bk1();
  if (name == "ff1") return make_ff1();
  if (name == "lov1") return make_lov1();
  if (name == "lov3") return make_lov3();
  if (name == "toi4") return make_toi4();
  if (name == "mop5") return make_mop5();
  std::string listing;
  for (const auto& n : benchmark_names()) {
    if (!listing.empty()) listing += ", ";
    listing += n;
  }
  throw std::invalid_argument("unknown problem '" + name + "'; available: " + listing);
}

std::vector<Vec> multi_start(const ProblemInstance& problem, int n_starts,
                             std::uint64_t seed) {
  if (n_starts < 1) throw std::invalid_argument("multi start: need n_starts >= 1");
  Rng rng(seed);
  std::vector<Vec> points;
  points.reserve(n_starts);
  for (int i = 0; i < n_starts; ++i) {
    Vec x(problem.n);
    for (int j = 0; j < problem.n; ++j) {
      x[j] = rng.uniform(problem.lower[j], problem.upper[j]);
    }
    points.push_back(std::move(x));
  }
  return points;
}

}  // namespace msmd
