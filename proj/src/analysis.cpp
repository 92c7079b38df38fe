#include "msmd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace msmd {

bool dominates(const Vec& u, const Vec& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("dominance: dimension mismatch");
  bool strictly_better_somewhere = false;
  for (int i = 0; i < u.size(); ++i) {
    if (u[i] > v[i]) return false;
    if (u[i] < v[i]) strictly_better_somewhere = true;
  }
  return strictly_better_somewhere;
}

ParetoFront nondominated_filter(const std::vector<Vec>& points) {
  ParetoFront front;
  front.input_size = static_cast<int>(points.size());
  if (points.empty()) return front;
  const auto dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim)
      throw std::invalid_argument("nondominated filter: dimension mismatch");
  }
  for (int i = 0; i < front.input_size; ++i) {
    bool dominated = false;
    for (int j = 0; j < front.input_size && !dominated; ++j) {
      if (j != i && dominates(points[j], points[i])) dominated = true;
    }
    if (!dominated) front.points.push_back({points[i], i});
  }
  return front;
}

namespace {

// Area dominated by a mutually non-dominated 2-D set, bounded by ref.
double sweep_area_2d(std::vector<Vec> pts, const Vec& ref) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a[1] < b[1];
  });
  double area = 0.0;
  double prev_height = ref[1];
  for (const auto& p : pts) {
    if (p[1] < prev_height) {
      area += (ref[0] - p[0]) * (prev_height - p[1]);
      prev_height = p[1];
    }
  }
  return area;
}

}  // namespace

double hypervolume(const ParetoFront& front, const Vec& ref) {
  const int m = static_cast<int>(ref.size());
  if (m != 2 && m != 3)
    throw std::invalid_argument("hypervolume: only m in {2,3} supported");
  if (front.points.empty()) return 0.0;

  std::string offenders;
  for (const auto& pt : front.points) {
    if (pt.f.size() != m)
      throw std::invalid_argument("hypervolume: point dimension mismatch");
    for (int i = 0; i < m; ++i) {
      if (!(pt.f[i] < ref[i])) {
        offenders += (offenders.empty() ? "" : "; ") + std::string("origin ") +
                     std::to_string(pt.origin);
        break;
      }
    }
  }
  if (!offenders.empty())
    throw std::invalid_argument(
        "hypervolume: points not strictly dominating the reference: " + offenders);

  if (m == 2) {
    std::vector<Vec> pts;
    pts.reserve(front.points.size());
    for (const auto& pt : front.points) pts.push_back(pt.f);
    return sweep_area_2d(std::move(pts), ref);
  }

  // m = 3: slice along f3. Between consecutive f3 levels the dominated
  // cross-section is fixed and equals the 2-D area of the points at or below
  // the slab floor.
  std::vector<Vec> pts;
  for (const auto& pt : front.points) pts.push_back(pt.f);
  std::sort(pts.begin(), pts.end(),
            [](const Vec& a, const Vec& b) { return a[2] < b[2]; });
  std::vector<double> levels;
  for (const auto& p : pts) levels.push_back(p[2]);
  levels.push_back(ref[2]);

  double volume = 0.0;
  Vec ref2 = ref.head(2);
  std::vector<Vec> active;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    Vec slice(2);
    slice << pts[i][0], pts[i][1];
    active.push_back(slice);
    double thickness = levels[i + 1] - levels[i];
    if (thickness <= 0.0) continue;
    volume += sweep_area_2d(active, ref2) * thickness;
  }
  return volume;
}

double bk1_front_distance(const Vec& x) {
  if (x.size() != 2) throw std::invalid_argument("bk1 distance: expected n = 2");
  double t = std::clamp((x[0] + x[1]) / 2.0, 0.0, 5.0);
  double dx = x[0] - t;
  double dy = x[1] - t;
  return std::sqrt(dx * dx + dy * dy);
}

double rate_slope(const std::vector<double>& K_values,
                  const std::vector<double>& means) {
  if (K_values.size() != means.size() || K_values.size() < 3)
    throw std::invalid_argument("rate slope: need equal lengths >= 3");
  const int n = static_cast<int>(K_values.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(K_values[i] > 0.0) || !(means[i] > 0.0))
      throw std::invalid_argument("rate slope: entries must be positive");
    double lx = std::log(K_values[i]);
    double ly = std::log(means[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("rate slope: degenerate K values");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace msmd
