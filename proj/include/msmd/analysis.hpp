#ifndef MSMD_ANALYSIS_HPP_
#define MSMD_ANALYSIS_HPP_

#include <vector>

#include "msmd/core.hpp"

namespace msmd {

// u dominates v iff u <= v componentwise and u != v. Exact ties on every
// coordinate dominate in neither direction, so duplicates are both kept.
bool dominates(const Vec& u, const Vec& v);

struct FrontPoint {
  Vec f;
  int origin;  // index into the input set
};

struct ParetoFront {
  std::vector<FrontPoint> points;  // stable order by input index
  int input_size = 0;
};

ParetoFront nondominated_filter(const std::vector<Vec>& points);

// Exact dominated hypervolume against a reference point every front point
// must strictly dominate. m = 2: sort-and-sweep; m = 3: dimension sweep over
// f3 slabs with a 2-D sweep per slab.
double hypervolume(const ParetoFront& front, const Vec& ref);

// Decision-space distance from x to the segment {(t, t): t in [0, 5]}.
double bk1_front_distance(const Vec& x);

// OLS slope of ln(means) against ln(K_values).
double rate_slope(const std::vector<double>& K_values,
                  const std::vector<double>& means);

}  // namespace msmd

#endif  // MSMD_ANALYSIS_HPP_
