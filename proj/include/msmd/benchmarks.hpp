#ifndef MSMD_BENCHMARKS_HPP_
#define MSMD_BENCHMARKS_HPP_

#include <string>
#include <vector>

#include "msmd/core.hpp"

namespace msmd {

struct BenchmarkSpec {
  std::string name;
  ProblemInstance problem;
  Vec reference_point;  // for hypervolume
};

// Stable lowercase identifiers: bk1, ff1, lov1, lov3, toi4, mop5.
const std::vector<std::string>& benchmark_names();

// Throws with the list of available names on an unknown identifier.
BenchmarkSpec get_problem(const std::string& name);

// Uniform i.i.d. starting points in the box, deterministic under the seed.
std::vector<Vec> multi_start(const ProblemInstance& problem, int n_starts,
                             std::uint64_t seed);

}  // namespace msmd

#endif  // MSMD_BENCHMARKS_HPP_
