#ifndef MSMD_EXPERIMENT_HPP_
#define MSMD_EXPERIMENT_HPP_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "msmd/analysis.hpp"
#include "msmd/benchmarks.hpp"

namespace msmd {

enum class Method {
  kMsmd,
  kMsmdPref,
  kMgda,
  kPcgrad,
  kSmg,
  kCrMogm,
  kSdmgradLite,
  kSgd,
  kAdam,
  kRmsProp,
};

const std::vector<std::string>& method_names();
std::string method_name(Method method);
Method method_from_name(const std::string& name);  // throws listing valid names

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  std::string problem;
  Method method = Method::kMsmd;

  int K = 100;
  int n_starts = 100;
  std::uint64_t master_seed = 0;
  double rho = 0.5;

  std::string outer = "fixed";  // fixed | varying
  double alpha = 0.01;
  double rho_step = 1.0;

  std::string inner = "explicit";  // fixed | varying | explicit
  double theta = 1.0;
  double gamma = 0.05;

  std::string budget = "explicit";  // global-square | per-iter-square | explicit
  int S = 300;
  double r = 0.5;

  double cf = 0.0;  // <= 0: estimate from a Latin hypercube probe

  double beta = 0.9;       // cr-mogm blend
  double sdm_gamma = 0.01; // sdmgrad-lite simplex-SGD step
  double mu = 0.0;         // preference strength
  std::vector<double> w;   // preference weights; empty = uniform

  std::string out_dir = "results";
  int log_every = 0;  // 0: terminal rows only
  bool timing = false;
  int jobs = 1;

  // Resolved key=value view (defaults included), for the JSON export.
  std::map<std::string, std::string> resolved() const;
};

// Flat key=value text, '#' comments, optional [method] sections whose keys
// apply only when that method is selected. Errors carry the line number.
RunConfig parse_config(const std::string& text);

struct RunRecord {
  std::string method;
  std::string problem;
  std::uint64_t seed = 0;  // master seed
  int start = 0;
  int k = 0;
  Vec x;
  Vec f;
  double alpha = 0.0;
  long S = 0;
  double wall_ms = 0.0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::uint64_t oracle_draws = 0;   // measured across all runs
  std::uint64_t expected_draws = 0; // analytic count for the method
  double cf_used = 0.0;
  double m_star_used = 0.0;
};

// Runs the configured method from every start point. Child seeds are derived
// order-free from (master seed, method, start index), so parallel and serial
// execution produce identical results.
ExperimentResult run_experiment(const RunConfig& config);

// CSV columns: method,problem,seed,start,k,x0..x{n-1},f0..f{m-1},alpha,S,wall_ms
void export_csv(const std::vector<RunRecord>& records, const std::string& path);
std::vector<RunRecord> import_csv(const std::string& path);

void export_json(const ExperimentResult& result, const RunConfig& config,
                 const std::string& path);

struct FrontLayer {
  std::vector<Vec> raw_terminals;  // all terminal objective vectors
  ParetoFront front;               // their non-dominated subset
};

// Standalone SVG scatter: solid markers for front points, faint ones for
// dominated terminals, one marker style per method, legend, numeric ticks.
// m = 3 renders three pairwise panels. Deterministic for fixed input.
void emit_svg_scatter(const std::map<std::string, FrontLayer>& fronts, int m,
                      const std::string& path);

// Terminal rows of a result grouped per method, as layers for the plot.
std::map<std::string, FrontLayer> front_layers_from_records(
    const std::vector<RunRecord>& records);

}  // namespace msmd

#endif  // MSMD_EXPERIMENT_HPP_
