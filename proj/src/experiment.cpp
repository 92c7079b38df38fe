#include "msmd/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "msmd/baselines.hpp"
#include "msmd/solver.hpp"

namespace msmd {

namespace {

constexpr std::uint64_t kStartsStream = 1000;

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed,
                           precision);
  return std::string(buf, res.ptr);
}

std::string fmt_general(double v, int precision) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                           precision);
  return std::string(buf, res.ptr);
}

double parse_double_or_throw(const std::string& token, const std::string& where) {
  double value = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ConfigError(where + ": not a number: '" + token + "'");
  return value;
}

long parse_long_or_throw(const std::string& token, const std::string& where) {
  long value = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ConfigError(where + ": not an integer: '" + token + "'");
  return value;
}

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = {
      "msmd",    "msmd-pref", "mgda", "pcgrad", "smg",
      "cr-mogm", "sdmgrad-lite", "sgd", "adam", "rmsprop"};
  return names;
}

std::string method_name(Method method) {
  return method_names()[static_cast<int>(method)];
}

Method method_from_name(const std::string& name) {
  const auto& names = method_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<Method>(i);
  }
  std::string listing;
  for (const auto& n : names) {
    if (!listing.empty()) listing += ", ";
    listing += n;
  }
  throw ConfigError("unknown method '" + name + "'; valid methods: " + listing);
}

std::map<std::string, std::string> RunConfig::resolved() const {
  std::map<std::string, std::string> out;
  out["problem"] = problem;
  out["method"] = method_name(method);
  out["K"] = std::to_string(K);
  out["n_starts"] = std::to_string(n_starts);
  out["seed"] = std::to_string(master_seed);
  out["rho"] = fmt_double(rho);
  out["outer"] = outer;
  out["alpha"] = fmt_double(alpha);
  out["rho_step"] = fmt_double(rho_step);
  out["inner"] = inner;
  out["theta"] = fmt_double(theta);
  out["gamma"] = fmt_double(gamma);
  out["budget"] = budget;
  out["S"] = std::to_string(S);
  out["r"] = fmt_double(r);
  out["cf"] = fmt_double(cf);
  out["beta"] = fmt_double(beta);
  out["sdm_gamma"] = fmt_double(sdm_gamma);
  out["mu"] = fmt_double(mu);
  std::string ws;
  for (double wi : w) {
    if (!ws.empty()) ws += ",";
    ws += fmt_double(wi);
  }
  out["w"] = ws;
  out["out_dir"] = out_dir;
  out["log_every"] = std::to_string(log_every);
  out["timing"] = timing ? "true" : "false";
  out["jobs"] = std::to_string(jobs);
  return out;
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  bool have_problem = false, have_method = false;
  std::string section;  // active [method] section, empty = global
  int problem_line = 0;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;

  // First pass finds the method so section scoping can be applied on the fly.
  {
    std::istringstream scan(text);
    std::string l;
    int ln = 0;
    while (std::getline(scan, l)) {
      ++ln;
      auto hash = l.find('#');
      if (hash != std::string::npos) l = l.substr(0, hash);
      l = trim(l);
      if (l.empty() || l.front() == '[') continue;
      auto eq = l.find('=');
      if (eq == std::string::npos) continue;
      if (trim(l.substr(0, eq)) == "method") {
        config.method = method_from_name(trim(l.substr(eq + 1)));
        have_method = true;
      }
    }
  }

  auto err = [&](int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
  };

  while (std::getline(stream, raw)) {
    ++line_no;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') err(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      method_from_name(section);  // must name a known method
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) err(line_no, "expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) err(line_no, "empty key");

    // Keys inside a section apply only to that method.
    if (!section.empty()) {
      if (key == "method" || key == "problem")
        err(line_no, key + " must be set globally, not inside a section");
      if (!have_method || section != method_name(config.method)) continue;
    }

    const std::string where = "line " + std::to_string(line_no) + ": " + key;
    if (key == "problem") {
      config.problem = value;
      have_problem = true;
      problem_line = line_no;
    } else if (key == "method") {
      // handled in the scan pass; accept silently
    } else if (key == "K") {
      long v = parse_long_or_throw(value, where);
      if (v < 1) err(line_no, "K: must be >= 1 (got " + value + ")");
      config.K = static_cast<int>(v);
    } else if (key == "n_starts") {
      long v = parse_long_or_throw(value, where);
      if (v < 1) err(line_no, "n_starts: must be >= 1 (got " + value + ")");
      config.n_starts = static_cast<int>(v);
    } else if (key == "seed") {
      config.master_seed = static_cast<std::uint64_t>(parse_long_or_throw(value, where));
    } else if (key == "rho") {
      double v = parse_double_or_throw(value, where);
      if (v < 0.0) err(line_no, "rho: must be >= 0 (got " + value + ")");
      config.rho = v;
    } else if (key == "outer") {
      if (value != "fixed" && value != "varying")
        err(line_no, "outer: expected fixed or varying (got " + value + ")");
      config.outer = value;
    } else if (key == "alpha") {
      double v = parse_double_or_throw(value, where);
      if (v < 0.0) err(line_no, "alpha: must be >= 0 (got " + value + ")");
      config.alpha = v;
    } else if (key == "rho_step") {
      double v = parse_double_or_throw(value, where);
      if (!(v > 0.0)) err(line_no, "rho_step: must be > 0 (got " + value + ")");
      config.rho_step = v;
    } else if (key == "inner") {
      if (value != "fixed" && value != "varying" && value != "explicit")
        err(line_no, "inner: expected fixed, varying or explicit (got " + value + ")");
      config.inner = value;
    } else if (key == "theta") {
      double v = parse_double_or_throw(value, where);
      if (!(v > 0.0)) err(line_no, "theta: must be > 0 (got " + value + ")");
      config.theta = v;
    } else if (key == "gamma") {
      double v = parse_double_or_throw(value, where);
      if (!(v > 0.0)) err(line_no, "gamma: must be > 0 (got " + value + ")");
      config.gamma = v;
    } else if (key == "budget") {
      if (value != "global-square" && value != "per-iter-square" && value != "explicit")
        err(line_no,
            "budget: expected global-square, per-iter-square or explicit (got " +
                value + ")");
      config.budget = value;
    } else if (key == "S") {
      long v = parse_long_or_throw(value, where);
      if (v < 1) err(line_no, "S: must be >= 1 (got " + value + ")");
      config.S = static_cast<int>(v);
    } else if (key == "r") {
      double v = parse_double_or_throw(value, where);
      if (!(v > 0.0 && v < 1.0)) err(line_no, "r: must lie in (0,1) (got " + value + ")");
      config.r = v;
    } else if (key == "cf") {
      if (value == "auto") {
        config.cf = 0.0;
      } else {
        double v = parse_double_or_throw(value, where);
        if (!(v > 0.0)) err(line_no, "cf: must be > 0 or auto (got " + value + ")");
        config.cf = v;
      }
    } else if (key == "beta") {
      double v = parse_double_or_throw(value, where);
      if (v < 0.0 || v > 1.0) err(line_no, "beta: must lie in [0,1] (got " + value + ")");
      config.beta = v;
    } else if (key == "sdm_gamma") {
      double v = parse_double_or_throw(value, where);
      if (!(v > 0.0)) err(line_no, "sdm_gamma: must be > 0 (got " + value + ")");
      config.sdm_gamma = v;
    } else if (key == "mu") {
      double v = parse_double_or_throw(value, where);
      if (v < 0.0) err(line_no, "mu: must be >= 0 (got " + value + ")");
      config.mu = v;
    } else if (key == "w") {
      std::vector<double> weights;
      std::istringstream ws(value);
      std::string tok;
      while (std::getline(ws, tok, ',')) {
        double wi = parse_double_or_throw(trim(tok), where);
        if (wi < 0.0) err(line_no, "w: entries must be >= 0");
        weights.push_back(wi);
      }
      double sum = 0.0;
      for (double wi : weights) sum += wi;
      if (weights.empty() || sum <= 0.0) err(line_no, "w: needs positive total mass");
      for (double& wi : weights) wi /= sum;
      config.w = std::move(weights);
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else if (key == "log_every") {
      long v = parse_long_or_throw(value, where);
      if (v < 0) err(line_no, "log_every: must be >= 0 (got " + value + ")");
      config.log_every = static_cast<int>(v);
    } else if (key == "timing") {
      if (value != "true" && value != "false")
        err(line_no, "timing: expected true or false (got " + value + ")");
      config.timing = value == "true";
    } else if (key == "jobs") {
      long v = parse_long_or_throw(value, where);
      if (v < 1) err(line_no, "jobs: must be >= 1 (got " + value + ")");
      config.jobs = static_cast<int>(v);
    } else {
      err(line_no, "unknown key '" + key + "'");
    }
  }

  if (!have_problem) throw ConfigError("missing required key 'problem'");
  if (!have_method) throw ConfigError("missing required key 'method'");

  BenchmarkSpec spec = [&] {
    try {
      return get_problem(config.problem);
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(problem_line) + ": " + e.what());
    }
  }();

  if (!config.w.empty() && static_cast<int>(config.w.size()) != spec.problem.m)
    throw ConfigError("w: expected " + std::to_string(spec.problem.m) +
                      " weights for " + config.problem);
  return config;
}

namespace {

struct TrajRow {
  int k;
  Vec x;
  Vec f;
  double alpha;
  long S;
};

std::vector<TrajRow> run_single(const RunConfig& config, const BenchmarkSpec& spec,
                                double cf, double m_star, int start_idx,
                                const Vec& x0, std::uint64_t& draws_out) {
  const ProblemInstance& problem = spec.problem;
  const std::uint64_t child_seed = derive_seed(
      config.master_seed, static_cast<std::uint64_t>(config.method), start_idx);
  std::vector<TrajRow> rows;
  rows.reserve(config.K + 1);

  auto outer_alpha = [&](int k) {
    return config.outer == "fixed" ? config.alpha : config.rho_step / (k + 1);
  };

  switch (config.method) {
    case Method::kMsmd:
    case Method::kMsmdPref: {
      StochasticOracle oracle(problem, config.rho, child_seed);
      SolveOptions options;
      options.K = config.K;
      options.outer = config.outer == "fixed" ? OuterSchedule::fixed(config.alpha)
                                              : OuterSchedule::varying(config.rho_step);
      if (config.inner == "fixed") {
        options.inner = InnerSchedule::fixed(config.theta, m_star);
      } else if (config.inner == "varying") {
        options.inner = InnerSchedule::varying(config.theta, m_star);
      } else {
        options.inner = InnerSchedule::explicit_gamma(config.gamma);
      }
      if (config.budget == "global-square") {
        options.budget = InnerBudgetRule::global_square();
      } else if (config.budget == "per-iter-square") {
        options.budget = InnerBudgetRule::per_iter_square();
      } else {
        options.budget = InnerBudgetRule::explicit_steps_of(config.S);
      }
      options.tail_fraction = config.r;
      options.gradient_bound = cf;

      Trajectory traj;
      if (config.method == Method::kMsmdPref) {
        Vec w = Vec::Constant(problem.m, 1.0 / problem.m);
        if (!config.w.empty()) {
          w = Eigen::Map<const Vec>(config.w.data(),
                                    static_cast<Eigen::Index>(config.w.size()));
        }
        PreferenceSpec pref{SimplexWeights(w), config.mu, cf, -1.0};
        traj = solve_with_preference(problem, oracle, x0, pref, options);
      } else {
        traj = solve(problem, oracle, x0, options);
      }
      if (traj.failure.has_value())
        throw std::runtime_error("solver aborted: " + *traj.failure);
      for (const auto& pt : traj.points)
        rows.push_back({pt.k, pt.x, pt.f, pt.alpha, pt.inner_steps});
      draws_out = oracle.draw_count();
      return rows;
    }

    case Method::kMgda: {
      Vec x = x0;
      for (int k = 0; k < config.K; ++k) {
        double alpha = outer_alpha(k);
        rows.push_back({k, x, problem.evaluate(x), alpha, 1});
        x += alpha * mgda_minnorm(problem.gradient(x)).d;
      }
      rows.push_back({config.K, x, problem.evaluate(x), rows.back().alpha, 1});
      draws_out = 0;
      return rows;
    }

    case Method::kPcgrad: {
      Rng rng(child_seed);
      Vec x = x0;
      for (int k = 0; k < config.K; ++k) {
        double alpha = outer_alpha(k);
        rows.push_back({k, x, problem.evaluate(x), alpha, 1});
        x += alpha * pcgrad_direction(problem.gradient(x), rng);
      }
      rows.push_back({config.K, x, problem.evaluate(x), rows.back().alpha, 1});
      draws_out = 0;
      return rows;
    }

    case Method::kSmg: {
      StochasticOracle oracle(problem, config.rho, child_seed);
      Vec x = x0;
      for (int k = 0; k < config.K; ++k) {
        double alpha = outer_alpha(k);
        rows.push_back({k, x, problem.evaluate(x), alpha, 1});
        x = smg_step(oracle, x, alpha);
      }
      rows.push_back({config.K, x, problem.evaluate(x), rows.back().alpha, 1});
      draws_out = oracle.draw_count();
      return rows;
    }

    case Method::kCrMogm: {
      StochasticOracle oracle(problem, config.rho, child_seed);
      CrMogmState state{SimplexWeights::uniform(problem.m), config.beta};
      Vec x = x0;
      for (int k = 0; k < config.K; ++k) {
        double alpha = outer_alpha(k);
        rows.push_back({k, x, problem.evaluate(x), alpha, 1});
        auto [next_state, next_x] = cr_mogm_step(state, oracle, x, alpha);
        state = std::move(next_state);
        x = std::move(next_x);
      }
      rows.push_back({config.K, x, problem.evaluate(x), rows.back().alpha, 1});
      draws_out = oracle.draw_count();
      return rows;
    }

    case Method::kSdmgradLite: {
      StochasticOracle oracle(problem, config.rho, child_seed);
      Vec x = x0;
      for (int k = 0; k < config.K; ++k) {
        double alpha = outer_alpha(k);
        rows.push_back({k, x, problem.evaluate(x), alpha, config.S});
        x = sdmgrad_lite_step(oracle, x, alpha, config.S, config.sdm_gamma).x_next;
      }
      rows.push_back({config.K, x, problem.evaluate(x), rows.back().alpha, config.S});
      draws_out = oracle.draw_count();
      return rows;
    }

    case Method::kSgd:
    case Method::kAdam:
    case Method::kRmsProp: {
      ScalarOptKind kind = config.method == Method::kSgd  ? ScalarOptKind::kSgd
                           : config.method == Method::kAdam ? ScalarOptKind::kAdam
                                                            : ScalarOptKind::kRmsProp;
      StochasticOracle oracle(problem, config.rho, child_seed);
      WeightedSumState state = WeightedSumState::init(kind, problem.n);
      Vec x = x0;
      for (int k = 0; k < config.K; ++k) {
        double alpha = outer_alpha(k);
        rows.push_back({k, x, problem.evaluate(x), alpha, 1});
        auto [next_state, next_x] = weighted_sum_step(state, oracle, x, alpha);
        state = std::move(next_state);
        x = std::move(next_x);
      }
      rows.push_back({config.K, x, problem.evaluate(x), rows.back().alpha, 1});
      draws_out = oracle.draw_count();
      return rows;
    }
  }
  throw std::logic_error("run_single: unknown method");
}

std::uint64_t analytic_draws(const RunConfig& config) {
  const auto K = static_cast<std::uint64_t>(config.K);
  const auto starts = static_cast<std::uint64_t>(config.n_starts);
  switch (config.method) {
    case Method::kMsmd:
    case Method::kMsmdPref: {
      std::uint64_t per_start = 0;
      for (int k = 0; k < config.K; ++k) {
        if (config.budget == "global-square") {
          per_start += static_cast<std::uint64_t>(config.K + 1) * (config.K + 1);
        } else if (config.budget == "per-iter-square") {
          per_start += static_cast<std::uint64_t>(k + 1) * (k + 1);
        } else {
          per_start += static_cast<std::uint64_t>(config.S);
        }
      }
      return per_start * starts;
    }
    case Method::kMgda:
    case Method::kPcgrad:
      return 0;
    case Method::kSdmgradLite:
      return 3ULL * static_cast<std::uint64_t>(config.S) * K * starts;
    default:
      return K * starts;
  }
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& config) {
  BenchmarkSpec spec = get_problem(config.problem);
  const ProblemInstance& problem = spec.problem;

  const double cf =
      config.cf > 0.0 ? config.cf : estimate_gradient_bound(problem);
  const double delta = config.rho * (problem.upper - problem.lower).norm();
  double m_star = 1.0;
  if (config.method == Method::kMsmdPref && config.mu > 0.0) {
    m_star = compute_m_star_preference(problem.m, cf, delta, config.mu, cf, delta);
  } else {
    m_star = compute_m_star(problem.m, cf, delta);
  }

  std::vector<Vec> starts = multi_start(
      problem, config.n_starts, derive_seed(config.master_seed, kStartsStream, 0));

  std::vector<std::vector<RunRecord>> per_start(config.n_starts);
  std::vector<std::uint64_t> draws(config.n_starts, 0);

  auto run_one = [&](int i) {
    auto begin = std::chrono::steady_clock::now();
    std::uint64_t run_draws = 0;
    std::vector<TrajRow> rows;
    bool failed = false;
    std::string failure;
    try {
      rows = run_single(config, spec, cf, m_star, i, starts[i], run_draws);
    } catch (const std::exception& e) {
      failed = true;
      failure = e.what();
    }
    double wall_ms = 0.0;
    if (config.timing) {
      auto end = std::chrono::steady_clock::now();
      wall_ms = std::chrono::duration<double, std::milli>(end - begin).count();
    }
    std::vector<RunRecord> out;
    auto push_row = [&](const TrajRow& row, double wall) {
      RunRecord rec;
      rec.method = method_name(config.method);
      rec.problem = config.problem;
      rec.seed = config.master_seed;
      rec.start = i;
      rec.k = row.k;
      rec.x = row.x;
      rec.f = row.f;
      rec.alpha = row.alpha;
      rec.S = row.S;
      rec.wall_ms = wall;
      out.push_back(std::move(rec));
    };
    if (failed) {
      // Failed rows keep the start visible in the output; x and f carry NaN.
      TrajRow row{-1, Vec::Constant(problem.n, std::nan("")),
                  Vec::Constant(problem.m, std::nan("")), 0.0, 0};
      push_row(row, wall_ms);
    } else {
      for (const auto& row : rows) {
        bool terminal = row.k == config.K;
        bool logged = config.log_every > 0 && row.k < config.K &&
                      row.k % config.log_every == 0;
        if (terminal || logged) push_row(row, terminal ? wall_ms : 0.0);
      }
    }
    per_start[i] = std::move(out);
    draws[i] = run_draws;
  };

  const int jobs = std::min(config.jobs, config.n_starts);
  if (jobs <= 1) {
    for (int i = 0; i < config.n_starts; ++i) run_one(i);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int t = 0; t < jobs; ++t) {
      workers.emplace_back([&, t] {
        for (int i = t; i < config.n_starts; i += jobs) run_one(i);
      });
    }
    for (auto& worker : workers) worker.join();
  }

  ExperimentResult result;
  result.cf_used = cf;
  result.m_star_used = m_star;
  result.expected_draws = analytic_draws(config);
  for (int i = 0; i < config.n_starts; ++i) {
    result.oracle_draws += draws[i];
    for (auto& rec : per_start[i]) result.records.push_back(std::move(rec));
  }
  return result;
}

void export_csv(const std::vector<RunRecord>& records, const std::string& path) {
  if (records.empty()) throw std::invalid_argument("export csv: no records");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("export csv: cannot open " + path);
  const int n = static_cast<int>(records.front().x.size());
  const int m = static_cast<int>(records.front().f.size());
  out << "method,problem,seed,start,k";
  for (int j = 0; j < n; ++j) out << ",x" << j;
  for (int i = 0; i < m; ++i) out << ",f" << i;
  out << ",alpha,S,wall_ms\n";
  for (const auto& rec : records) {
    out << rec.method << ',' << rec.problem << ',' << rec.seed << ','
        << rec.start << ',' << rec.k;
    for (int j = 0; j < n; ++j) out << ',' << fmt_double(rec.x[j]);
    for (int i = 0; i < m; ++i) out << ',' << fmt_double(rec.f[i]);
    out << ',' << fmt_double(rec.alpha) << ',' << rec.S << ','
        << fmt_double(rec.wall_ms) << '\n';
  }
  if (!out) throw std::runtime_error("export csv: write failed for " + path);
}

std::vector<RunRecord> import_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("import csv: cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("import csv: empty file");
  std::vector<std::string> cols;
  {
    std::istringstream hs(header);
    std::string tok;
    while (std::getline(hs, tok, ',')) cols.push_back(tok);
  }
  int n = 0, m = 0;
  for (const auto& c : cols) {
    if (c.size() >= 2 && c[0] == 'x' && std::isdigit(static_cast<unsigned char>(c[1]))) ++n;
    if (c.size() >= 2 && c[0] == 'f' && std::isdigit(static_cast<unsigned char>(c[1]))) ++m;
  }
  std::vector<RunRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> fields;
    while (std::getline(ls, tok, ',')) fields.push_back(tok);
    if (static_cast<int>(fields.size()) != 5 + n + m + 3)
      throw std::runtime_error("import csv: malformed row: " + line);
    RunRecord rec;
    rec.method = fields[0];
    rec.problem = fields[1];
    rec.seed = static_cast<std::uint64_t>(parse_long_or_throw(fields[2], "seed"));
    rec.start = static_cast<int>(parse_long_or_throw(fields[3], "start"));
    rec.k = static_cast<int>(parse_long_or_throw(fields[4], "k"));
    rec.x.resize(n);
    rec.f.resize(m);
    int at = 5;
    for (int j = 0; j < n; ++j) rec.x[j] = parse_double_or_throw(fields[at++], "x");
    for (int i = 0; i < m; ++i) rec.f[i] = parse_double_or_throw(fields[at++], "f");
    rec.alpha = parse_double_or_throw(fields[at++], "alpha");
    rec.S = parse_long_or_throw(fields[at++], "S");
    rec.wall_ms = parse_double_or_throw(fields[at++], "wall_ms");
    records.push_back(std::move(rec));
  }
  return records;
}

void export_json(const ExperimentResult& result, const RunConfig& config,
                 const std::string& path) {
  if (result.records.empty()) throw std::invalid_argument("export json: no records");
  nlohmann::ordered_json doc;
  doc["config"] = config.resolved();
  doc["summary"] = {
      {"cf", result.cf_used},
      {"m_star", result.m_star_used},
      {"oracle_draws", result.oracle_draws},
      {"expected_draws", result.expected_draws},
      {"n_records", result.records.size()},
  };

  auto layers = front_layers_from_records(result.records);
  nlohmann::ordered_json metrics;
  BenchmarkSpec spec = get_problem(config.problem);
  for (const auto& [name, layer] : layers) {
    nlohmann::ordered_json entry;
    entry["terminals"] = layer.raw_terminals.size();
    entry["front_size"] = layer.front.points.size();
    nlohmann::ordered_json front_list = nlohmann::ordered_json::array();
    for (const auto& pt : layer.front.points) {
      nlohmann::ordered_json fv = nlohmann::ordered_json::array();
      for (int i = 0; i < pt.f.size(); ++i) fv.push_back(pt.f[i]);
      front_list.push_back(fv);
    }
    entry["front"] = front_list;
    // Hypervolume over the front points that strictly dominate the reference.
    std::vector<Vec> dominating;
    for (const auto& pt : layer.front.points) {
      bool ok = true;
      for (int i = 0; i < pt.f.size(); ++i) ok = ok && pt.f[i] < spec.reference_point[i];
      if (ok) dominating.push_back(pt.f);
    }
    entry["hv_points_used"] = dominating.size();
    if (dominating.empty()) {
      entry["hypervolume"] = 0.0;
    } else {
      entry["hypervolume"] =
          hypervolume(nondominated_filter(dominating), spec.reference_point);
    }
    nlohmann::ordered_json ref = nlohmann::ordered_json::array();
    for (int i = 0; i < spec.reference_point.size(); ++i)
      ref.push_back(spec.reference_point[i]);
    entry["reference_point"] = ref;
    metrics[name] = entry;
  }
  doc["metrics"] = metrics;

  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const auto& rec : result.records) {
    nlohmann::ordered_json r;
    r["method"] = rec.method;
    r["problem"] = rec.problem;
    r["seed"] = rec.seed;
    r["start"] = rec.start;
    r["k"] = rec.k;
    nlohmann::ordered_json xs = nlohmann::ordered_json::array();
    for (int j = 0; j < rec.x.size(); ++j) xs.push_back(rec.x[j]);
    r["x"] = xs;
    nlohmann::ordered_json fs = nlohmann::ordered_json::array();
    for (int i = 0; i < rec.f.size(); ++i) fs.push_back(rec.f[i]);
    r["f"] = fs;
    r["alpha"] = rec.alpha;
    r["S"] = rec.S;
    r["wall_ms"] = rec.wall_ms;
    recs.push_back(std::move(r));
  }
  doc["records"] = recs;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("export json: cannot open " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("export json: write failed for " + path);
}

std::map<std::string, FrontLayer> front_layers_from_records(
    const std::vector<RunRecord>& records) {
  // Terminal row per (method, start) = the row with the largest k.
  std::map<std::string, std::map<int, const RunRecord*>> terminal;
  for (const auto& rec : records) {
    auto& slot = terminal[rec.method][rec.start];
    if (slot == nullptr || rec.k > slot->k) slot = &rec;
  }
  std::map<std::string, FrontLayer> layers;
  for (const auto& [name, starts] : terminal) {
    FrontLayer layer;
    for (const auto& [start, rec] : starts) {
      if (rec->f.allFinite()) layer.raw_terminals.push_back(rec->f);
    }
    layer.front = nondominated_filter(layer.raw_terminals);
    layers[name] = std::move(layer);
  }
  return layers;
}

namespace {

struct MarkerStyle {
  const char* color;
  int shape;  // 0 circle, 1 square, 2 diamond, 3 triangle, 4 cross
};

const MarkerStyle kStyles[] = {
    {"#1f77b4", 0}, {"#d62728", 1}, {"#2ca02c", 2}, {"#9467bd", 3},
    {"#ff7f0e", 4}, {"#8c564b", 0}, {"#e377c2", 1}, {"#17becf", 2},
    {"#bcbd22", 3}, {"#7f7f7f", 4},
};

// Data markers carry class "m" so they are countable; legend swatches use "lg".
void append_marker(std::string& svg, double px, double py, const MarkerStyle& style,
                   double opacity, const char* cls = "m") {
  const std::string head = std::string("class=\"") + cls + "\"";
  const std::string x = fmt_fixed(px, 2);
  const std::string y = fmt_fixed(py, 2);
  const std::string op = fmt_fixed(opacity, 2);
  switch (style.shape) {
    case 0:
      svg += "<circle " + head + " cx=\"" + x + "\" cy=\"" + y +
             "\" r=\"3.5\" fill=\"" + style.color + "\" fill-opacity=\"" + op +
             "\"/>\n";
      break;
    case 1:
      svg += "<rect " + head + " x=\"" + fmt_fixed(px - 3.0, 2) + "\" y=\"" +
             fmt_fixed(py - 3.0, 2) + "\" width=\"6\" height=\"6\" fill=\"" +
             style.color + "\" fill-opacity=\"" + op + "\"/>\n";
      break;
    case 2:
      svg += "<path " + head + " d=\"M " + x + " " + fmt_fixed(py - 4.2, 2) + " L " +
             fmt_fixed(px + 4.2, 2) + " " + y + " L " + x + " " +
             fmt_fixed(py + 4.2, 2) + " L " + fmt_fixed(px - 4.2, 2) + " " + y +
             " Z\" fill=\"" + style.color + "\" fill-opacity=\"" + op + "\"/>\n";
      break;
    case 3:
      svg += "<path " + head + " d=\"M " + x + " " + fmt_fixed(py - 4.2, 2) + " L " +
             fmt_fixed(px + 3.8, 2) + " " + fmt_fixed(py + 3.2, 2) + " L " +
             fmt_fixed(px - 3.8, 2) + " " + fmt_fixed(py + 3.2, 2) +
             " Z\" fill=\"" + style.color + "\" fill-opacity=\"" + op + "\"/>\n";
      break;
    default:
      svg += "<path " + head + " d=\"M " + fmt_fixed(px - 3.2, 2) + " " +
             fmt_fixed(py - 3.2, 2) + " L " + fmt_fixed(px + 3.2, 2) + " " +
             fmt_fixed(py + 3.2, 2) + " M " + fmt_fixed(px - 3.2, 2) + " " +
             fmt_fixed(py + 3.2, 2) + " L " + fmt_fixed(px + 3.2, 2) + " " +
             fmt_fixed(py - 3.2, 2) + "\" stroke=\"" + style.color +
             "\" stroke-width=\"1.6\" stroke-opacity=\"" + op + "\"/>\n";
      break;
  }
}

}  // namespace

void emit_svg_scatter(const std::map<std::string, FrontLayer>& fronts, int m,
                      const std::string& path) {
  if (m != 2 && m != 3)
    throw std::invalid_argument("svg scatter: only m in {2,3} supported");
  struct Panel {
    int ax, ay;
  };
  std::vector<Panel> panels;
  if (m == 2) {
    panels = {{0, 1}};
  } else {
    panels = {{0, 1}, {0, 2}, {1, 2}};
  }

  constexpr double kPanelW = 420.0, kPanelH = 330.0;
  constexpr double kMarginL = 62.0, kMarginR = 18.0, kMarginT = 30.0,
                   kMarginB = 46.0;
  const double legend_h = 22.0 * static_cast<double>(fronts.size()) + 10.0;
  const double width = kPanelW * panels.size();
  const double height = kPanelH + legend_h;

  bool any_points = false;
  for (const auto& [name, layer] : fronts) {
    if (!layer.raw_terminals.empty()) any_points = true;
  }

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fmt_fixed(width, 0) + "\" height=\"" + fmt_fixed(height, 0) +
         "\" viewBox=\"0 0 " + fmt_fixed(width, 0) + " " + fmt_fixed(height, 0) +
         "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto [ax, ay] = panels[p];
    const double x0 = p * kPanelW + kMarginL;
    const double y0 = kMarginT;
    const double plot_w = kPanelW - kMarginL - kMarginR;
    const double plot_h = kPanelH - kMarginT - kMarginB;

    double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = 1.0;
    bool seen = false;
    for (const auto& [name, layer] : fronts) {
      for (const auto& f : layer.raw_terminals) {
        if (!seen) {
          lo_x = hi_x = f[ax];
          lo_y = hi_y = f[ay];
          seen = true;
        } else {
          lo_x = std::min(lo_x, f[ax]);
          hi_x = std::max(hi_x, f[ax]);
          lo_y = std::min(lo_y, f[ay]);
          hi_y = std::max(hi_y, f[ay]);
        }
      }
    }
    if (hi_x <= lo_x) hi_x = lo_x + 1.0;
    if (hi_y <= lo_y) hi_y = lo_y + 1.0;
    const double pad_x = 0.05 * (hi_x - lo_x);
    const double pad_y = 0.05 * (hi_y - lo_y);
    lo_x -= pad_x;
    hi_x += pad_x;
    lo_y -= pad_y;
    hi_y += pad_y;

    auto to_px = [&](double v) {
      return x0 + (v - lo_x) / (hi_x - lo_x) * plot_w;
    };
    auto to_py = [&](double v) {
      return y0 + plot_h - (v - lo_y) / (hi_y - lo_y) * plot_h;
    };

    svg += "<g class=\"panel\">\n";
    svg += "<rect x=\"" + fmt_fixed(x0, 2) + "\" y=\"" + fmt_fixed(y0, 2) +
           "\" width=\"" + fmt_fixed(plot_w, 2) + "\" height=\"" +
           fmt_fixed(plot_h, 2) + "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int t = 0; t <= 4; ++t) {
      double vx = lo_x + (hi_x - lo_x) * t / 4.0;
      double vy = lo_y + (hi_y - lo_y) * t / 4.0;
      double px = to_px(vx);
      double py = to_py(vy);
      svg += "<line x1=\"" + fmt_fixed(px, 2) + "\" y1=\"" +
             fmt_fixed(y0 + plot_h, 2) + "\" x2=\"" + fmt_fixed(px, 2) +
             "\" y2=\"" + fmt_fixed(y0 + plot_h + 5.0, 2) +
             "\" stroke=\"#333\"/>\n";
      svg += "<text x=\"" + fmt_fixed(px, 2) + "\" y=\"" +
             fmt_fixed(y0 + plot_h + 18.0, 2) +
             "\" font-size=\"10\" text-anchor=\"middle\" font-family=\"sans-serif\">" +
             fmt_general(vx, 4) + "</text>\n";
      svg += "<line x1=\"" + fmt_fixed(x0 - 5.0, 2) + "\" y1=\"" +
             fmt_fixed(py, 2) + "\" x2=\"" + fmt_fixed(x0, 2) + "\" y2=\"" +
             fmt_fixed(py, 2) + "\" stroke=\"#333\"/>\n";
      svg += "<text x=\"" + fmt_fixed(x0 - 8.0, 2) + "\" y=\"" +
             fmt_fixed(py + 3.0, 2) +
             "\" font-size=\"10\" text-anchor=\"end\" font-family=\"sans-serif\">" +
             fmt_general(vy, 4) + "</text>\n";
    }
    svg += "<text x=\"" + fmt_fixed(x0 + plot_w / 2.0, 2) + "\" y=\"" +
           fmt_fixed(y0 + plot_h + 34.0, 2) +
           "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">f" +
           std::to_string(ax) + "</text>\n";
    svg += "<text x=\"" + fmt_fixed(x0 - 44.0, 2) + "\" y=\"" +
           fmt_fixed(y0 + plot_h / 2.0, 2) +
           "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\" transform=\"rotate(-90 " +
           fmt_fixed(x0 - 44.0, 2) + " " + fmt_fixed(y0 + plot_h / 2.0, 2) +
           ")\">f" + std::to_string(ay) + "</text>\n";

    int style_idx = 0;
    for (const auto& [name, layer] : fronts) {
      const MarkerStyle& style = kStyles[style_idx % 10];
      ++style_idx;
      // Dominated terminals drawn faint; front members solid (and only once).
      std::vector<bool> in_front(layer.raw_terminals.size(), false);
      for (const auto& pt : layer.front.points) in_front[pt.origin] = true;
      for (std::size_t i = 0; i < layer.raw_terminals.size(); ++i) {
        if (in_front[i]) continue;
        append_marker(svg, to_px(layer.raw_terminals[i][ax]),
                      to_py(layer.raw_terminals[i][ay]), style, 0.25);
      }
      for (const auto& pt : layer.front.points) {
        append_marker(svg, to_px(pt.f[ax]), to_py(pt.f[ay]), style, 1.0);
      }
    }
    if (!any_points) {
      svg += "<text x=\"" + fmt_fixed(x0 + plot_w / 2.0, 2) + "\" y=\"" +
             fmt_fixed(y0 + plot_h / 2.0, 2) +
             "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" fill=\"#888\">no points</text>\n";
    }
    svg += "</g>\n";
  }

  // Legend: solid marker = front, faint = dominated terminal.
  double ly = kPanelH + 8.0;
  int style_idx = 0;
  for (const auto& [name, layer] : fronts) {
    const MarkerStyle& style = kStyles[style_idx % 10];
    ++style_idx;
    append_marker(svg, kMarginL + 6.0, ly + 8.0, style, 1.0, "lg");
    append_marker(svg, kMarginL + 22.0, ly + 8.0, style, 0.25, "lg");
    svg += "<text x=\"" + fmt_fixed(kMarginL + 34.0, 2) + "\" y=\"" +
           fmt_fixed(ly + 12.0, 2) +
           "\" font-size=\"12\" font-family=\"sans-serif\">" + name +
           " (front / dominated), front size " +
           std::to_string(layer.front.points.size()) + "</text>\n";
    ly += 22.0;
  }
  svg += "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("svg scatter: cannot open " + path);
  out << svg;
  if (!out) throw std::runtime_error("svg scatter: write failed for " + path);
}

}  // namespace msmd
