#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "msmd/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

msmd::RunConfig load_config(const std::string& path) {
  msmd::RunConfig config = msmd::parse_config(read_file(path));
  if (const char* env = std::getenv("MSMD_OUTPUT_DIR"); env != nullptr && *env) {
    config.out_dir = env;
  }
  return config;
}

std::string output_stem(const msmd::RunConfig& config) {
  return msmd::method_name(config.method) + "_" + config.problem + "_seed" +
         std::to_string(config.master_seed);
}

int cmd_validate(const std::string& path) {
  msmd::RunConfig config = load_config(path);
  std::cout << "config ok\n";
  for (const auto& [key, value] : config.resolved()) {
    std::cout << key << "=" << value << "\n";
  }
  return 0;
}

int cmd_run(const std::string& path) {
  msmd::RunConfig config = load_config(path);
  std::filesystem::create_directories(config.out_dir);
  msmd::ExperimentResult result = msmd::run_experiment(config);

  const std::string stem = (std::filesystem::path(config.out_dir) / output_stem(config)).string();
  msmd::export_csv(result.records, stem + ".csv");
  msmd::export_json(result, config, stem + ".json");
  auto layers = msmd::front_layers_from_records(result.records);
  int m = static_cast<int>(result.records.front().f.size());
  msmd::emit_svg_scatter(layers, m, stem + ".svg");

  std::cout << "wrote " << stem << ".csv\n"
            << "wrote " << stem << ".json\n"
            << "wrote " << stem << ".svg\n"
            << "oracle draws: " << result.oracle_draws
            << " (expected " << result.expected_draws << ")\n";
  return 0;
}

int cmd_sweep(const std::string& path) {
  msmd::RunConfig base = load_config(path);
  std::filesystem::create_directories(base.out_dir);
  const std::vector<double> alpha_grid = {0.001, 0.01, 0.02, 0.03, 0.04, 0.5};
  const std::vector<double> gamma_grid = {0.005, 0.01, 0.05};

  const bool has_inner = base.method == msmd::Method::kMsmd ||
                         base.method == msmd::Method::kMsmdPref ||
                         base.method == msmd::Method::kSdmgradLite;

  std::vector<msmd::RunConfig> grid;
  for (double alpha : alpha_grid) {
    if (!has_inner) {
      msmd::RunConfig c = base;
      c.alpha = alpha;
      grid.push_back(c);
      continue;
    }
    for (double gamma : gamma_grid) {
      msmd::RunConfig c = base;
      c.alpha = alpha;
      if (base.method == msmd::Method::kSdmgradLite) {
        c.sdm_gamma = gamma;
      } else {
        c.inner = "explicit";
        c.gamma = gamma;
      }
      grid.push_back(c);
    }
  }

  for (const auto& c : grid) {
    std::ostringstream name;
    name << "sweep_" << msmd::method_name(c.method) << "_" << c.problem << "_a"
         << c.alpha;
    if (has_inner)
      name << "_g" << (c.method == msmd::Method::kSdmgradLite ? c.sdm_gamma : c.gamma);
    name << ".cfg";
    std::filesystem::path out = std::filesystem::path(base.out_dir) / name.str();
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + out.string());
    for (const auto& [key, value] : c.resolved()) {
      if (key == "w" && value.empty()) continue;
      file << key << "=" << value << "\n";
    }
    std::cout << "wrote " << out.string() << "\n";
  }
  return 0;
}

int cmd_plot(const std::vector<std::string>& result_paths, const std::string& out) {
  std::vector<msmd::RunRecord> records;
  for (const auto& path : result_paths) {
    nlohmann::json doc = nlohmann::json::parse(read_file(path));
    for (const auto& r : doc.at("records")) {
      msmd::RunRecord rec;
      rec.method = r.at("method").get<std::string>();
      rec.problem = r.at("problem").get<std::string>();
      rec.seed = r.at("seed").get<std::uint64_t>();
      rec.start = r.at("start").get<int>();
      rec.k = r.at("k").get<int>();
      const auto& fs = r.at("f");
      rec.f.resize(static_cast<Eigen::Index>(fs.size()));
      for (std::size_t i = 0; i < fs.size(); ++i) rec.f[i] = fs[i].get<double>();
      const auto& xs = r.at("x");
      rec.x.resize(static_cast<Eigen::Index>(xs.size()));
      for (std::size_t i = 0; i < xs.size(); ++i) rec.x[i] = xs[i].get<double>();
      records.push_back(std::move(rec));
    }
  }
  if (records.empty()) throw std::runtime_error("plot: no records in input");
  auto layers = msmd::front_layers_from_records(records);
  int m = static_cast<int>(records.front().f.size());
  msmd::emit_svg_scatter(layers, m, out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic multi-objective optimization experiment runner"};
  app.require_subcommand(1);

  std::string config_path, plot_out;
  std::vector<std::string> plot_inputs;

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "config file")->required();

  auto* sweep = app.add_subcommand(
      "sweep", "emit one config per step-size grid point");
  sweep->add_option("config", config_path, "base config file")->required();

  std::string plot_main;
  auto* plot = app.add_subcommand("plot", "render Pareto fronts from results");
  plot->add_option("results", plot_main, "results.json file")->required();
  plot->add_option("out", plot_out, "output .svg path")->required();
  plot->add_option("--also", plot_inputs, "additional results.json files to overlay");

  auto* validate = app.add_subcommand("validate", "check a config file");
  validate->add_option("config", config_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (sweep->parsed()) return cmd_sweep(config_path);
    if (validate->parsed()) return cmd_validate(config_path);
    if (plot->parsed()) {
      std::vector<std::string> inputs = {plot_main};
      inputs.insert(inputs.end(), plot_inputs.begin(), plot_inputs.end());
      return cmd_plot(inputs, plot_out);
    }
  } catch (const msmd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
