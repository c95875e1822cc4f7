// Copyright 2026 The vqdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "vqdyn/config.hpp"
#include "vqdyn/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

int cmd_run(const std::string& config_path, const std::string& output_override, int threads) {
  vqdyn::RunConfig cfg = vqdyn::load_config(config_path);
  if (threads > 0) {
    cfg.threads = threads;
    cfg.engine.threads = threads;
  }
  const std::filesystem::path out_dir =
      output_override.empty() ? std::filesystem::path(cfg.output_dir)
                              : std::filesystem::path(output_override);
  const vqdyn::RunResult result = vqdyn::run_experiment(cfg, out_dir);
  std::cout << "wrote " << (out_dir / "trajectory.csv").string() << " ("
            << result.log.records.size() << " steps)\n";
  if (result.oracle_ran) {
    std::cout << "integrated exact infidelity = " << result.integrated_infidelity << "\n";
  }
  return kOk;
}

int cmd_compare(const std::vector<std::string>& dirs, const std::string& output) {
  std::vector<std::filesystem::path> paths(dirs.begin(), dirs.end());
  const std::filesystem::path out_dir = output.empty() ? "." : output;
  vqdyn::write_compare(paths, out_dir);
  std::cout << "wrote " << (out_dir / "compare.csv").string() << " and "
            << (out_dir / "runs_table.csv").string() << "\n";
  return kOk;
}

int cmd_count_resources(const std::string& file) {
  const auto report = vqdyn::count_resources(file);
  std::cout << vqdyn::resource_report_text(file, report);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational quantum dynamics simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  int threads = 0;
  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("config", config_path, "path to the run config")->required();
  run->add_option("--output", output, "output directory (overrides the config)");
  run->add_option("--threads", threads, "worker cap for pool scoring");

  std::vector<std::string> compare_dirs;
  std::string compare_output;
  auto* compare = app.add_subcommand("compare", "merge finished runs into comparison tables");
  compare->add_option("dirs", compare_dirs, "run directories")->required()->expected(-1);
  compare->add_option("--output", compare_output, "directory for the merged tables");

  std::string circuit_file;
  auto* count = app.add_subcommand("count-resources", "report CNOTs and depth of a circuit file");
  count->add_option("file", circuit_file, "circuit text file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, output, threads);
    if (compare->parsed()) return cmd_compare(compare_dirs, compare_output);
    if (count->parsed()) return cmd_count_resources(circuit_file);
  } catch (const vqdyn::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kConfigError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}
