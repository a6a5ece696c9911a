#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "toric/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"toric-period: periods of toric special functions and their holonomic systems"};
  app.require_subcommand(1);

  const std::pair<const char*, const char*> commands[] = {
      {"kernel", "print the kernel basis, jacobian and integrability flag"},
      {"eval", "evaluate periods on an x grid or at explicit x/y points (CSV)"},
      {"series", "build formal series coefficients and evaluate them (JSON)"},
      {"emit-ops", "emit the holonomic operators as JSON"},
      {"verify-annihilator", "check that every annihilator represents to zero"},
      {"verify-pde", "finite-difference residuals of the holonomic system (CSV)"},
      {"bessel-check", "compare quadrature against the closed-form oracle"},
  };

  std::string command;
  std::string config_path;
  toric::RunOptions opt;
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "job configuration JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "output directory (default: current)");
    sub->add_option("--threads", opt.threads, "worker threads for grid evaluation")
        ->check(CLI::PositiveNumber);
    sub->callback([&command, name = std::string(name)] { command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const toric::JobConfig cfg = toric::load_job_config(config_path);
    return toric::run_job(command, cfg, opt, std::cout);
  } catch (const toric::ToricError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
