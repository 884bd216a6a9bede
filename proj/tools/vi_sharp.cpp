#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "visharp/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"vi-sharp: sharp-penalty fixed-point solver for monotone "
               "variational inequalities"};
  app.require_subcommand(1);

  visharp::RunOverrides ov;
  std::optional<std::uint64_t> seed;
  std::optional<long> max_iters;
  app.add_option("--seed", seed, "override the solver seed");
  app.add_option("--max-iters", max_iters, "override max iterations");
  app.add_flag("--quiet", ov.quiet, "suppress progress output");

  std::string run_cfg, sweep_cfg, oracle_cfg, sweep_param, sweep_values;
  auto* run = app.add_subcommand("run", "solve the problem in a config file");
  run->add_option("config", run_cfg, "config file")->required();

  auto* sweep = app.add_subcommand("sweep", "re-solve over a parameter range");
  sweep->add_option("config", sweep_cfg, "config file")->required();
  sweep->add_option("--param", sweep_param,
                    "theta0 | power | ratio | lambda | epsilon")
      ->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")
      ->required();

  auto* oracle = app.add_subcommand("oracle", "mint an oracle certificate");
  oracle->add_option("config", oracle_cfg, "config file")->required();

  CLI11_PARSE(app, argc, argv);
  ov.seed = seed;
  ov.max_iters = max_iters;

  if (run->parsed())
    return visharp::run_command(run_cfg, ov, std::cout);
  if (sweep->parsed()) {
    std::vector<double> values;
    std::stringstream ss(sweep_values);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        values.push_back(std::stod(tok));
      } catch (...) {
        std::cout << "config error: --values entry is not a number: " << tok
                  << "\n";
        return visharp::kExitConfig;
      }
    }
    return visharp::sweep_command(sweep_cfg, sweep_param, values, ov,
                                  std::cout);
  }
  return visharp::oracle_command(oracle_cfg, ov, std::cout);
}
