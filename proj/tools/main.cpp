#include <iostream>

#include "CLI11.hpp"
#include "ekman/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = ekman::cli;
  CLI::App app{"Damped non-homogeneous Euler solver and Littlewood-Paley toolkit"};
  app.require_subcommand(1);

  std::string config, out_dir, level = "quick", param;
  std::vector<std::string> values;
  bool inject_fault = false;

  auto* run = app.add_subcommand("run", "integrate a configured simulation");
  run->add_option("--config", config, "JSON config")->required();
  run->add_option("--out", out_dir, "output directory")->required();

  auto* check = app.add_subcommand("check", "evaluate the smallness conditions for the initial data");
  check->add_option("--config", config, "JSON config")->required();

  auto* verify = app.add_subcommand("verify", "run the built-in verification suite");
  verify->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_flag("--inject-fault", inject_fault)->group("");

  auto* sweep = app.add_subcommand("sweep", "run one simulation per parameter value");
  sweep->add_option("--config", config, "base JSON config")->required();
  sweep->add_option("--param", param, "dotted config key, e.g. physics.alpha")->required();
  sweep->add_option("--values", values, "comma-separated values")->required()->delimiter(',')->allow_extra_args(false);
  sweep->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kConfigError;
  }

  if (*run) return cli::cmd_run(config, out_dir, std::cout, std::cerr);
  if (*check) return cli::cmd_check(config, std::cout, std::cerr);
  if (*verify) return cli::cmd_verify(level, inject_fault, std::cout, std::cerr);
  return cli::cmd_sweep(config, param, values, out_dir, std::cout, std::cerr);
}
