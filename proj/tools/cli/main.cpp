#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace openrcd::cli;

  CLI::App app{"openrcd: coordinate descent for budget allocation with replaced agents"};
  app.require_subcommand(1);

  SimulateOptions sim;
  std::string sim_config;
  std::string sim_preset;
  std::string sim_out = ".";
  auto* simulate = app.add_subcommand("simulate", "Run trajectories or an ensemble");
  simulate->add_option("--config", sim_config, "key=value config file");
  simulate->add_option("--preset", sim_preset, "Built-in parameter set (fig1)");
  simulate->add_option("--out", sim_out, "Output directory");

  BoundsOptions bounds;
  std::string bounds_pu;
  auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate bound quantities over p_U");
  bounds_cmd->add_option("--n", bounds.n, "Number of agents")->required();
  bounds_cmd->add_option("--kappa", bounds.kappa, "Condition number")->required();
  bounds_cmd->add_option("--b", bounds.b, "Budget")->required();
  bounds_cmd->add_option("--pu", bounds_pu, "Comma-separated p_U values")->required();

  std::string wc_n;
  std::string wc_kappa;
  std::string wc_preset;
  std::string wc_out = ".";
  WorstcaseOptions wc;
  auto* worstcase = app.add_subcommand("worstcase", "Search for the largest minimizer shift");
  worstcase->add_option("--n", wc_n, "Agent range lo:hi");
  worstcase->add_option("--kappa", wc_kappa, "Comma-separated condition numbers");
  worstcase->add_option("--b", wc.b, "Budget");
  worstcase->add_option("--budget", wc.budget, "Number of search starts");
  worstcase->add_option("--seed", wc.seed, "Seed for the random starts");
  worstcase->add_option("--preset", wc_preset, "Built-in sweep (fig2-analogue)");
  worstcase->add_option("--out", wc_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      if (!sim_config.empty()) sim.config_path = sim_config;
      if (!sim_preset.empty()) sim.preset = sim_preset;
      sim.out_dir = sim_out;
      sim.threads = threads_from_environment();
      return cmd_simulate(sim, std::cout, std::cerr);
    }
    if (*bounds_cmd) {
      bounds.p_updates = parse_real_list(bounds_pu);
      return cmd_bounds(bounds, std::cout, std::cerr);
    }
    if (*worstcase) {
      if (!wc_preset.empty()) {
        if (wc_preset != "fig2-analogue") {
          std::cerr << "error: unknown preset '" << wc_preset << "'\n";
          return kExitUsage;
        }
        const auto preset = worstcase_preset_fig2_analogue();
        if (wc_n.empty()) wc.ns = preset.ns;
        if (wc_kappa.empty()) wc.kappas = preset.kappas;
      }
      if (!wc_n.empty()) wc.ns = parse_index_range(wc_n);
      if (!wc_kappa.empty()) wc.kappas = parse_real_list(wc_kappa);
      if (wc.ns.empty() || wc.kappas.empty()) {
        std::cerr << "error: worstcase needs --n and --kappa (or --preset)\n";
        return kExitUsage;
      }
      wc.out_dir = wc_out;
      return cmd_worstcase(wc, std::cout, std::cerr);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
