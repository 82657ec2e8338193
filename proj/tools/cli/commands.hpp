#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace openrcd::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitConfig = 2,
  kExitSolver = 3,
};

struct SimulateOptions {
  std::optional<std::filesystem::path> config_path;
  std::optional<std::string> preset;
  std::filesystem::path out_dir = ".";
  std::size_t threads = 0;
};

/// Single replication: trajectory.csv (k,event,C_k,subopt,min_shift).
/// Several: ensemble.csv (k,mean_C,ci_lo,ci_hi,bound_thm1,bound_thm2).
/// Prints the bound summary as '#'-prefixed lines to out.
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

struct BoundsOptions {
  std::size_t n = 5;
  double kappa = 1.2;
  double b = 1.0;
  std::vector<double> p_updates;
};

/// Prints one CSV row of bound quantities per p_U; rows below the stability
/// threshold are marked UNSTABLE.
int cmd_bounds(const BoundsOptions& opts, std::ostream& out, std::ostream& err);

struct WorstcaseOptions {
  std::vector<std::size_t> ns;
  std::vector<double> kappas;
  double b = 1.0;
  std::size_t budget = 793;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
};

/// Writes worstcase.csv and worstcase.svg into out_dir.
int cmd_worstcase(const WorstcaseOptions& opts, std::ostream& out, std::ostream& err);

/// n in 2..12, kappa in {2, 5}, b = 1.
WorstcaseOptions worstcase_preset_fig2_analogue();

/// Parses "lo:hi" (inclusive) or a single integer.
std::vector<std::size_t> parse_index_range(const std::string& text);

/// Parses a comma-separated list of reals.
std::vector<double> parse_real_list(const std::string& text);

/// Reads OPENRCD_THREADS (unset or 0 = auto).
std::size_t threads_from_environment();

}  // namespace openrcd::cli
