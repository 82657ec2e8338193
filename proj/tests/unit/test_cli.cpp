#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/format.hpp"
#include "cli/svg.hpp"
#include "openrcd/errors.hpp"

using namespace openrcd;
using namespace openrcd::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(OPENRCD_TEST_TMPDIR) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& body) {
  const fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << body;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Tag balance for the subset of XML the plotter emits.
bool well_formed(const std::string& svg) {
  std::vector<std::string> stack;
  const std::regex tag(R"(<(/?)([A-Za-z][\w:-]*)[^>]*?(/?)>)");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag); it != std::sregex_iterator();
       ++it) {
    const auto& m = *it;
    if (m[3].length() > 0) continue;
    if (m[1].length() == 0) {
      stack.push_back(m[2]);
    } else {
      if (stack.empty() || stack.back() != m[2]) return false;
      stack.pop_back();
    }
  }
  return stack.empty() && svg.find("<svg") != std::string::npos;
}

}  // namespace

TEST_CASE("decimal formatting round-trips", "[cli]") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  for (double v : {1.0 / 3.0, 10.714136552049594, -2.5e-300, 6.02e23}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  std::ostringstream row;
  write_csv_row(row, {"a", "b", ""});
  CHECK(row.str() == "a,b,\n");
  const auto items = split_list(" 1, 2 ,3 ");
  REQUIRE(items.size() == 3);
  CHECK(items[1] == "2");
}

TEST_CASE("key=value parsing", "[cli]") {
  std::istringstream ok("# comment\n n = 5 \nbeta=1.2 # trailing\n\n");
  const auto kv = parse_key_values(ok);
  CHECK(kv.at("n") == "5");
  CHECK(kv.at("beta") == "1.2");

  std::istringstream bad("n = 5\nnonsense\n");
  try {
    (void)parse_key_values(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "line 2");
  }
  std::istringstream dup("n = 5\nn = 6\n");
  CHECK_THROWS_AS(parse_key_values(dup), ConfigError);
}

TEST_CASE("config application", "[cli]") {
  const KeyValues full{{"n", "4"},          {"alpha", "1"},          {"beta", "2"},
                       {"b", "-1"},         {"p_U", "0.9"},          {"horizon", "7"},
                       {"replications", "1"}, {"initial_state", "minimizer"},
                       {"function_family", "logcosh_quadratic"}};
  const auto cfg = apply_entries(full, ExperimentConfig{}, true);
  CHECK(cfg.n == 4);
  CHECK(cfg.b == -1.0);
  CHECK(cfg.horizon == 7);
  CHECK(cfg.initial_state == InitialState::minimizer);
  CHECK(cfg.family == FunctionFamily::logcosh_quadratic);

  auto missing = full;
  missing.erase("p_U");
  try {
    (void)apply_entries(missing, ExperimentConfig{}, true);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "p_U");
  }
  CHECK_NOTHROW(apply_entries(missing, ExperimentConfig::fig1(), false));

  auto unknown = full;
  unknown["colour"] = "red";
  CHECK_THROWS_AS(apply_entries(unknown, ExperimentConfig{}, true), ConfigError);
  auto bad_number = full;
  bad_number["beta"] = "1.2x";
  CHECK_THROWS_AS(apply_entries(bad_number, ExperimentConfig{}, true), ConfigError);

  auto vec = full;
  vec["initial_state"] = "explicit";
  vec["initial_vector"] = "1, -1, 0.5, -1.5";
  const auto with_vec = apply_entries(vec, ExperimentConfig{}, true);
  CHECK(with_vec.initial_vector.size() == 4);
  CHECK(preset_config("fig1").has_value());
  CHECK_FALSE(preset_config("nope").has_value());
}

TEST_CASE("simulate reports a missing key with exit 2", "[cli]") {
  const auto dir = scratch("missing");
  const auto cfg = write_file(dir, "run.cfg", "n = 5\nalpha = 1\nbeta = 1.2\nb = 1\n");
  std::ostringstream out;
  std::ostringstream err;
  SimulateOptions opts;
  opts.config_path = cfg;
  opts.out_dir = dir;
  CHECK(cmd_simulate(opts, out, err) == kExitConfig);
  CHECK(err.str().find("p_U") != std::string::npos);
}

TEST_CASE("single closed-system trajectory descends", "[cli]") {
  const auto dir = scratch("traj");
  const auto cfg = write_file(dir, "run.cfg",
                              "n = 6\nalpha = 1\nbeta = 3\nb = 2\np_U = 1\n"
                              "replications = 1\nhorizon = 300\nseed = 4\n");
  std::ostringstream out;
  std::ostringstream err;
  SimulateOptions opts;
  opts.config_path = cfg;
  opts.out_dir = dir;
  REQUIRE(cmd_simulate(opts, out, err) == kExitOk);
  CHECK(out.str().find("# stable: yes") != std::string::npos);

  const auto rows = lines_of(read_file(dir / "trajectory.csv"));
  REQUIRE(rows.size() == 302);
  CHECK(rows[0] == "k,event,C_k,subopt,min_shift");
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto fields = split_list(rows[r]);
    REQUIRE(fields.size() == 5);
    const double sub = std::strtod(fields[3].c_str(), nullptr);
    CHECK(sub <= previous + 1e-12);
    previous = sub;
  }
}

TEST_CASE("ensemble output carries both envelopes", "[cli]") {
  const auto dir = scratch("ens");
  const auto cfg = write_file(dir, "run.cfg", "replications = 200\nhorizon = 50\n");
  SimulateOptions opts;
  opts.config_path = cfg;
  opts.preset = "fig1";
  opts.out_dir = dir;
  opts.threads = 2;
  std::ostringstream out;
  std::ostringstream err;
  REQUIRE(cmd_simulate(opts, out, err) == kExitOk);
  const auto first = read_file(dir / "ensemble.csv");
  const auto rows = lines_of(first);
  REQUIRE(rows.size() == 52);
  CHECK(rows[0] == "k,mean_C,ci_lo,ci_hi,bound_thm1,bound_thm2");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto f = split_list(rows[r]);
    REQUIRE(f.size() == 6);
    CHECK(std::strtod(f[1].c_str(), nullptr) <= std::strtod(f[5].c_str(), nullptr));
    CHECK(std::strtod(f[5].c_str(), nullptr) <= std::strtod(f[4].c_str(), nullptr));
  }

  opts.threads = 1;
  std::ostringstream again;
  REQUIRE(cmd_simulate(opts, again, err) == kExitOk);
  CHECK(read_file(dir / "ensemble.csv") == first);
}

TEST_CASE("bounds table", "[cli]") {
  BoundsOptions opts;
  opts.p_updates = {0.8, 0.95, 1.0};
  std::ostringstream out;
  std::ostringstream err;
  REQUIRE(cmd_bounds(opts, out, err) == kExitOk);
  const auto text = out.str();
  CHECK(text.find("p_U,rho_R,closed_rate,open_rate,Gamma,Gamma_prime,gamma_ss,gamma_recursion,"
                  "R_ball,status") != std::string::npos);
  const auto rows = lines_of(text);
  const auto last = split_list(rows.back());
  REQUIRE(last.size() == 10);
  CHECK(last[4] == "0");
  CHECK(last[5] == "0");
  CHECK(last[6] == "0");
  CHECK(last[9] == "stable");
  CHECK(split_list(rows[rows.size() - 3])[9] == "UNSTABLE");

  BoundsOptions flat;
  flat.kappa = 1.0;
  flat.p_updates = {0.95};
  std::ostringstream flat_out;
  REQUIRE(cmd_bounds(flat, flat_out, err) == kExitOk);
  const auto row = split_list(lines_of(flat_out.str()).back());
  CHECK(std::strtod(row[5].c_str(), nullptr) == Catch::Approx(0.4 * 4.0 / 5.0));

  BoundsOptions empty;
  CHECK(cmd_bounds(empty, out, err) == kExitUsage);
}

TEST_CASE("worstcase writes a table and a plot deterministically", "[cli]") {
  const auto dir = scratch("wc");
  WorstcaseOptions opts;
  opts.ns = parse_index_range("2:5");
  opts.kappas = parse_real_list("2,5");
  opts.budget = 40;
  opts.seed = 9;
  opts.out_dir = dir;
  std::ostringstream out;
  std::ostringstream err;
  REQUIRE(cmd_worstcase(opts, out, err) == kExitOk);
  const auto csv = read_file(dir / "worstcase.csv");
  const auto rows = lines_of(csv);
  CHECK(rows.size() == 1 + opts.ns.size() * opts.kappas.size());
  CHECK(rows[0] == "n,kappa,empirical_max,prop3,prop5,conjecture,theta_on_boundary");
  CHECK(well_formed(read_file(dir / "worstcase.svg")));

  std::ostringstream again;
  REQUIRE(cmd_worstcase(opts, again, err) == kExitOk);
  CHECK(read_file(dir / "worstcase.csv") == csv);
}

TEST_CASE("argument helpers", "[cli]") {
  CHECK(parse_index_range("3") == std::vector<std::size_t>{3});
  CHECK(parse_index_range("2:4") == std::vector<std::size_t>{2, 3, 4});
  CHECK_THROWS(parse_index_range("5:2"));
  CHECK_THROWS(parse_real_list("1,x"));
  const auto preset = worstcase_preset_fig2_analogue();
  CHECK(preset.ns.size() == 11);
  CHECK(preset.kappas == std::vector<double>{2.0, 5.0});
}

TEST_CASE("svg escaping and structure", "[cli]") {
  CHECK(xml_escape("a<b & \"c\"") == "a&lt;b &amp; &quot;c&quot;");
  const std::string svg =
      render_line_plot({{"x<y", {{0.0, 1.0}, {1.0, 2.0}}, "#000000", true}}, "t & u", "n", "v");
  CHECK(well_formed(svg));
  CHECK(svg.find("x&lt;y") != std::string::npos);
}
