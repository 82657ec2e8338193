#include "cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "cli/config.hpp"
#include "cli/format.hpp"
#include "cli/svg.hpp"
#include "openrcd/bounds.hpp"
#include "openrcd/errors.hpp"
#include "openrcd/opensim.hpp"
#include "openrcd/worstcase.hpp"

namespace openrcd::cli {

namespace {

std::string level_text(const Level& l) {
  return l.is_finite() ? format_double(l.value()) : std::string("inf");
}

void print_bound_header(std::ostream& out, const ExperimentConfig& cfg) {
  const BoundSet s = evaluate_bounds({cfg.n, cfg.alpha, cfg.beta, cfg.b,
                                      cfg.step_config().h(), cfg.p_update});
  out << "# n: " << cfg.n << '\n'
      << "# kappa: " << format_double(cfg.kappa()) << '\n'
      << "# b: " << format_double(cfg.b) << '\n'
      << "# p_U: " << format_double(cfg.p_update) << '\n'
      << "# h: " << format_double(cfg.step_config().h()) << '\n'
      << "# closed_rate: " << format_double(s.closed_rate) << '\n'
      << "# open_rate: " << format_double(s.open_rate) << '\n'
      << "# Gamma: " << format_double(s.gamma) << '\n'
      << "# Gamma_prime: " << format_double(s.gamma_prime) << '\n'
      << "# gamma_ss: " << level_text(s.gamma_ss) << '\n'
      << "# gamma_recursion: " << level_text(s.gamma_recursion) << '\n'
      << "# gamma_readings_agree: " << (s.gamma_readings_agree ? "yes" : "no") << '\n'
      << "# R_ball: " << format_double(s.r_ball) << '\n'
      << "# pU_threshold: " << format_double(s.p_update_threshold) << '\n'
      << "# rhoR_threshold: " << format_double(s.rho_replace_threshold) << '\n'
      << "# stable: " << (s.stable ? "yes" : "no") << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

void write_trajectory(const std::filesystem::path& path, const TrajectoryRecord& rec) {
  auto f = open_output(path);
  write_csv_row(f, {"k", "event", "C_k", "subopt", "min_shift"});
  for (const auto& r : rec.rows) {
    write_csv_row(f, {std::to_string(r.k), std::string(to_string(r.event)), format_double(r.c),
                      format_double(r.suboptimality), format_double(r.minimizer_shift)});
  }
}

void write_ensemble(const std::filesystem::path& path, const ExperimentConfig& cfg,
                    const ReplicationStats& stats) {
  const double c0 = stats.mean_c.front();
  const auto open = open_rate_and_gamma(cfg.n, cfg.kappa(), cfg.b, cfg.p_update);
  const auto thm1 = recursion_envelope(open.rate, open.gamma, c0, cfg.horizon);
  const bool quadratic = cfg.family == FunctionFamily::quadratic;
  const auto thm2 = recursion_envelope(
      open.rate, quadratic_gamma_prime(cfg.n, cfg.kappa(), cfg.b, cfg.p_update), c0, cfg.horizon);

  auto f = open_output(path);
  write_csv_row(f, {"k", "mean_C", "ci_lo", "ci_hi", "bound_thm1", "bound_thm2"});
  for (std::size_t k = 0; k < stats.mean_c.size(); ++k) {
    const double m = stats.mean_c[k];
    const double hw = stats.ci_halfwidth[k];
    write_csv_row(f, {std::to_string(k), format_double(m), format_double(m - hw),
                      format_double(m + hw), format_double(thm1[k]),
                      quadratic ? format_double(thm2[k]) : std::string()});
  }
}

}  // namespace

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    std::optional<ExperimentConfig> preset;
    if (opts.preset) {
      preset = preset_config(*opts.preset);
      if (!preset) {
        err << "error: unknown preset '" << *opts.preset << "'\n";
        return kExitUsage;
      }
    }
    if (opts.config_path) {
      cfg = load_config(*opts.config_path, preset);
    } else if (preset) {
      cfg = *preset;
      cfg.validate();
    } else {
      err << "error: simulate needs --config or --preset\n";
      return kExitUsage;
    }
  } catch (const ConfigError& e) {
    err << "config error [" << e.key() << "]: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    std::filesystem::create_directories(opts.out_dir);
    print_bound_header(out, cfg);
    if (cfg.replications == 1) {
      const auto rec = run_trajectory(cfg, cfg.seed);
      const auto path = opts.out_dir / "trajectory.csv";
      write_trajectory(path, rec);
      out << "wrote " << path.string() << '\n';
    } else {
      const auto stats = run_ensemble(cfg, cfg.replications, cfg.seed, opts.threads);
      const auto path = opts.out_dir / "ensemble.csv";
      write_ensemble(path, cfg, stats);
      out << "wrote " << path.string() << '\n';
    }
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const ConfigError& e) {
    err << "config error [" << e.key() << "]: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

int cmd_bounds(const BoundsOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.p_updates.empty()) {
    err << "error: --pu needs at least one value\n";
    return kExitUsage;
  }
  try {
    const auto thresholds = stability_thresholds(opts.n, opts.kappa);
    out << "# n: " << opts.n << '\n'
        << "# kappa: " << format_double(opts.kappa) << '\n'
        << "# b: " << format_double(opts.b) << '\n'
        << "# pU_threshold: " << format_double(thresholds.p_update_min) << '\n'
        << "# rhoR_threshold: " << format_double(thresholds.rho_replace_max) << '\n';
    write_csv_row(out, {"p_U", "rho_R", "closed_rate", "open_rate", "Gamma", "Gamma_prime",
                        "gamma_ss", "gamma_recursion", "R_ball", "status"});
    for (double p : opts.p_updates) {
      // alpha = 1, beta = kappa, h = 1/beta.
      const BoundSet s = evaluate_bounds({opts.n, 1.0, opts.kappa, opts.b, 1.0 / opts.kappa, p});
      write_csv_row(out, {format_double(p), level_text(replacement_ratio(p)),
                          format_double(s.closed_rate), format_double(s.open_rate),
                          format_double(s.gamma), format_double(s.gamma_prime),
                          level_text(s.gamma_ss), level_text(s.gamma_recursion),
                          format_double(s.r_ball), s.stable ? "stable" : "UNSTABLE"});
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

int cmd_worstcase(const WorstcaseOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<SweepRow> rows;
  try {
    rows = sweep(opts.ns, opts.kappas, opts.b, opts.budget, opts.seed);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::filesystem::create_directories(opts.out_dir);
  const auto csv_path = opts.out_dir / "worstcase.csv";
  {
    auto f = open_output(csv_path);
    write_csv_row(f, {"n", "kappa", "empirical_max", "prop3", "prop5", "conjecture",
                      "theta_on_boundary"});
    for (const auto& r : rows) {
      write_csv_row(f, {std::to_string(r.n), format_double(r.kappa), format_double(r.empirical_max),
                        format_double(r.prop3), format_double(r.prop5),
                        format_double(r.conjecture), r.theta_on_boundary ? "1" : "0"});
    }
  }

  static constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#8c564b"};
  std::vector<PlotSeries> series;
  std::size_t colour = 0;
  for (double kappa : opts.kappas) {
    PlotSeries empirical{"search, kappa=" + format_double(kappa), {}, kPalette[colour % 6], false};
    PlotSeries conjecture{"conjecture, kappa=" + format_double(kappa), {}, kPalette[colour % 6],
                          true};
    for (const auto& r : rows) {
      if (r.kappa != kappa) continue;
      empirical.points.emplace_back(static_cast<double>(r.n), r.empirical_max);
      conjecture.points.emplace_back(static_cast<double>(r.n), r.conjecture);
    }
    series.push_back(std::move(empirical));
    series.push_back(std::move(conjecture));
    ++colour;
  }
  const auto svg_path = opts.out_dir / "worstcase.svg";
  {
    auto f = open_output(svg_path);
    f << render_line_plot(series, "Largest minimizer displacement found vs n", "n",
                          "max ||x2 - x1||^2");
  }

  for (const auto& r : rows) {
    if (!r.theta_on_boundary) {
      out << "note: interior curvature in witness at n=" << r.n
          << " kappa=" << format_double(r.kappa) << '\n';
    }
  }
  out << "wrote " << csv_path.string() << " and " << svg_path.string() << '\n';
  return kExitOk;
}

WorstcaseOptions worstcase_preset_fig2_analogue() {
  WorstcaseOptions o;
  for (std::size_t n = 2; n <= 12; ++n) o.ns.push_back(n);
  o.kappas = {2.0, 5.0};
  o.b = 1.0;
  return o;
}

std::vector<std::size_t> parse_index_range(const std::string& text) {
  const auto colon = text.find(':');
  auto parse = [&](const std::string& s) {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> out;
  if (colon == std::string::npos) {
    out.push_back(parse(std::string(trim(text))));
    return out;
  }
  const std::size_t lo = parse(std::string(trim(text.substr(0, colon))));
  const std::size_t hi = parse(std::string(trim(text.substr(colon + 1))));
  if (hi < lo) throw std::invalid_argument("empty range '" + text + "'");
  for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::size_t threads_from_environment() {
  const char* value = std::getenv("OPENRCD_THREADS");
  if (value == nullptr || *value == '\0') return 0;
  try {
    return static_cast<std::size_t>(std::stoul(value));
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace openrcd::cli
