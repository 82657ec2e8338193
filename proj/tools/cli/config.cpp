#include "cli/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <string>

#include "cli/format.hpp"
#include "openrcd/errors.hpp"

namespace openrcd::cli {

namespace {

constexpr std::array<std::string_view, 5> kCoreKeys = {"n", "alpha", "beta", "b", "p_U"};
constexpr std::array<std::string_view, 12> kKnownKeys = {
    "n",       "alpha",        "beta", "b",             "p_U",            "h",
    "horizon", "replications", "seed", "initial_state", "initial_vector", "function_family"};

double parse_real(std::string_view key, std::string_view text) {
  const std::string s(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(key), "expected a real number, got '" + s + "'");
  }
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), "expected a non-negative integer, got '" +
                                            std::string(text) + "'");
  }
  return v;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    const std::string where = "line " + std::to_string(number);
    if (eq == std::string_view::npos) throw ConfigError(where, "expected key = value");
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key.empty()) throw ConfigError(where, "empty key");
    if (!out.emplace(std::string(key), std::string(value)).second) {
      throw ConfigError(std::string(key), "duplicate key");
    }
  }
  return out;
}

ExperimentConfig apply_entries(const KeyValues& entries, ExperimentConfig cfg, bool require_core) {
  for (const auto& [key, value] : entries) {
    bool known = false;
    for (auto k : kKnownKeys) known = known || k == key;
    if (!known) throw ConfigError(key, "unknown key");
  }
  if (require_core) {
    for (auto key : kCoreKeys) {
      if (!entries.contains(key)) throw ConfigError(std::string(key), "missing required key");
    }
  }

  auto get = [&](std::string_view key) -> const std::string* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  if (const auto* v = get("n")) cfg.n = parse_unsigned("n", *v);
  if (const auto* v = get("alpha")) cfg.alpha = parse_real("alpha", *v);
  if (const auto* v = get("beta")) cfg.beta = parse_real("beta", *v);
  if (const auto* v = get("b")) cfg.b = parse_real("b", *v);
  if (const auto* v = get("p_U")) cfg.p_update = parse_real("p_U", *v);
  if (const auto* v = get("h")) cfg.h = parse_real("h", *v);
  if (const auto* v = get("horizon")) cfg.horizon = parse_unsigned("horizon", *v);
  if (const auto* v = get("replications")) cfg.replications = parse_unsigned("replications", *v);
  if (const auto* v = get("seed")) cfg.seed = parse_unsigned("seed", *v);
  if (const auto* v = get("initial_state")) {
    if (*v == "uniform_budget") {
      cfg.initial_state = InitialState::uniform_budget;
    } else if (*v == "minimizer") {
      cfg.initial_state = InitialState::minimizer;
    } else if (*v == "explicit") {
      cfg.initial_state = InitialState::explicit_vector;
    } else {
      throw ConfigError("initial_state", "expected uniform_budget, minimizer or explicit");
    }
  }
  if (const auto* v = get("initial_vector")) {
    cfg.initial_vector.clear();
    for (const auto& item : split_list(*v)) {
      cfg.initial_vector.push_back(parse_real("initial_vector", item));
    }
  }
  if (const auto* v = get("function_family")) {
    if (*v == "quadratic") {
      cfg.family = FunctionFamily::quadratic;
    } else if (*v == "logcosh_quadratic") {
      cfg.family = FunctionFamily::logcosh_quadratic;
    } else {
      throw ConfigError("function_family", "expected quadratic or logcosh_quadratic");
    }
  }
  cfg.validate();
  return cfg;
}

std::optional<ExperimentConfig> preset_config(std::string_view name) {
  if (name == "fig1") return ExperimentConfig::fig1();
  return std::nullopt;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::optional<ExperimentConfig>& preset) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  const KeyValues entries = parse_key_values(in);
  return apply_entries(entries, preset.value_or(ExperimentConfig{}), !preset.has_value());
}

}  // namespace openrcd::cli
