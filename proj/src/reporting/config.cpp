#include "zetalab/reporting/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zetalab/errors.hpp"

namespace zetalab::reporting {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw UsageError("config key '" + key + "': '" + text + "' is not a number");
  }
  return v;
}

long parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw UsageError("config key '" + key + "': '" + text + "' is not an integer");
  }
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw UsageError("config key '" + key + "': empty list");
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += format_double(v[i]);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "svg") return true;
  if (t == "false" || t == "0" || t == "none") return false;
  throw UsageError("config key '" + key + "': expected true/false");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto a = spec.find(':');
  const auto b = spec.find(':', a == std::string::npos ? a : a + 1);
  if (a == std::string::npos || b == std::string::npos) {
    throw UsageError("grid '" + spec + "' must have the form start:stop:count");
  }
  const double lo = parse_double("grid", spec.substr(0, a));
  const double hi = parse_double("grid", spec.substr(a + 1, b - a - 1));
  const long n = parse_int("grid", spec.substr(b + 1));
  if (n < 2 || !(hi > lo)) throw UsageError("grid '" + spec + "' needs count >= 2 and stop > start");
  std::vector<double> out;
  for (long i = 0; i < n; ++i) {
    out.push_back(i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
  }
  return out;
}

void RunConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw UsageError("epsilon must lie in (0, 1/2)");
  if (!(sigma >= 0.5 + epsilon) || !std::isfinite(sigma)) {
    throw UsageError("sigma must satisfy sigma >= 1/2 + epsilon");
  }
  if (x_values.empty()) throw UsageError("at least one x value is required");
  for (double x : x_values) {
    if (!(x > 0.0) || !std::isfinite(x)) throw UsageError("x values must be positive");
  }
  if (l < 1) throw UsageError("l must be >= 1");
  if (tau_grid.empty()) throw UsageError("tau grid must not be empty");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > 0.0) || !std::isfinite(tau_grid[i])) {
      throw UsageError("tau values must be positive");
    }
    if (i > 0 && !(tau_grid[i] > tau_grid[i - 1])) {
      throw UsageError("tau grid must be strictly ascending");
    }
  }
  try {
    policy.validate();
    constants.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!(t0 >= 10.0)) throw UsageError("t0 must be >= 10");
  if (!(alpha > 1.0)) throw UsageError("alpha must exceed 1");
  if (!(cond_cap > 1.0)) throw UsageError("cond_cap must exceed 1");
  if (!(separation_tol > 0.0)) throw UsageError("separation_tol must be positive");
  if (workers < 1) throw UsageError("workers must be >= 1");
  if (cache_dir.empty()) throw UsageError("cache_dir must not be empty");
}

LabContext RunConfig::context() const {
  LabContext ctx;
  ctx.policy = policy;
  ctx.constants = constants;
  ctx.t0 = t0;
  ctx.epsilon = epsilon;
  ctx.alpha = alpha;
  ctx.cond_cap = cond_cap;
  ctx.separation_tol = separation_tol;
  ctx.workers = workers;
  return ctx;
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> e{
      {"sigma", format_double(sigma)},
      {"epsilon", format_double(epsilon)},
      {"x", join(x_values)},
      {"l", std::to_string(l)},
      {"tau", join(tau_grid)},
      {"mode", to_string(mode)},
      {"abs_tol", format_double(policy.abs_tol)},
      {"rel_tol", format_double(policy.rel_tol)},
      {"max_series_terms", std::to_string(policy.max_series_terms)},
      {"max_panel_depth", std::to_string(policy.max_panel_depth)},
      {"euler_c", format_double(constants.euler_c)},
  };
  if (constants.a_tail) {
    for (int s = 0; s < 4; ++s) {
      e.emplace_back("a" + std::to_string(s + 1), format_double((*constants.a_tail)[s]));
    }
  }
  for (const auto& [lv, value] : constants.cbar) {
    e.emplace_back("cbar." + std::to_string(lv), format_double(value));
  }
  e.insert(e.end(), {
                        {"t0", format_double(t0)},
                        {"alpha", format_double(alpha)},
                        {"cond_cap", format_double(cond_cap)},
                        {"separation_tol", format_double(separation_tol)},
                        {"workers", std::to_string(workers)},
                        {"cache_dir", cache_dir},
                        {"output", output == OutputFormat::csv ? "csv" : "json"},
                        {"plot", plot_svg ? "svg" : "none"},
                    });
  return e;
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "sigma") {
    cfg.sigma = parse_double(key, value);
  } else if (key == "epsilon") {
    cfg.epsilon = parse_double(key, value);
  } else if (key == "x") {
    cfg.x_values = parse_list(key, value);
  } else if (key == "l") {
    cfg.l = static_cast<int>(parse_int(key, value));
  } else if (key == "tau") {
    cfg.tau_grid = parse_list(key, value);
  } else if (key == "mode") {
    try {
      cfg.mode = ladder_mode_from_string(value);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  } else if (key == "abs_tol") {
    cfg.policy.abs_tol = parse_double(key, value);
  } else if (key == "rel_tol") {
    cfg.policy.rel_tol = parse_double(key, value);
  } else if (key == "max_series_terms") {
    cfg.policy.max_series_terms = static_cast<int>(parse_int(key, value));
  } else if (key == "max_panel_depth") {
    cfg.policy.max_panel_depth = static_cast<int>(parse_int(key, value));
  } else if (key == "euler_c") {
    cfg.constants.euler_c = parse_double(key, value);
  } else if (key.size() == 2 && key[0] == 'a' && key[1] >= '1' && key[1] <= '4') {
    if (!cfg.constants.a_tail) cfg.constants.a_tail = std::array<double, 4>{};
    (*cfg.constants.a_tail)[key[1] - '1'] = parse_double(key, value);
  } else if (key.rfind("cbar.", 0) == 0) {
    const long lv = parse_int(key, key.substr(5));
    cfg.constants.cbar[static_cast<int>(lv)] = parse_double(key, value);
  } else if (key == "t0") {
    cfg.t0 = parse_double(key, value);
  } else if (key == "alpha") {
    cfg.alpha = parse_double(key, value);
  } else if (key == "cond_cap") {
    cfg.cond_cap = parse_double(key, value);
  } else if (key == "separation_tol") {
    cfg.separation_tol = parse_double(key, value);
  } else if (key == "workers") {
    const long w = parse_int(key, value);
    if (w < 1) throw UsageError("workers must be >= 1");
    cfg.workers = static_cast<unsigned>(w);
  } else if (key == "cache_dir") {
    cfg.cache_dir = value;
  } else if (key == "output") {
    if (value == "csv") {
      cfg.output = OutputFormat::csv;
    } else if (value == "json") {
      cfg.output = OutputFormat::json;
    } else {
      throw UsageError("output must be csv or json");
    }
  } else if (key == "plot") {
    cfg.plot_svg = parse_bool(key, value);
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  int a_keys = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.size() == 2 && key[0] == 'a' && key[1] >= '1' && key[1] <= '4') ++a_keys;
    apply_setting(base, key, line.substr(eq + 1));
  }
  if (a_keys != 0 && a_keys != 4) throw UsageError("config keys a1..a4 must be given together");
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) return base;
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

std::string format_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : cfg.entries()) out += k + " = " + v + "\n";
  return out;
}

void save_config_file(const std::string& path, const RunConfig& cfg) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw UsageError("cannot write config file '" + path + "'");
    out << format_config(cfg);
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace zetalab::reporting
