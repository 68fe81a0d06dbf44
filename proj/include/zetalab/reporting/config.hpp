#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zetalab/context.hpp"
#include "zetalab/ladder.hpp"

namespace zetalab::reporting {

/// Bad user input (unknown config key, malformed value, violated range).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct RunConfig {
  double sigma = 1.0;
  double epsilon = 0.05;
  std::vector<double> x_values{1.0 - kEulerGamma};
  int l = 1;
  std::vector<double> tau_grid{1000.0, 3000.0, 10000.0};
  LadderMode mode = LadderMode::asymptotic;
  PrecisionPolicy policy;
  Constants constants;
  double t0 = 100.0;
  double alpha = 4.0;
  double cond_cap = 1e12;
  double separation_tol = 0.05;
  unsigned workers = 1;
  std::string cache_dir = ".zetalab-cache";
  OutputFormat output = OutputFormat::csv;
  bool plot_svg = false;

  /// Throws UsageError on any range violation.
  void validate() const;
  LabContext context() const;
  /// Every key with its current value, in canonical order.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Sets one key; throws UsageError for unknown keys or unparsable values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses the flat `key = value` format ('#' starts a comment).
RunConfig parse_config(const std::string& text, RunConfig base = {});

/// Missing file yields `base` unchanged.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

std::string format_config(const RunConfig& cfg);

/// Writes atomically (temporary file then rename).
void save_config_file(const std::string& path, const RunConfig& cfg);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Parses "a:b:n" into n evenly spaced points from a to b.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace zetalab::reporting
