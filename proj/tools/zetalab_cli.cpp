// zetalab: command-line front end for the moment, ladder, functional, chain,
// Fermat probe, coefficient fit, c̄ calibration and zero-table computations.
//
// Settings are layered: built-in defaults, then the config file, then flags.
// Exit codes: 0 success, 1 usage error, 2 computation failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "zetalab/chain.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/functionals.hpp"
#include "zetalab/ladder.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/reporting/cache.hpp"
#include "zetalab/reporting/config.hpp"
#include "zetalab/reporting/output.hpp"
#include "zetalab/special_functions.hpp"
#include "zetalab/zeros.hpp"

namespace {

using namespace zetalab;
using namespace zetalab::reporting;

struct CommonFlags {
  std::string config_path = "zetalab.conf";
  std::string sigma, epsilon, l, mode, tol, cache_dir, out, plot, workers;
  std::vector<std::string> x, tau;
  std::string output_file;
  std::string plot_file = "chain.svg";
  bool no_cache = false;
};

std::string join_strings(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

RunConfig resolve_config(const CommonFlags& f) {
  RunConfig cfg = load_config_file(f.config_path);
  const auto set = [&](const char* key, const std::string& value) {
    if (!value.empty()) apply_setting(cfg, key, value);
  };
  set("sigma", f.sigma);
  set("epsilon", f.epsilon);
  set("l", f.l);
  set("mode", f.mode);
  set("rel_tol", f.tol);
  set("cache_dir", f.cache_dir);
  set("output", f.out);
  set("workers", f.workers);
  if (!f.plot.empty()) {
    if (f.plot != "svg") throw UsageError("--plot accepts only 'svg'");
    cfg.plot_svg = true;
  }
  if (!f.x.empty()) apply_setting(cfg, "x", join_strings(f.x));
  if (!f.tau.empty()) apply_setting(cfg, "tau", join_strings(f.tau));
  cfg.validate();
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

/// One command's result in both output shapes.
struct Report {
  Table table;
  Json results = Json::object();
  Json errors = Json::array();
};

void emit(const CommonFlags& f, const RunConfig& cfg, const Report& r) {
  write_text(f.output_file, cfg.output == OutputFormat::csv
                                ? csv_document(cfg, r.table)
                                : json_document(cfg, r.results, r.errors));
}

/// Zero table reaching `upper`, through the on-disk cache unless disabled.
ZeroTable zero_table_to(const CommonFlags& f, const RunConfig& cfg, double upper) {
  const double t_max = std::max(upper * 1.02 + 50.0, 100.0);
  return f.no_cache ? build_zero_table(t_max, cfg.policy)
                    : cached_zero_table(cfg.cache_dir, t_max, cfg.policy);
}

// moment ----------------------------------------------------------------------

struct MomentFlags {
  std::string kind = "crit2";
  double lower = 0.0;
  double upper = 0.0;
};

Report run_moment(const MomentFlags& m, const CommonFlags& f, const RunConfig& cfg,
                  const LabContext& ctx) {
  if (!(m.upper >= m.lower) || m.lower < 0.0) {
    throw UsageError("moment needs 0 <= --lower <= --upper");
  }
  Integrand kind;
  if (m.kind == "crit2") {
    kind = Integrand::crit2();
  } else if (m.kind == "crit4") {
    kind = Integrand::crit4();
  } else if (m.kind == "sigma2") {
    kind = Integrand::sigma2(cfg.sigma);
  } else if (m.kind == "s1") {
    kind = Integrand::s1_moment(cfg.l);
  } else {
    throw UsageError("--kind must be crit2, crit4, sigma2 or s1");
  }
  std::optional<ZeroTable> table;
  if (kind.kind == IntegrandKind::s1_2l) table = zero_table_to(f, cfg, m.upper);
  const MomentRecord rec = moment(m.lower, m.upper, kind, ctx, table ? &*table : nullptr);
  Report r;
  r.table.columns = {"kind", "sigma", "l", "lower", "upper", "value", "err_estimate", "evaluations"};
  r.table.rows.push_back({kind.name(), cell(kind.sigma), std::to_string(kind.l), cell(rec.lower),
                          cell(rec.upper), cell(rec.value), cell(rec.err_estimate),
                          std::to_string(rec.evaluations)});
  r.results = to_json(rec);
  r.results["kind"] = kind.name();
  return r;
}

// ladder ----------------------------------------------------------------------

struct LadderFlags {
  double T = 1000.0;
  int k = 3;
};

Report run_ladder(const LadderFlags& lf, const RunConfig& cfg, const LabContext& ctx) {
  if (lf.k < 0 || lf.k > 10) throw UsageError("--k must lie in [0, 10]");
  if (!(lf.T >= ctx.t0)) throw UsageError("--T must be >= t0 = " + format_double(ctx.t0));
  const LadderSequence seq = reverse_iterate(lf.T, lf.k, cfg.mode, ctx);
  Report r;
  r.table.columns = {"r", "iterate", "increment", "residual"};
  for (std::size_t i = 0; i < seq.iterates.size(); ++i) {
    r.table.rows.push_back({std::to_string(i), cell(seq.iterates[i]),
                            i == 0 ? "" : cell(seq.increments[i - 1]),
                            i == 0 ? "" : cell(seq.residuals[i - 1])});
  }
  r.results["sequence"] = to_json(seq);
  if (seq.iterates.size() >= 3) {
    const PartitionReport p = check_partition_properties(seq, ctx);
    r.table.meta = {{"equidistance_defect", cell(p.equidistance_defect)},
                    {"integral_defect", cell(p.integral_defect)}};
    r.results["partition"] = to_json(p);
  }
  return r;
}

// functional ------------------------------------------------------------------

struct FunctionalFlags {
  std::string name = "f1";
  std::string summand = "zeta";
};

Report run_functional(const FunctionalFlags& ff, const CommonFlags& f, const RunConfig& cfg,
                      const LabContext& ctx) {
  static const std::vector<std::string> kNames = {"f1",      "crossbreed",   "basic",
                                                  "divisor", "gram",         "lngamma",
                                                  "sigma_moment", "s1"};
  if (std::find(kNames.begin(), kNames.end(), ff.name) == kNames.end()) {
    throw UsageError("--name must be one of f1, crossbreed, basic, divisor, gram, lngamma, "
                     "sigma_moment, s1");
  }
  if (ff.summand != "zeta" && ff.summand != "abs2") {
    throw UsageError("--summand must be zeta or abs2");
  }
  std::optional<ZeroTable> table;
  if (ff.name == "s1") {
    const double cbar = cfg.constants.cbar_for(cfg.l);
    const double xmax = *std::max_element(cfg.x_values.begin(), cfg.x_values.end());
    table = zero_table_to(f, cfg, xmax * cfg.tau_grid.back() / cbar);
  }
  Report r;
  r.table.columns = {"functional", "x", "tau", "value", "target", "rel_error"};
  r.results["functional"] = ff.name;
  r.results["samples"] = Json::array();
  for (double x : cfg.x_values) {
    for (double tau : cfg.tau_grid) {
      FunctionalSample s;
      if (ff.name == "f1") {
        s = functional_F1(x, tau, cfg.mode, ctx);
      } else if (ff.name == "crossbreed") {
        s = crossbreed_functional(x, cfg.sigma, tau, cfg.constants.a_coeffs(), cfg.mode, ctx);
      } else if (ff.name == "basic") {
        s = basic_formula_check(tau, cfg.sigma, cfg.constants.a_coeffs(), cfg.mode, ctx);
      } else if (ff.name == "divisor") {
        s = divisor_sum_functional(x, tau, cfg.mode, ctx);
      } else if (ff.name == "gram") {
        s = tnu_sum_functional(x, tau, cfg.mode, ctx,
                               ff.summand == "zeta" ? GramSummand::zeta_value
                                                    : GramSummand::zeta_abs_squared);
      } else if (ff.name == "lngamma") {
        s = gamma_ratio_functional(x, tau, cfg.mode, ctx);
      } else if (ff.name == "sigma_moment") {
        s = sigma_moment_functional(x, cfg.sigma, tau, ctx);
      } else {
        s = s1_moment_functional(x, cfg.l, tau, *table, ctx);
      }
      r.table.rows.push_back({ff.name, cell(x), cell(tau), cell(s.value), cell(s.x_target),
                              cell(s.rel_error_vs_target)});
      Json j = to_json(s);
      j["x"] = number(x);
      r.results["samples"].push_back(j);
    }
  }
  return r;
}

// chain -----------------------------------------------------------------------

Report run_chain(const CommonFlags& f, const RunConfig& cfg, const LabContext& ctx, bool& ok) {
  std::optional<ZeroTable> table;
  if (cfg.constants.cbar.count(cfg.l)) {
    const double xmax = *std::max_element(cfg.x_values.begin(), cfg.x_values.end());
    table = zero_table_to(f, cfg, xmax * cfg.tau_grid.back() / cfg.constants.cbar_for(cfg.l));
  }
  std::optional<std::array<double, 5>> a;
  if (cfg.constants.a_tail) a = cfg.constants.a_coeffs();
  const auto& names = chain_member_names();
  Report r;
  r.table.columns = {"x", "tau"};
  for (const auto& n : names) r.table.columns.push_back(n);
  for (int m = 1; m < kChainMembers; ++m) r.table.columns.push_back("ratio_" + names[m]);
  r.results["chains"] = Json::array();
  ok = true;
  std::vector<ChainReport> reports;
  for (double x : cfg.x_values) {
    ChainReport rep = evaluate_chain(x, cfg.sigma, cfg.l, cfg.tau_grid, cfg.mode,
                                     a ? &*a : nullptr, table ? &*table : nullptr, ctx);
    for (std::size_t j = 0; j < rep.tau_grid.size(); ++j) {
      std::vector<std::string> row{cell(x), cell(rep.tau_grid[j])};
      for (int m = 0; m < kChainMembers; ++m) {
        row.push_back(rep.errors[m][j].empty() ? cell(rep.members[m][j]) : "error");
        if (!rep.errors[m][j].empty()) {
          r.errors.push_back(error_json(rep.errors[m][j].substr(0, rep.errors[m][j].find(':')),
                                        rep.errors[m][j]));
          r.errors.back()["member"] = names[m];
          r.errors.back()["x"] = number(x);
          r.errors.back()["tau"] = number(rep.tau_grid[j]);
        }
      }
      for (int m = 1; m < kChainMembers; ++m) row.push_back(cell(rep.ratios[m][j]));
      r.table.rows.push_back(std::move(row));
    }
    for (int m = 1; m < kChainMembers; ++m) {
      if (rep.slopes[m].fitted) {
        r.table.meta.push_back({"slope_p." + format_double(x) + "." + names[m],
                                cell(rep.slopes[m].p)});
      }
    }
    if (rep.complete_members() == 0) ok = false;
    r.results["chains"].push_back(to_json(rep));
    reports.push_back(std::move(rep));
  }
  if (cfg.plot_svg && !reports.empty()) write_text(f.plot_file, chain_svg(reports.front()));
  return r;
}

// fermat ----------------------------------------------------------------------

struct FermatFlags {
  std::vector<long> triple;
  int n = 3;
};

Report run_fermat(const FermatFlags& ff, const RunConfig& cfg, const LabContext& ctx) {
  if (ff.triple.size() != 3) throw UsageError("--triple takes three positive integers");
  for (long v : ff.triple) {
    if (v < 1) throw UsageError("--triple entries must be >= 1");
  }
  if (ff.n < 3) throw UsageError("--n must be >= 3");
  if (cfg.tau_grid.size() < 3) throw UsageError("the Fermat probe needs at least three tau values");
  const FermatRational fr = make_fermat_rational(ff.triple[0], ff.triple[1], ff.triple[2], ff.n);
  const FermatProbe probe =
      fermat_probe(fr, cfg.sigma, cfg.tau_grid, cfg.constants.a_coeffs(), cfg.mode, ctx);
  const std::string verdict =
      probe.fit.separated_from_one ? "separated from 1" : "not separated from 1";
  static const std::vector<std::string> kComponents = {
      "ladder_lower", "ladder_upper", "sigma_integral", "crit2_integral", "crit4_integral"};
  Report r;
  r.table.meta = {{"rational", fr.str()},
                  {"rational_value", cell(fr.to_double())},
                  {"limit", cell(probe.fit.limit)},
                  {"limit_stderr", cell(probe.fit.limit_stderr)},
                  {"beta", cell(probe.fit.beta)},
                  {"verdict", verdict}};
  r.table.columns = {"tau", "value", "rel_error"};
  for (const auto& c : kComponents) r.table.columns.push_back(c);
  r.results["triple"] = Json::array({ff.triple[0], ff.triple[1], ff.triple[2]});
  r.results["n"] = ff.n;
  r.results["rational"] = fr.str();
  r.results["rational_value"] = number(fr.to_double());
  r.results["samples"] = Json::array();
  for (const auto& s : probe.samples) {
    std::vector<std::string> row{cell(s.tau), cell(s.value), cell(s.rel_error_vs_target)};
    for (const auto& c : kComponents) {
      const auto it = s.components.find(c);
      row.push_back(it == s.components.end() ? "nan" : cell(it->second));
    }
    r.table.rows.push_back(std::move(row));
    r.results["samples"].push_back(to_json(s));
  }
  r.results["fit"] = to_json(probe.fit);
  r.results["verdict"] = verdict;
  return r;
}

// fit / calibrate -------------------------------------------------------------

Report run_fit(const std::string& grid_spec, const CommonFlags& f, const RunConfig& cfg,
               const LabContext& ctx) {
  const std::vector<double> grid = parse_grid(grid_spec);
  const CoeffFit fit = fit_fourth_moment_coeffs(grid, ctx);
  RunConfig file_cfg = load_config_file(f.config_path);
  file_cfg.constants.a_tail = std::array<double, 4>{fit.a_coeffs[1], fit.a_coeffs[2],
                                                    fit.a_coeffs[3], fit.a_coeffs[4]};
  save_config_file(f.config_path, file_cfg);
  Report r;
  r.table.meta = {{"residual", cell(fit.residual)}, {"condition", cell(fit.condition)}};
  for (int s = 0; s < 5; ++s) {
    r.table.meta.push_back({"fitted_a" + std::to_string(s), cell(fit.a_coeffs[s])});
  }
  r.table.columns = {"T", "fourth_moment"};
  for (std::size_t i = 0; i < fit.tau_grid.size(); ++i) {
    r.table.rows.push_back({cell(fit.tau_grid[i]), cell(fit.moments[i])});
  }
  (void)cfg;
  r.results = to_json(fit);
  return r;
}

Report run_calibrate(double tau_ref, const CommonFlags& f, const RunConfig& cfg, LabContext& ctx) {
  if (!(tau_ref > 0.0)) throw UsageError("--tau-ref must be positive");
  const ZeroTable table = zero_table_to(f, cfg, s1_coverage_for(tau_ref));
  const double cbar = calibrate_cbar(cfg.l, tau_ref, table, ctx);
  RunConfig file_cfg = load_config_file(f.config_path);
  file_cfg.constants.cbar[cfg.l] = cbar;
  save_config_file(f.config_path, file_cfg);
  Report r;
  r.table.columns = {"l", "tau_ref", "cbar", "upper"};
  r.table.rows.push_back({std::to_string(cfg.l), cell(tau_ref), cell(cbar), cell(tau_ref / cbar)});
  r.results = Json{{"l", cfg.l}, {"tau_ref", number(tau_ref)}, {"cbar", number(cbar)},
                   {"upper", number(tau_ref / cbar)}};
  return r;
}

// zeros -----------------------------------------------------------------------

Report run_zeros(double upper, const CommonFlags& f, const RunConfig& cfg) {
  if (!(upper > 0.0)) throw UsageError("--upper must be positive");
  const ZeroTable table = zero_table_to(f, cfg, upper);
  Report r;
  const std::size_t count = table.count_to(upper);
  r.table.meta = {{"count", std::to_string(count)},
                  {"smooth_count", cell(rs_theta(upper, cfg.policy) / std::numbers::pi + 1.0)}};
  r.table.columns = {"index", "gamma"};
  Json zeros = Json::array();
  for (std::size_t i = 0; i < count; ++i) {
    r.table.rows.push_back({std::to_string(i + 1), cell(table.zeros()[i])});
    zeros.push_back(number(table.zeros()[i]));
  }
  r.results = Json{{"upper", number(upper)}, {"count", count}, {"zeros", zeros}};
  return r;
}

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "Config file (key = value per line)");
  cmd->add_option("--sigma", f.sigma, "Real part sigma >= 1/2 + epsilon");
  cmd->add_option("--epsilon", f.epsilon, "Margin epsilon in (0, 1/2)");
  cmd->add_option("--x", f.x, "x value (repeatable)");
  cmd->add_option("--l", f.l, "S1 moment exponent l >= 1");
  cmd->add_option("--tau", f.tau, "tau grid value (repeatable, ascending)");
  cmd->add_option("--mode", f.mode, "Ladder mode: integral or asymptotic");
  cmd->add_option("--tol", f.tol, "Relative quadrature tolerance");
  cmd->add_option("--workers", f.workers, "Worker threads for quadrature");
  cmd->add_option("--cache-dir", f.cache_dir, "Cache directory");
  cmd->add_flag("--no-cache", f.no_cache, "Bypass the on-disk cache");
  cmd->add_option("--out", f.out, "Output format: csv or json");
  cmd->add_option("-o,--output-file", f.output_file, "Write the report here instead of stdout");
  cmd->add_option("--plot", f.plot, "Also write a plot: svg");
  cmd->add_option("--plot-file", f.plot_file, "Plot path (default chain.svg)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zetalab: zeta moments, reverse ladders and equivalence-chain experiments"};
  app.require_subcommand(1);

  CommonFlags f;
  MomentFlags mf;
  LadderFlags lf;
  FunctionalFlags ff;
  FermatFlags fermat;
  std::string grid = "500:10000:8";
  double tau_ref = 5000.0;
  double zeros_upper = 1000.0;

  auto* moment_cmd = app.add_subcommand("moment", "Integral of |Z|^2, |Z|^4, |zeta(sigma+it)|^2 or |S1|^2l");
  moment_cmd->add_option("--kind", mf.kind, "crit2, crit4, sigma2 or s1");
  moment_cmd->add_option("--lower", mf.lower, "Lower limit (default 0)");
  moment_cmd->add_option("--upper", mf.upper, "Upper limit")->required();

  auto* ladder_cmd = app.add_subcommand("ladder", "Reverse iterates of the ladder");
  ladder_cmd->add_option("--T", lf.T, "Base point T >= t0");
  ladder_cmd->add_option("--k", lf.k, "Number of iterates (0..10)");

  auto* functional_cmd = app.add_subcommand("functional", "One chain functional over x and tau");
  functional_cmd->add_option("--name", ff.name,
                             "f1, crossbreed, basic, divisor, gram, lngamma, sigma_moment or s1");
  functional_cmd->add_option("--summand", ff.summand, "Gram summand: zeta or abs2");

  auto* chain_cmd = app.add_subcommand("chain", "All seven chain members and their ratios");

  auto* fermat_cmd = app.add_subcommand("fermat", "Fermat-rational probe and limit verdict");
  fermat_cmd->add_option("--triple", fermat.triple, "x y z")->expected(3);
  fermat_cmd->add_option("--n", fermat.n, "Exponent n >= 3");

  auto* fit_cmd = app.add_subcommand("fit", "Fit a1..a4 of the fourth moment and store them");
  fit_cmd->add_option("--grid", grid, "start:stop:count");

  auto* calibrate_cmd = app.add_subcommand("calibrate", "Calibrate cbar(l) and store it");
  calibrate_cmd->add_option("--tau-ref", tau_ref, "Reference tau");

  auto* zeros_cmd = app.add_subcommand("zeros", "Zeros of Z up to an upper bound");
  zeros_cmd->add_option("--upper", zeros_upper, "Upper bound");

  for (auto* cmd : {moment_cmd, ladder_cmd, functional_cmd, chain_cmd, fermat_cmd, fit_cmd,
                    calibrate_cmd, zeros_cmd}) {
    add_common(cmd, f);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  RunConfig cfg;
  try {
    cfg = resolve_config(f);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  LabContext ctx = cfg.context();
  FileMomentStore file_store(cfg.cache_dir);
  MemoryMomentStore memory(f.no_cache ? nullptr : &file_store);
  ctx.store = &memory;

  try {
    Report report;
    int status = 0;
    if (*moment_cmd) {
      report = run_moment(mf, f, cfg, ctx);
    } else if (*ladder_cmd) {
      report = run_ladder(lf, cfg, ctx);
    } else if (*functional_cmd) {
      report = run_functional(ff, f, cfg, ctx);
    } else if (*chain_cmd) {
      bool ok = true;
      report = run_chain(f, cfg, ctx, ok);
      status = ok ? 0 : 2;
    } else if (*fermat_cmd) {
      report = run_fermat(fermat, cfg, ctx);
    } else if (*fit_cmd) {
      report = run_fit(grid, f, cfg, ctx);
    } else if (*calibrate_cmd) {
      report = run_calibrate(tau_ref, f, cfg, ctx);
    } else {
      report = run_zeros(zeros_upper, f, cfg);
    }
    emit(f, cfg, report);
    return status;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    const Json errors = Json::array({error_json(e.kind(), e.what())});
    std::cerr << json_document(cfg, nullptr, errors);
    return 2;
  } catch (const std::exception& e) {
    const Json errors = Json::array({error_json("Error", e.what())});
    std::cerr << json_document(cfg, nullptr, errors);
    return 2;
  }
}
