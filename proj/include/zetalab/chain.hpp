#pragma once

#include <array>
#include <string>
#include <vector>

#include "zetalab/context.hpp"
#include "zetalab/functionals.hpp"
#include "zetalab/ladder.hpp"

namespace zetalab {

class ZeroTable;

inline constexpr int kChainMembers = 7;

/// Member names in chain order; row 0 is the basic state.
const std::array<std::string, kChainMembers>& chain_member_names();

/// |ratio - 1| ≈ beta (1/ln τ)^p, fitted in log-log form.
struct ConvergenceSlope {
  double p = 0.0;
  double beta = 0.0;
  bool fitted = false;
};

/// Raw chain values (each asymptotic to x τ) per member and τ. Failed cells
/// hold NaN and a non-empty message in `errors`.
struct ChainReport {
  double x = 0.0;
  double sigma = 1.0;
  int l = 1;
  LadderMode mode = LadderMode::asymptotic;
  std::vector<double> tau_grid;
  std::vector<std::vector<double>> members;  // [member][tau]
  std::vector<std::vector<double>> ratios;   // member / basic state
  std::vector<std::vector<std::string>> errors;
  std::vector<ConvergenceSlope> slopes;

  /// Number of members whose every cell holds a value.
  int complete_members() const;
};

/// The seven members at every τ of the grid. `a` feeds the cross-breed member
/// and falls back to ctx.constants when null. `table` backs the S₁ member and
/// may be null, in which case that member is reported as failed.
ChainReport evaluate_chain(double x, double sigma, int l, const std::vector<double>& tau_grid,
                           LadderMode mode, const std::array<double, 5>* a,
                           const ZeroTable* table, const LabContext& ctx);

struct DistinctnessResult {
  double x1 = 0.0;
  double x2 = 0.0;
  std::vector<double> tau_grid;
  std::vector<double> ratios;  // basic state at x2 over basic state at x1
  bool has_fit = false;        // needs at least three τ values
  LimitFit fit;
};

/// Requires x1, x2 in [1, ctx.alpha].
DistinctnessResult distinctness_experiment(double x1, double x2,
                                           const std::vector<double>& tau_grid, LadderMode mode,
                                           const LabContext& ctx);

struct FamilyComparison {
  std::vector<double> x_list;
  double tau = 0.0;
  std::vector<ChainReport> chains;  // one single-τ report per x
  /// separated[i][j]: every member available for both x_i and x_j differs by
  /// more than a factor 1 + ctx.separation_tol.
  std::vector<std::vector<bool>> separated;
  /// min over members of |ln(member(x_i) / member(x_j))|.
  std::vector<std::vector<double>> min_log_gap;
};

FamilyComparison chain_family_compare(const std::vector<double>& x_list, double sigma, int l,
                                      double tau, LadderMode mode,
                                      const std::array<double, 5>* a, const ZeroTable* table,
                                      const LabContext& ctx);

}  // namespace zetalab
