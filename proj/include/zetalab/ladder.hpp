#pragma once

#include <string>
#include <vector>

#include "zetalab/context.hpp"

namespace zetalab {

enum class LadderMode { integral, asymptotic };

std::string to_string(LadderMode mode);
LadderMode ladder_mode_from_string(const std::string& text);

/// A base point and its reverse iterates T = T̂⁰ < T̂¹ < ... < T̂ᵏ.
struct LadderSequence {
  double base_T = 0.0;
  std::vector<double> iterates;
  LadderMode mode = LadderMode::asymptotic;
  std::vector<double> increments;  // T̂ʳ - T̂ʳ⁻¹, r = 1..k
  std::vector<double> residuals;   // |defining equation| / ((1-c) T̂ʳ⁻¹) per step
};

/// Ĵ(T) = T ln(T/2π) - T.
double J_hat(double T);

/// One reverse step from `lower`: the U > lower with
///   integral mode:   ∫_lower^U Z(t)² dt = (1-c) lower,
///   asymptotic mode: Ĵ(U) - Ĵ(lower)   = (1-c) lower.
/// The bracket starts at lower + (1-c) lower / ln(lower) and its width grows by
/// 1.5x until the sign changes; no sign change below 10 lower is a SolverError.
double reverse_step(double lower, LadderMode mode, const LabContext& ctx,
                    double* residual = nullptr);

/// k reverse iterations from T (T >= ctx.t0, 0 <= k <= 10).
LadderSequence reverse_iterate(double T, int k, LadderMode mode, const LabContext& ctx);

struct PartitionReport {
  double equidistance_defect = 0.0;  // max_r |Δ_r / Δ_{r+1} - 1|
  double integral_defect = 0.0;      // same for ∫ Z² over consecutive segments
  std::vector<double> segment_integrals;
  std::vector<double> increment_ratios;  // Δ_r / ((1-c) T / ln T)
};

/// Requires at least two steps.
PartitionReport check_partition_properties(const LadderSequence& seq, const LabContext& ctx);

}  // namespace zetalab
