#pragma once

#include <cstdint>
#include <vector>

#include "zetalab/context.hpp"

namespace zetalab {

/// Ordinates of the critical-line zeros up to a coverage limit, with the
/// running value of S₁ at each zero so that S₁(t) costs one short quadrature.
class ZeroTable {
 public:
  ZeroTable() = default;
  /// `zeros` must be strictly increasing and lie in (0, upper_bound].
  ZeroTable(std::vector<double> zeros, double upper_bound, const PrecisionPolicy& policy);

  const std::vector<double>& zeros() const { return zeros_; }
  double upper_bound() const { return upper_bound_; }
  std::size_t size() const { return zeros_.size(); }

  /// Number of zeros with ordinate <= t.
  std::size_t count_to(double t) const;
  /// S₁ at the j-th zero (0-based).
  double s1_at_zero(std::size_t j) const { return s1_nodes_[j]; }
  const PrecisionPolicy& policy() const { return policy_; }

 private:
  std::vector<double> zeros_;
  std::vector<double> s1_nodes_;
  double upper_bound_ = 0.0;
  PrecisionPolicy policy_;
};

enum class NuKind { gram };

/// Points t_ν with ϑ(t_ν) = π ν for ν = first_index, first_index + 1, ...
struct NuSequence {
  std::vector<double> points;
  std::int64_t first_index = 0;
  NuKind kind = NuKind::gram;
};

/// All zeros of Z on (0, T_max], each to 1e-9, by sign-change scanning and
/// bisection. Gram blocks that come up short are rescanned on a finer grid;
/// a final count outside ϑ(T_max)/π + 1 ± 2 raises CoverageError.
ZeroTable build_zero_table(double T_max, const PrecisionPolicy& policy);

/// ∫_a^b ϑ(u) du (a, b >= 0).
double theta_integral(double a, double b, const PrecisionPolicy& policy);

/// Gram points in (lower, upper], requires lower >= 10.
NuSequence gram_points(double lower, double upper, const PrecisionPolicy& policy);

/// The Gram point with index ν (ν >= -1).
double gram_point(std::int64_t nu, const PrecisionPolicy& policy);

/// S(t) = N(t) - 1 - ϑ(t)/π, with N(t) the number of table zeros <= t.
double S_of_t(double t, const ZeroTable& table, const PrecisionPolicy& policy);

/// S₁(t) = ∫_0^t S(u) du.
double S1_of_t(double t, const ZeroTable& table, const PrecisionPolicy& policy);

}  // namespace zetalab
