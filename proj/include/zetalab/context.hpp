#pragma once

#include <array>
#include <map>
#include <numbers>
#include <optional>

namespace zetalab {

class MomentStore;

/// Tolerances and budgets shared by every numeric kernel.
struct PrecisionPolicy {
  double abs_tol = 1e-10;      // per scalar evaluation
  double rel_tol = 1e-8;       // per integral
  int max_series_terms = 60;   // truncation cap for correction series
  int max_panel_depth = 12;    // adaptive bisection cap per base panel

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kTwoPiSq = 2.0 * std::numbers::pi * std::numbers::pi;

/// Fixed constants entering the formulas. The fourth-moment coefficients
/// a_1..a_4 start unset and are filled by a fit; c̄(l) is filled by calibration.
struct Constants {
  double euler_c = kEulerGamma;
  double two_pi_sq = kTwoPiSq;
  std::optional<std::array<double, 4>> a_tail;  // a_1..a_4
  std::map<int, double> cbar;

  static constexpr double a0() { return 1.0 / kTwoPiSq; }

  /// a_0..a_4; throws MissingConstant while a_1..a_4 are unset.
  std::array<double, 5> a_coeffs() const;
  /// c̄(l); throws MissingConstant when absent.
  double cbar_for(int l) const;

  void validate() const;
};

/// Everything a functional evaluation needs besides its own arguments.
struct LabContext {
  PrecisionPolicy policy;
  Constants constants;
  double t0 = 100.0;         // smallest admissible ladder base point
  double epsilon = 0.05;     // sigma >= 1/2 + epsilon
  double alpha = 4.0;        // x range [1, alpha] for distinctness runs
  double cond_cap = 1e12;    // design-matrix condition cap for fits
  double separation_tol = 0.05;
  unsigned workers = 1;      // quadrature panel workers
  MomentStore* store = nullptr;  // optional cache for moment integrals

  void require_sigma(double sigma) const;
};

}  // namespace zetalab
