#include "zetalab/context.hpp"

#include <cmath>
#include <string>

#include "zetalab/errors.hpp"

namespace zetalab {

void PrecisionPolicy::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("precision policy: abs_tol and rel_tol must be positive");
  }
  if (max_series_terms < 1 || max_panel_depth < 1) {
    throw DomainError("precision policy: max_series_terms and max_panel_depth must be >= 1");
  }
}

std::array<double, 5> Constants::a_coeffs() const {
  if (!a_tail) {
    throw MissingConstant("fourth-moment coefficients a_1..a_4 are unset; run the fit first");
  }
  return {a0(), (*a_tail)[0], (*a_tail)[1], (*a_tail)[2], (*a_tail)[3]};
}

double Constants::cbar_for(int l) const {
  auto it = cbar.find(l);
  if (it == cbar.end()) {
    throw MissingConstant("cbar(" + std::to_string(l) + ") is unset; run calibrate first");
  }
  return it->second;
}

void Constants::validate() const {
  if (!(euler_c > 0.5 && euler_c < 0.6)) {
    throw DomainError("euler_c must lie in (0.5, 0.6)");
  }
  for (const auto& [l, value] : cbar) {
    if (l < 1 || !(value > 0.0)) {
      throw DomainError("cbar entries need l >= 1 and a positive value");
    }
  }
}

void LabContext::require_sigma(double sigma) const {
  if (!(sigma >= 0.5 + epsilon) || !std::isfinite(sigma)) {
    throw DomainError("sigma must satisfy sigma >= 1/2 + epsilon (epsilon = " +
                      std::to_string(epsilon) + ")");
  }
}

}  // namespace zetalab
