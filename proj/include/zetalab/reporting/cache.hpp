#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>

#include "zetalab/quadrature.hpp"
#include "zetalab/zeros.hpp"

namespace zetalab::reporting {

/// Bumped whenever a numeric kernel changes so that stale entries miss.
inline constexpr const char* kCodeVersion = "zetalab-1";

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);

/// Canonical text of the policy fields entering every cache key.
std::string policy_key(const PrecisionPolicy& policy);

/// Key text of a moment entry: kind, parameters rounded to 12 significant
/// digits, policy and code version.
std::string moment_key(const Integrand& kind, double lower, double upper,
                       const PrecisionPolicy& policy);

/// One file per moment record under `dir`. Values are stored as hex floats so a
/// hit is bit-identical to the computation; every file carries a checksum and
/// the exact limits, and entries that fail either check are ignored.
class FileMomentStore : public MomentStore {
 public:
  explicit FileMomentStore(std::string dir);
  std::optional<MomentRecord> load(const Integrand& kind, double lower, double upper,
                                   const PrecisionPolicy& policy) override;
  void save(const Integrand& kind, const MomentRecord& record,
            const PrecisionPolicy& policy) override;

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::string path_for(const std::string& key) const;
  std::string dir_;
  std::mutex mutex_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

/// Zero table covering at least `T_max`, read from `dir` when a cached table
/// built with the same policy reaches that far, otherwise built and written.
ZeroTable cached_zero_table(const std::string& dir, double T_max, const PrecisionPolicy& policy);

}  // namespace zetalab::reporting
