#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "zetalab/context.hpp"

namespace zetalab {

class ZeroTable;

enum class IntegrandKind { crit2, crit4, sigma2, s1_2l };

/// |Z|², |Z|⁴, |ζ(σ+it)|² or |S₁|^{2l}.
struct Integrand {
  IntegrandKind kind = IntegrandKind::crit2;
  double sigma = 0.5;
  int l = 1;

  static Integrand crit2() { return {IntegrandKind::crit2, 0.5, 1}; }
  static Integrand crit4() { return {IntegrandKind::crit4, 0.5, 1}; }
  static Integrand sigma2(double sigma) { return {IntegrandKind::sigma2, sigma, 1}; }
  static Integrand s1_moment(int l) { return {IntegrandKind::s1_2l, 0.5, l}; }

  int power() const;
  std::string name() const;
};

/// Integral of one integrand over [lower, upper].
struct MomentRecord {
  double lower = 0.0;
  double upper = 0.0;
  int power = 2;
  double value = 0.0;
  double err_estimate = 0.0;
  std::int64_t evaluations = 0;
};

struct QuadratureResult {
  double value = 0.0;
  double err = 0.0;
  std::int64_t evaluations = 0;
};

struct QuadratureOptions {
  unsigned workers = 1;
  double epsilon = 0.05;  // sigma2 requires sigma >= 1/2 + epsilon
};

/// Half of the mean zero spacing 2π/ln(t/2π), with the logarithm floored at 1.
double panel_width(double t);

/// Adaptive 15-point Gauss / 31-point Kronrod on [a, b]: a panel is accepted when
/// |K31 - G15| <= max(rel_tol |K31|, abs_tol (b - a)), otherwise halved, up to
/// policy.max_panel_depth levels (BudgetExceeded beyond).
QuadratureResult integrate_panel(const std::function<double(double)>& f, double a, double b,
                                 const PrecisionPolicy& policy);

/// Left-to-right base partition of [a, b] with widths capped by panel_width and
/// edges forced at every breakpoint inside (a, b). Breakpoints must be ascending.
std::vector<double> panel_edges(double a, double b, std::span<const double> breakpoints = {});

/// Integrates panel by panel; panels may run on several workers, but the sum is
/// always taken left to right so the result does not depend on `workers`.
QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  std::span<const double> edges, const PrecisionPolicy& policy,
                                  unsigned workers = 1);

/// Pointwise integrand value; the ZeroTable is only read for s1_2l.
std::function<double(double)> integrand_function(const Integrand& kind,
                                                 const PrecisionPolicy& policy,
                                                 const ZeroTable* table);

MomentRecord moment_integral(double lower, double upper, const Integrand& kind,
                             const PrecisionPolicy& policy, const ZeroTable* table = nullptr,
                             const QuadratureOptions& options = {});

/// J(T) = ∫_0^T |ζ(1/2+it)|² dt.
MomentRecord second_moment_J(double T, const PrecisionPolicy& policy,
                             const QuadratureOptions& options = {});

/// ∫_0^T |ζ(1/2+it)|⁴ dt.
MomentRecord fourth_moment(double T, const PrecisionPolicy& policy,
                           const QuadratureOptions& options = {});

/// Persistent memo of moment integrals, keyed by integrand, limits and policy.
class MomentStore {
 public:
  virtual ~MomentStore() = default;
  virtual std::optional<MomentRecord> load(const Integrand& kind, double lower, double upper,
                                           const PrecisionPolicy& policy) = 0;
  virtual void save(const Integrand& kind, const MomentRecord& record,
                    const PrecisionPolicy& policy) = 0;
};

/// In-memory store, optionally layered over a persistent one: hits in the
/// parent are copied up, saves go to both.
class MemoryMomentStore : public MomentStore {
 public:
  explicit MemoryMomentStore(MomentStore* parent = nullptr) : parent_(parent) {}
  std::optional<MomentRecord> load(const Integrand& kind, double lower, double upper,
                                   const PrecisionPolicy& policy) override;
  void save(const Integrand& kind, const MomentRecord& record,
            const PrecisionPolicy& policy) override;

 private:
  using Key = std::tuple<int, double, int, double, double, double, double, int, int>;
  static Key key(const Integrand& kind, double lower, double upper, const PrecisionPolicy& p);
  MomentStore* parent_;
  std::map<Key, MomentRecord> records_;
};

/// Makes ∫_0^u for every u in `uppers` available in ctx.store (which must be
/// set) with a single left-to-right pass; values equal moment_integral(0, u).
void prefill_from_zero(const Integrand& kind, std::vector<double> uppers, const LabContext& ctx,
                       const ZeroTable* table = nullptr);

/// moment_integral with the context's policy and options, served from
/// ctx.store when one is attached.
MomentRecord moment(double lower, double upper, const Integrand& kind, const LabContext& ctx,
                    const ZeroTable* table = nullptr);

/// Integral from a fixed lower limit to a movable upper limit, grown panel by
/// panel and memoised. record_to(u) equals moment_integral(lower, u, ...) bit for bit.
class RunningMoment {
 public:
  RunningMoment(double lower, Integrand kind, const PrecisionPolicy& policy,
                const ZeroTable* table = nullptr, QuadratureOptions options = {});

  MomentRecord record_to(double upper);
  double value_to(double upper) { return record_to(upper).value; }
  double lower() const { return edges_.front(); }

 private:
  void extend_past(double upper);
  double next_edge(double x) const;

  Integrand kind_;
  PrecisionPolicy policy_;
  const ZeroTable* table_;
  QuadratureOptions options_;
  std::function<double(double)> f_;
  std::vector<double> edges_;
  std::vector<double> prefix_value_;
  std::vector<double> prefix_err_;
  std::vector<std::int64_t> prefix_evals_;
};

}  // namespace zetalab
