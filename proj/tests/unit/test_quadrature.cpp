#include <cmath>
#include <numbers>

#include "doctest.h"
#include "frozen.hpp"
#include "shared.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/quadrature.hpp"

using namespace zetalab;
using zetalab::testing::shared_context;
using zetalab::testing::shared_table;

TEST_SUITE("quadrature") {

TEST_CASE("empty interval integrates to zero for every kind") {
  PrecisionPolicy p;
  const ZeroTable& table = shared_table(100.0);
  for (const auto& kind : {Integrand::crit2(), Integrand::crit4(), Integrand::sigma2(1.0),
                           Integrand::s1_moment(1), Integrand::s1_moment(2)}) {
    const auto rec = moment_integral(37.5, 37.5, kind, p, &table);
    CHECK(rec.value == 0.0);
    CHECK(rec.err_estimate == 0.0);
  }
}

TEST_CASE("crit2 is additive over adjacent intervals") {
  PrecisionPolicy p;
  const double whole = moment_integral(0, 1000, Integrand::crit2(), p).value;
  const double left = moment_integral(0, 500, Integrand::crit2(), p).value;
  const double right = moment_integral(500, 1000, Integrand::crit2(), p).value;
  CHECK(std::abs(whole - (left + right)) <= 2 * p.rel_tol * whole);
}

TEST_CASE("J(1000) matches the binary128 reference within its error estimate") {
  PrecisionPolicy p;
  const auto rec = second_moment_J(1000.0, p);
  CHECK(std::abs(rec.value - frozen::kJ1000) <= rec.err_estimate);
}

TEST_CASE("J(1000) follows the classical mean value with the Euler constant term") {
  const double T = 1000.0;
  const double value = second_moment_J(T, PrecisionPolicy{}).value;
  const double main = T * std::log(T / (2 * std::numbers::pi)) + (2 * kEulerGamma - 1) * T;
  CHECK(std::abs(value / main - 1) < 0.03);
}

TEST_CASE("J is zero at zero and increasing") {
  PrecisionPolicy p;
  CHECK(second_moment_J(0.0, p).value == 0.0);
  CHECK(second_moment_J(2000.0, p).value > second_moment_J(1000.0, p).value);
}

TEST_CASE("fourth moment at zero, at 1000 and its leading term") {
  PrecisionPolicy p;
  CHECK(fourth_moment(0.0, p).value == 0.0);
  const auto rec = fourth_moment(1000.0, p);
  CHECK(std::abs(rec.value - frozen::kFourth1000) <= std::max(rec.err_estimate, 1e-9 * rec.value));
  const double T = 5000.0;
  const double lead = std::pow(std::log(T), 4) * T / kTwoPiSq;
  const double ratio = fourth_moment(T, p).value / lead;
  CHECK(ratio > 0.5);
  CHECK(ratio < 2.0);
}

TEST_CASE("sigma-line moment approaches zeta(2 sigma) T") {
  PrecisionPolicy p;
  const double T = 2000.0;
  const double v = moment_integral(1.0, T, Integrand::sigma2(1.0), p).value;
  CHECK(std::abs(v / (std::numbers::pi * std::numbers::pi / 6 * T) - 1) < 0.05);
}

TEST_CASE("sigma2 rejects sigma below 1/2 + epsilon") {
  PrecisionPolicy p;
  CHECK_THROWS_AS(moment_integral(1.0, 10.0, Integrand::sigma2(0.52), p), DomainError);
}

TEST_CASE("s1 moment needs a zero table that covers the interval") {
  PrecisionPolicy p;
  CHECK_THROWS(moment_integral(0.0, 50.0, Integrand::s1_moment(1), p, nullptr));
  const ZeroTable& table = shared_table(100.0);
  CHECK_THROWS_AS(moment_integral(0.0, table.upper_bound() + 10, Integrand::s1_moment(1), p, &table),
                  CoverageError);
}

TEST_CASE("panel partition respects the width cap and breakpoints") {
  const std::vector<double> breaks{14.134725141734453, 21.022039638771457};
  const auto edges = panel_edges(0.0, 30.0, breaks);
  REQUIRE(edges.front() == 0.0);
  REQUIRE(edges.back() == 30.0);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    CHECK(edges[i] > edges[i - 1]);
    CHECK(edges[i] - edges[i - 1] <= panel_width(edges[i - 1]) + 1e-12);
  }
  for (double b : breaks) CHECK(std::find(edges.begin(), edges.end(), b) != edges.end());
}

TEST_CASE("the sum does not depend on the number of workers") {
  PrecisionPolicy p;
  QuadratureOptions one, four;
  four.workers = 4;
  const auto a = moment_integral(100, 900, Integrand::crit4(), p, nullptr, one);
  const auto b = moment_integral(100, 900, Integrand::crit4(), p, nullptr, four);
  CHECK(a.value == b.value);
  CHECK(a.err_estimate == b.err_estimate);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("running moments are bit-identical to direct integrals") {
  PrecisionPolicy p;
  RunningMoment run(250.0, Integrand::crit2(), p);
  for (double u : {260.0, 400.5, 333.3, 1200.0}) {
    const auto direct = moment_integral(250.0, u, Integrand::crit2(), p);
    const auto cum = run.record_to(u);
    CHECK(cum.value == direct.value);
    CHECK(cum.err_estimate == direct.err_estimate);
  }
}

TEST_CASE("prefill from zero matches direct integrals bit for bit") {
  MemoryMomentStore store;
  LabContext ctx;
  ctx.store = &store;
  prefill_from_zero(Integrand::crit4(), {700.0, 150.0, 420.0}, ctx);
  for (double u : {150.0, 420.0, 700.0}) {
    const auto cached = store.load(Integrand::crit4(), 0.0, u, ctx.policy);
    REQUIRE(cached.has_value());
    CHECK(cached->value == moment_integral(0.0, u, Integrand::crit4(), ctx.policy).value);
  }
}

TEST_CASE("moment() serves repeated requests from the store") {
  MemoryMomentStore store;
  LabContext ctx;
  ctx.store = &store;
  const auto first = moment(10.0, 300.0, Integrand::crit2(), ctx);
  CHECK(store.load(Integrand::crit2(), 10.0, 300.0, ctx.policy).has_value());
  const auto second = moment(10.0, 300.0, Integrand::crit2(), ctx);
  CHECK(first.value == second.value);
  PrecisionPolicy looser = ctx.policy;
  looser.rel_tol = 1e-6;
  CHECK_FALSE(store.load(Integrand::crit2(), 10.0, 300.0, looser).has_value());
}

TEST_CASE("an unreachable tolerance exhausts the panel budget") {
  PrecisionPolicy p;
  p.rel_tol = 1e-16;
  p.abs_tol = 1e-300;
  p.max_panel_depth = 1;
  CHECK_THROWS_AS(moment_integral(0.0, 2000.0, Integrand::crit4(), p), BudgetExceeded);
}

TEST_CASE("invalid limits are rejected") {
  PrecisionPolicy p;
  CHECK_THROWS_AS(moment_integral(10.0, 5.0, Integrand::crit2(), p), DomainError);
  CHECK_THROWS_AS(moment_integral(-1.0, 5.0, Integrand::crit2(), p), DomainError);
}

}  // TEST_SUITE
