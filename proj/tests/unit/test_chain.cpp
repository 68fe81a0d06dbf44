#include <cmath>

#include "doctest.h"
#include "frozen.hpp"
#include "shared.hpp"
#include "zetalab/chain.hpp"
#include "zetalab/functionals.hpp"

using namespace zetalab;
using zetalab::testing::shared_context;
using zetalab::testing::shared_table;

namespace {

const std::array<double, 5> kA{Constants::a0(), frozen::kFitA[0], frozen::kFitA[1],
                               frozen::kFitA[2], frozen::kFitA[3]};

LabContext calibrated() {
  LabContext ctx = shared_context();
  ctx.constants.cbar[1] = 0.747009130603581;
  return ctx;
}

const ZeroTable& chain_table() { return shared_table(zetalab::testing::kTableTop); }

}  // namespace

TEST_SUITE("chain") {

TEST_CASE("chain at x = 1 - c on the standard grid") {
  const LabContext ctx = calibrated();
  const std::vector<double> taus{1e3, 3e3, 1e4};
  const auto rep = evaluate_chain(1 - kEulerGamma, 1.0, 1, taus, LadderMode::integral, &kA,
                                  &chain_table(), ctx);
  REQUIRE(rep.complete_members() == kChainMembers);
  for (std::size_t j = 0; j < taus.size(); ++j) CHECK(rep.ratios[0][j] == 1.0);
  for (int m = 0; m < kChainMembers; ++m) {
    CHECK(rep.ratios[m][2] > 0.5);
    CHECK(rep.ratios[m][2] < 2.0);
    for (std::size_t j = 0; j < taus.size(); ++j) CHECK(rep.members[m][j] > 0.0);
  }
  // divisor sum, log-gamma ratio and sigma-line moment
  for (int m : {2, 4, 5}) {
    CAPTURE(m);
    CHECK(std::abs(rep.ratios[m][1] - 1) < std::abs(rep.ratios[m][0] - 1));
    CHECK(std::abs(rep.ratios[m][2] - 1) < std::abs(rep.ratios[m][1] - 1));
  }
}

TEST_CASE("a failing member marks its cells only") {
  LabContext ctx = shared_context();
  const auto rep = evaluate_chain(1.0, 1.0, 1, {1e3}, LadderMode::asymptotic, nullptr, nullptr, ctx);
  CHECK(rep.errors[1][0].find("MissingConstant") == 0);
  CHECK(rep.errors[6][0].find("MissingConstant") == 0);
  CHECK(std::isnan(rep.members[1][0]));
  CHECK(rep.errors[0][0].empty());
  CHECK(rep.errors[2][0].empty());
  CHECK(rep.complete_members() == kChainMembers - 2);
}

TEST_CASE("distinctness of the basic state") {
  const LabContext& ctx = shared_context();
  const auto same = distinctness_experiment(1.0, 1.0, {1e3, 1e4}, LadderMode::asymptotic, ctx);
  for (double r : same.ratios) CHECK(r == 1.0);
  const auto two = distinctness_experiment(1.0, 2.0, {1e4}, LadderMode::asymptotic, ctx);
  CHECK(std::abs(two.ratios[0] / 2 - 1) < 0.1);
  const auto mid = distinctness_experiment(1.0, 1.5, {1e3, 3e3, 1e4}, LadderMode::asymptotic, ctx);
  REQUIRE(mid.has_fit);
  CHECK(mid.fit.separated_from_one);
  CHECK_THROWS(distinctness_experiment(0.5, 1.0, {1e3}, LadderMode::asymptotic, ctx));
}

TEST_CASE("family comparison") {
  const LabContext ctx = calibrated();
  const auto same = chain_family_compare({1.0, 1.0}, 1.0, 1, 1e3, LadderMode::asymptotic, &kA,
                                         &chain_table(), ctx);
  CHECK_FALSE(same.separated[0][1]);
  CHECK_FALSE(same.separated[1][0]);
  const auto fam = chain_family_compare({1.0, 1.5, 2.0}, 1.0, 1, 3e3, LadderMode::asymptotic, &kA,
                                        &chain_table(), ctx);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK_FALSE(fam.separated[i][i]);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(fam.separated[i][j] == fam.separated[j][i]);
      CHECK(fam.min_log_gap[i][j] == fam.min_log_gap[j][i]);
      if (i != j) CHECK(fam.separated[i][j]);
    }
  }
}

}  // TEST_SUITE
