#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "nkcloud/evolvability.hpp"
#include "nkcloud/landscape.hpp"

using namespace nkcloud;

namespace {

ShapeRow row(double phi, double min, double mean, double max, std::uint64_t count = 1) {
  return {phi, min, mean, max, 0.0, count};
}

}  // namespace

TEST_CASE("thresholds: symmetric sign change interpolates to the midpoint") {
  const CloudShape sh{{row(0.4, 0.30, 0.45, 0.6), row(0.5, 0.30, 0.45, 0.6)}};
  const auto t = thresholds(sh);
  REQUIRE(t.beta);
  CHECK(*t.beta == doctest::Approx(0.45).epsilon(1e-12));
  CHECK_FALSE(t.alpha);  // min stays below the diagonal
  CHECK_FALSE(t.gamma);  // max stays above it
}

TEST_CASE("thresholds: curve entirely above the diagonal has no threshold") {
  const CloudShape sh{{row(0.2, 0.3, 0.4, 0.5), row(0.3, 0.35, 0.45, 0.55), row(0.4, 0.45, 0.5, 0.6)}};
  const auto t = thresholds(sh);
  CHECK_FALSE(t.alpha);
  CHECK_FALSE(t.beta);
  CHECK_FALSE(t.gamma);
  CHECK(t.warnings.empty());
}

TEST_CASE("thresholds: fewer than two rows is an error") {
  CHECK_THROWS_AS(thresholds(CloudShape{{row(0.5, 0.4, 0.5, 0.6)}}), std::invalid_argument);
  CHECK_THROWS_AS(thresholds(CloudShape{}), std::invalid_argument);
}

TEST_CASE("thresholds: a row on the diagonal is the crossing") {
  const CloudShape sh{{row(0.3, 0.2, 0.35, 0.5), row(0.4, 0.2, 0.4, 0.5), row(0.5, 0.2, 0.45, 0.5)}};
  const auto t = thresholds(sh);
  REQUIRE(t.beta);
  CHECK(*t.beta == doctest::Approx(0.4));
  CHECK(t.crossings[1] == 1);
}

TEST_CASE("thresholds: multiple crossings warn and report the first") {
  const CloudShape sh{{row(0.1, 0, 0.2, 1), row(0.2, 0, 0.1, 1), row(0.3, 0, 0.4, 1), row(0.4, 0, 0.3, 1)}};
  const auto t = thresholds(sh);
  REQUIRE(t.beta);
  CHECK(*t.beta == doctest::Approx(0.15));
  CHECK(t.crossings[1] == 3);
  REQUIRE(t.warnings.size() == 1);
  CHECK(t.warnings[0].find("beta") != std::string::npos);
}

TEST_CASE("thresholds ordering under unique crossings (synthetic shapes)") {
  const Philox4x32 prf(2023);
  int checked = 0;
  for (std::uint32_t trial = 0; trial < 2000; ++trial) {
    auto u = [&](std::uint32_t slot) {
      const auto r = prf({trial, slot, 0, 0});
      return to_unit_interval(r[0], r[1]);
    };
    // Curves below slope 1 that start above the diagonal, with random spreads.
    const double slope = 0.9 * u(0);
    const double base = 0.5 * (1 - slope) + 0.2 * (u(1) - 0.5);
    CloudShape sh;
    for (int i = 0; i < 40; ++i) {
      const double phi = 0.2 + 0.015 * i;
      const double mean = slope * phi + base;
      const double lo = mean - 0.1 * u(10 + static_cast<std::uint32_t>(i));
      const double hi = mean + 0.1 * u(100 + static_cast<std::uint32_t>(i));
      sh.rows.push_back(row(phi, lo, mean, hi));
    }
    const auto t = thresholds(sh);
    if (t.alpha && t.beta && t.gamma && t.unique_crossings()) {
      ++checked;
      CHECK(*t.alpha <= *t.beta);
      CHECK(*t.beta <= *t.gamma);
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("classify_regime follows the four cases with <= boundaries") {
  EvolvabilityThresholds t;
  t.alpha = 0.3;
  t.beta = 0.5;
  t.gamma = 0.7;
  CHECK(classify_regime(0.2, t) == Regime::always_advantageous);
  CHECK(classify_regime(0.3, t) == Regime::always_advantageous);
  CHECK(classify_regime(0.4, t) == Regime::mean_advantageous);
  CHECK(classify_regime(0.5, t) == Regime::mean_advantageous);
  CHECK(classify_regime(0.6, t) == Regime::mean_deleterious);
  CHECK(classify_regime(0.7, t) == Regime::mean_deleterious);
  CHECK(classify_regime(0.71, t) == Regime::always_deleterious);
}

TEST_CASE("classify_regime names the missing threshold") {
  EvolvabilityThresholds t;
  t.alpha = 0.3;
  t.gamma = 0.7;
  CHECK_THROWS_WITH_AS(classify_regime(0.4, t), doctest::Contains("beta"), std::invalid_argument);
  t.beta = 0.5;
  t.gamma.reset();
  CHECK_THROWS_WITH_AS(classify_regime(0.4, t), doctest::Contains("gamma"), std::invalid_argument);
}

TEST_CASE("classify_regime is monotone in phi") {
  const Philox4x32 prf(8);
  for (std::uint32_t trial = 0; trial < 100; ++trial) {
    double v[3];
    for (std::uint32_t i = 0; i < 3; ++i) {
      const auto r = prf({trial, i, 0, 0});
      v[i] = to_unit_interval(r[0], r[1]);
    }
    std::sort(v, v + 3);
    EvolvabilityThresholds t;
    t.alpha = v[0];
    t.beta = v[1];
    t.gamma = v[2];
    int last = -1;
    for (int i = 0; i <= 1000; ++i) {
      const int regime = static_cast<int>(classify_regime(i / 1000.0, t));
      CHECK(regime >= last);
      last = regime;
    }
  }
}

TEST_CASE("weinberger_line at N=25, K=20 and the extremes") {
  const Line wide = weinberger_line(25, 20);
  CHECK(wide.slope == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(wide.intercept == doctest::Approx(0.42).epsilon(1e-12));

  const Line rugged = weinberger_line(12, 11);
  CHECK(rugged.slope == doctest::Approx(0.0));
  CHECK(rugged.intercept == doctest::Approx(0.5));

  const Line smooth = weinberger_line(8, 0);
  CHECK(smooth.slope == doctest::Approx(1.0 - 1.0 / 8));
  CHECK(smooth.intercept == doctest::Approx(0.5 / 8));

  CHECK(weinberger_line(16, 4).slope == doctest::Approx(0.6875));
  CHECK_THROWS_AS(weinberger_line(5, 5), std::invalid_argument);
  CHECK_THROWS_AS(weinberger_line(5, -1), std::invalid_argument);
}

TEST_CASE("fit_mean_line recovers an exact line") {
  CloudShape sh;
  for (int i = 0; i < 30; ++i) {
    const double phi = 0.3 + 0.01 * i;
    sh.rows.push_back(row(phi, 0, 0.16 * phi + 0.42, 1, static_cast<std::uint64_t>(1 + i % 7)));
  }
  const auto fit = fit_mean_line(sh);
  CHECK(fit.slope == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.42).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit_mean_line weights rows by count") {
  // Two heavy rows on y = x and one light outlier.
  const CloudShape sh{{row(0.2, 0, 0.2, 1, 1000), row(0.4, 0, 0.4, 1, 1000), row(0.6, 0, 0.0, 1, 1)}};
  const auto fit = fit_mean_line(sh);
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(0.01));
  CHECK(fit.r_squared >= 0.0);
  CHECK(fit.r_squared <= 1.0);
}

TEST_CASE("fit_mean_line rejects degenerate input") {
  CHECK_THROWS_AS(fit_mean_line(CloudShape{{row(0.5, 0, 0.5, 1)}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_mean_line(CloudShape{{row(0.5, 0, 0.5, 1), row(0.5, 0, 0.6, 1)}}), std::invalid_argument);
}

TEST_CASE("exhaustive N=10, K=4 ghc cloud: alpha <= beta <= gamma") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const NkLandscape land(10, 4, seed);
    const auto t = thresholds(shape(build_cloud(land, enumerate(land), BorderingRule::ghc_best)));
    if (t.alpha && t.beta && t.gamma) {
      CHECK(*t.alpha <= *t.beta);
      CHECK(*t.beta <= *t.gamma);
    }
  }
}

TEST_CASE("K=0 whole cloud follows the neighborhood-average law exactly") {
  // With K=0 a flip of locus i swaps c_i between its two table entries, so the
  // neighborhood mean is f (1 - 2/N) + S / N^2 with S the sum of all entries.
  for (int n : {10, 12, 16}) {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      const NkLandscape land(n, 0, seed);
      double s = 0;
      for (int i = 0; i < n; ++i) s += land.contribution(i, 0) + land.contribution(i, 1);
      const auto fit = fit_mean_line(shape(build_cloud(land, enumerate(land), BorderingRule::whole_neighborhood)));
      CHECK(std::abs(fit.slope - (1.0 - 2.0 / n)) <= 0.01);
      CHECK(std::abs(fit.intercept - s / (n * n)) <= 0.01);
    }
  }
}

TEST_CASE("K=N-1 whole cloud has a flat mean line") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const NkLandscape land(12, 11, seed);
    const auto fit = fit_mean_line(shape(build_cloud(land, enumerate(land), BorderingRule::whole_neighborhood)));
    CHECK(std::abs(fit.slope) <= 0.02);
    CHECK(std::abs(fit.intercept - 0.5) <= 0.02);
  }
}
