#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "clo/smoothing.hpp"

using namespace clo;

TEST_CASE("window fitting centers and shifts into the support") {
  const Interval unit{0.0, 1.0};

  auto w = fit_window(0.25, 2.0, unit);
  REQUIRE(w.lo == 0.0);
  REQUIRE(w.hi == 0.5);

  w = fit_window(0.9, 2.0, unit);
  REQUIRE(w.lo == 0.5);
  REQUIRE(w.hi == 1.0);

  // phi = 1/|support| leaves no freedom: the window is the support.
  w = fit_window(0.7, 1.0, unit);
  REQUIRE(w.lo == 0.0);
  REQUIRE(w.hi == 1.0);
  w = fit_window(-0.3, 0.5, {-1.0, 1.0});
  REQUIRE(w.lo == -1.0);
  REQUIRE(w.hi == 1.0);

  REQUIRE_THROWS_AS(fit_window(0.5, 0.9, unit), std::invalid_argument);
  REQUIRE_THROWS_AS(fit_window(1.5, 2.0, unit), std::invalid_argument);
}

TEST_CASE("density height never exceeds phi") {
  PhiDensity d{DensityKind::uniform_window, {0.0, 1.0}, 0.3, 4.0};
  REQUIRE(d.max_density() == 4.0);
  REQUIRE(d.window().width() == 0.25);

  PhiDensity full{DensityKind::uniform_full, {-1.0, 1.0}, 0.0, 4.0};
  REQUIRE(full.max_density() == 0.5);
  REQUIRE(full.window().width() == 2.0);
}

TEST_CASE("sampled coordinates land in their window with the right mean") {
  PhiDensity d{DensityKind::uniform_window, {0.0, 1.0}, 0.8, 2.0};
  SmoothedCostModel m{{d}, 2024};
  const Interval w = d.window();

  const int n = 100000;
  double sum = 0.0;
  for (int t = 0; t < n; ++t) {
    const double x = sample_costs(m, t).coeffs[0];
    REQUIRE(x >= w.lo);
    REQUIRE(x < w.hi);
    sum += x;
  }
  const double mean = sum / n;
  const double se = (w.width() / std::sqrt(12.0)) / std::sqrt(double(n));
  REQUIRE(std::fabs(mean - d.mean()) <= 3.0 * se);
}

TEST_CASE("same seed same draw, distinct replicas distinct draws") {
  PhiDensity d{DensityKind::uniform_window, {0.0, 1.0}, 0.5, 1.0};
  SmoothedCostModel m{{d, d, d}, 99};
  REQUIRE(sample_costs(m, 5).coeffs == sample_costs(m, 5).coeffs);
  REQUIRE(sample_costs(m, 5).coeffs != sample_costs(m, 6).coeffs);
}

TEST_CASE("interval-hit probability obeys the analytic bound") {
  // One uniform [0,1] coordinate, xi = (1), eps = 0.1: the probability is
  // exactly 0.1 and the bound is min(1, sqrt(2)) * 0.1 * 1 = 0.1.
  PhiDensity d{DensityKind::uniform_full, {0.0, 1.0}, 0.5, 1.0};
  SmoothedCostModel m{{d}, 7};
  auto r = interval_hit_estimate({1}, 0.1, m, 100000);
  REQUIRE(r.bound == Catch::Approx(0.1));
  REQUIRE(r.p_hat == Catch::Approx(0.1).margin(0.01));
  REQUIRE(r.pass);
}

TEST_CASE("strong bound implies the integral weak bound analytically") {
  // For integer xi != 0 we have max|xi| >= 1, so
  // min(1/max|xi|, sqrt(2)/||xi||) * eps * phi <= eps * phi.
  for (long long a = -3; a <= 3; ++a)
    for (long long b = -3; b <= 3; ++b) {
      if (a == 0 && b == 0) continue;
      const double linf = std::max(std::llabs(a), std::llabs(b));
      const double l2 = std::sqrt(double(a * a + b * b));
      REQUIRE(std::min(1.0 / linf, std::sqrt(2.0) / l2) <= 1.0);
    }
}

TEST_CASE("model validation rejects under-spread densities") {
  PhiDensity bad{DensityKind::uniform_window, {0.0, 0.5}, 0.2, 1.0};
  SmoothedCostModel m{{bad}, 0};
  REQUIRE_THROWS_AS(validate(m), std::invalid_argument);
}
