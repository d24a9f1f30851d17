#include <doctest.h>

#include <cmath>
#include <string>

#include "halab/common.hpp"
#include "halab/powerlaw.hpp"

using namespace halab;

TEST_CASE("density branches join smoothly") {
  double delta = 0.25;
  // Tight straddles of the two evaluation switches: any branch mismatch
  // dwarfs the function's own change over a 2e-9 step.
  double lo = power_tail_density(1e-4 - 1e-9, delta);
  double hi = power_tail_density(1e-4 + 1e-9, delta);
  CHECK(lo == doctest::Approx(hi).epsilon(1e-6));
  lo = power_tail_density(-1e-4 - 1e-9, delta);
  hi = power_tail_density(-1e-4 + 1e-9, delta);
  CHECK(lo == doctest::Approx(hi).epsilon(1e-6));
  lo = power_tail_density(30.0 - 1e-9, delta);
  hi = power_tail_density(30.0 + 1e-9, delta);
  CHECK(lo == doctest::Approx(hi).epsilon(1e-8));
  // At the origin the quotient tends to 1/2.
  CHECK(power_tail_density(0.0, delta) == doctest::Approx(0.5).epsilon(1e-8));
  // Far out the density never overflows.
  CHECK(std::isfinite(power_tail_density(600.0, delta)));
  CHECK(power_tail_density(-400.0, delta) >= 0.0);
}

TEST_CASE("profile value at one matches an independent quadrature") {
  // G(1) for delta = 0.3, frozen from a high-resolution reference run of the
  // direct t-axis integral: 9.571755182.
  PowerTailProfile profile(0.3, 5.0);
  CHECK(profile.at_log(0.0) == doctest::Approx(9.571755182).epsilon(1e-6));
  // The classical lower bound G(1) >= 1/delta^2 - 1/delta.
  CHECK(profile.at_log(0.0) >= 1.0 / 0.09 - 1.0 / 0.3);
}

TEST_CASE("profile is monotone and saturates") {
  PowerTailProfile profile(0.2, 40.0);
  double prev = 0.0;
  for (double v = -30.0; v <= 40.0; v += 0.5) {
    double cur = profile.at_log(v);
    CHECK(cur >= prev - 1e-15);
    prev = cur;
  }
  // Below the internal cutoff the profile reports zero mass.
  CHECK(profile.at_log(-1000.0) == 0.0);
  // Queries beyond the table end clamp to the last value.
  CHECK(profile.at_log(1e9) == doctest::Approx(profile.at_log(40.0)).epsilon(1e-12));
}

TEST_CASE("profile parameters are validated") {
  CHECK_THROWS_AS(PowerTailProfile(0.0, 10.0), ParameterError);
  CHECK_THROWS_AS(PowerTailProfile(1.0, 10.0), ParameterError);
  CHECK_THROWS_AS(PowerTailProfile(0.3, 10.0, 10), ParameterError);
  CHECK_THROWS_AS(PowerTailProfile(0.3, -1000.0), ParameterError);
}

TEST_CASE("sharpness quadrature reproduces frozen reference values") {
  auto s = power_sharpness(1.5, 0.2, 14);
  CHECK(s.ratio == doctest::Approx(22.6594711324).epsilon(1e-6));
  // The data norm has the closed form (1 - 4^{-depth})/delta.
  double exact = (1.0 - std::pow(4.0, -14.0)) / 0.2;
  CHECK(s.f_norm_p == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("data norm error shrinks under refinement") {
  for (double delta : {0.4, 0.1}) {
    double e14 = std::fabs(power_sharpness(1.5, delta, 14).f_norm_p -
                           (1.0 - std::pow(4.0, -14.0)) / delta);
    double e15 = std::fabs(power_sharpness(1.5, delta, 15).f_norm_p -
                           (1.0 - std::pow(4.0, -15.0)) / delta);
    CHECK(e15 < e14);
  }
}

TEST_CASE("ratio clears the quadratic blowup and scales like delta^{-2}") {
  double r4 = power_sharpness(1.5, 0.4, 14).ratio;
  double r2 = power_sharpness(1.5, 0.2, 14).ratio;
  double r1 = power_sharpness(1.5, 0.1, 14).ratio;
  CHECK(r4 >= 0.4 / (0.4 * 0.4));
  CHECK(r2 >= 0.4 / (0.2 * 0.2));
  CHECK(r1 >= 0.4 / (0.1 * 0.1));
  // Halving delta roughly quadruples the ratio.
  CHECK(r2 / r4 == doctest::Approx(4.0).epsilon(0.2));
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("coarse log grids are rejected with guidance") {
  // Small delta needs a fine log axis: at depth 2 the spacing exceeds
  // delta/2 and the error must say which depth suffices.
  try {
    power_sharpness(1.5, 0.05, 2);
    FAIL("expected a resolution error");
  } catch (const ResolutionError& e) {
    std::string msg = e.what();
    CHECK(msg.find("increase depth to at least") != std::string::npos);
  }
}

TEST_CASE("sharpness parameters are validated") {
  CHECK_THROWS_AS(power_sharpness(1.0, 0.2, 14), ParameterError);
  CHECK_THROWS_AS(power_sharpness(1.5, 0.5, 14), ParameterError);
  CHECK_THROWS_AS(power_sharpness(1.5, 0.0, 14), ParameterError);
  CHECK_THROWS_AS(power_sharpness(1.5, 0.2, 1), ParameterError);
  CHECK_THROWS_AS(power_sharpness(1.5, 0.2, 25), ParameterError);
}
