#include <doctest.h>

#include <cmath>

#include "halab/amplitude.hpp"
#include "halab/kernel.hpp"

using namespace halab;

TEST_CASE("preset directions evaluate as declared") {
  auto k1 = SphericalKernel::preset("const1", 1);
  CHECK(k1.at_direction(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(k1.at_direction(-1.0, 0.0) == doctest::Approx(1.0));

  auto ks = SphericalKernel::preset("sign", 1);
  CHECK(ks.at_direction(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(ks.at_direction(-1.0, 0.0) == doctest::Approx(-1.0));

  auto kc = SphericalKernel::preset("cos2theta", 2);
  CHECK(kc.at_direction(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(kc.at_direction(0.0, 1.0) == doctest::Approx(-1.0));
  double r = std::sqrt(0.5);
  CHECK(kc.at_direction(r, r) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("first moments vanish for the admissible presets") {
  auto k1 = SphericalKernel::preset("const1", 1);
  auto m1 = check_vanishing_moment(k1);
  REQUIRE(m1.size() == 1);
  CHECK(std::fabs(m1[0]) <= 1e-12);

  auto k2 = SphericalKernel::preset("const1", 2);
  auto m2 = check_vanishing_moment(k2);
  REQUIRE(m2.size() == 2);
  CHECK(std::fabs(m2[0]) <= 1e-10);
  CHECK(std::fabs(m2[1]) <= 1e-10);

  auto kc = SphericalKernel::preset("cos2theta", 2);
  auto mc = check_vanishing_moment(kc);
  CHECK(std::fabs(mc[0]) <= 1e-10);
  CHECK(std::fabs(mc[1]) <= 1e-10);
}

TEST_CASE("an odd first harmonic shows a nonzero moment") {
  // Omega(theta) = cos(theta) integrates against cos to pi: the residual
  // check must flag it rather than report zero.
  auto k = SphericalKernel::preset("costheta", 2);
  auto m = check_vanishing_moment(k);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == doctest::Approx(M_PI).epsilon(1e-6));
  CHECK(std::fabs(m[1]) <= 1e-10);
}

TEST_CASE("continuity modulus of the two-point sphere") {
  auto k1 = SphericalKernel::preset("const1", 1);
  CHECK(continuity_modulus(k1, 0.5) == 0.0);
  CHECK(continuity_modulus(k1, 3.0) == doctest::Approx(0.0));

  auto ks = SphericalKernel::preset("sign", 1);
  // Displacements up to the diameter cannot swap the two poles; anything
  // beyond it can.
  CHECK(continuity_modulus(ks, 1.9) == 0.0);
  CHECK(continuity_modulus(ks, 2.0) == 0.0);
  CHECK(continuity_modulus(ks, 2.5) == doctest::Approx(2.0));
}

TEST_CASE("continuity modulus of a Lipschitz angle profile is linear in t") {
  // cos(theta) rotated by phi differs by at most |phi| = t in sup norm, with
  // equality approached as the grid refines.
  auto k = SphericalKernel::preset("costheta", 2);
  for (double t : {0.1, 0.01}) {
    double w = continuity_modulus(k, t);
    CHECK(w == doctest::Approx(t).epsilon(1e-4));
  }
  // Monotone in t.
  CHECK(continuity_modulus(k, 0.2) >= continuity_modulus(k, 0.1) - 1e-12);
}

TEST_CASE("log-weighted smoothness integral converges for smooth profiles") {
  // For omega_inf(t) ~ t the integrand t(1+log(1/t))/t integrates over (0,1)
  // to 1 + 1 = 2; the tail below any small t_min is negligible.
  auto k = SphericalKernel::preset("costheta", 2);
  auto r = dini_log_integral(k, 1e-6);
  CHECK(r.value == doctest::Approx(2.0).epsilon(0.01));
  // Convergence signal: the last decade contributes a vanishing share.
  CHECK(r.last_decade <= 1e-4 * r.value);

  // The constant profile has zero modulus and zero integral.
  auto kc = SphericalKernel::preset("const1", 2);
  auto rc = dini_log_integral(kc, 1e-6);
  CHECK(rc.value == doctest::Approx(0.0));
}

TEST_CASE("amplitude gradients agree with finite differences") {
  for (int n : {1, 2}) {
    auto a = Amplitude::xlogx();
    double res = gradient_consistency(a, n, 1e-5, 42);
    CHECK(res <= 1e-6);
    auto aff = Amplitude::affine_map(2.0, n == 2 ? -1.0 : 0.0);
    CHECK(gradient_consistency(aff, n, 1e-5, 43) <= 1e-9);
  }
}

TEST_CASE("amplitude presets parse") {
  auto a = Amplitude::preset("xlogx");
  CHECK(a.name == "xlogx");
  CHECK(!a.affine);
  CHECK(a.value(2.0, 0.0) == doctest::Approx(2.0 * std::log(2.0)));

  auto b = Amplitude::preset("affine:3");
  CHECK(b.affine);
  CHECK(b.value(2.0, 0.0) == doctest::Approx(6.0));
  CHECK(b.gradient(5.0, 0.0)[0] == doctest::Approx(3.0));
}

TEST_CASE("mean-gradient comparison bounds the increment") {
  // In one dimension lhs <= 2 rhs: the segment from y to x is half the cube
  // centered at x of side 2|x-y|, and Jensen lifts means to L^q means.
  auto a = Amplitude::xlogx();
  for (double y : {0.3, 0.9, 1.7}) {
    auto pair = gradient_mean_bound(a, 1, {1.0, 0.0}, {y, 0.0}, 1.0);
    CHECK(pair.first <= 2.0 * pair.second * (1.0 + 1e-6));
    // Larger q only increases the mean.
    auto pair2 = gradient_mean_bound(a, 1, {1.0, 0.0}, {y, 0.0}, 2.0);
    CHECK(pair2.second >= pair.second * (1.0 - 1e-12));
  }

  // Affine amplitudes: the increment is the constant gradient dotted with
  // x - y, so lhs <= sqrt(n) rhs with equality in one dimension.
  auto aff = Amplitude::affine_map(1.5, -0.5);
  auto p1 = gradient_mean_bound(aff, 1, {0.7, 0.0}, {-0.4, 0.0}, 2.0);
  CHECK(p1.first == doctest::Approx(p1.second).epsilon(1e-9));
  auto p2 = gradient_mean_bound(aff, 2, {0.7, 0.3}, {-0.4, 0.9}, 2.0);
  CHECK(p2.first <= std::sqrt(2.0) * p2.second * (1.0 + 1e-9));
}
