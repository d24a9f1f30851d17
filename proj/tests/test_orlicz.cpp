#include <doctest.h>

#include <cmath>
#include <vector>

#include "halab/grid.hpp"
#include "halab/orlicz.hpp"
#include "halab/util.hpp"

using namespace halab;

namespace {

Box unit_line() {
  Box b;
  b.n = 1;
  b.lo = {0.0, 0.0};
  b.side = 1.0;
  return b;
}

// Mean of Phi(|v|/lambda), the quantity the norm drives to one.
double phi_mean(const std::vector<double>& v, double lambda, double beta) {
  double s = 0.0;
  for (double x : v) s += young_phi(std::fabs(x) / lambda, beta);
  return s / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("young function basics") {
  CHECK(young_phi(0.0, 1.0) == 0.0);
  CHECK(young_phi(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(young_phi(1.0, 1.0) == doctest::Approx(std::log(2.0)));
  CHECK(young_phi(3.0, 2.0) == doctest::Approx(3.0 * std::pow(std::log(4.0), 2.0)));
}

TEST_CASE("norm of a constant solves t log(1+t) = 1") {
  // For f = c the defining equation is Phi(c/lambda) = 1; with beta = 1 the
  // root of t log(1+t) = 1 is t* = 1.239977887656550, so lambda = c/t*.
  OrliczParams prm;
  prm.beta = 1.0;
  double tstar = 1.239977887656550;
  CHECK(tstar * std::log1p(tstar) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> ones(16, 1.0);
  double lam = luxemburg_norm(ones, prm);
  CHECK(lam == doctest::Approx(1.0 / tstar).epsilon(1e-8));
  CHECK(lam == doctest::Approx(0.806465994236327).epsilon(1e-8));

  std::vector<double> halves(7, 0.5);
  CHECK(luxemburg_norm(halves, prm) == doctest::Approx(0.5 / tstar).epsilon(1e-8));
}

TEST_CASE("two-cell example pins the root solver") {
  OrliczParams prm;
  prm.beta = 1.0;
  std::vector<double> v{2.0, 0.0};
  double lam = luxemburg_norm(v, prm);
  CHECK(lam == doctest::Approx(1.060090319893210).epsilon(1e-8));
  // The defining functional sits at one up to solver tolerance.
  CHECK(phi_mean(v, lam, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("beta zero reduces to the plain mean") {
  Rng rng(5);
  OrliczParams prm;
  prm.beta = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(rng.uniform_int(1, 40)));
    double msum = 0.0;
    for (auto& x : v) {
      x = rng.uniform(-4.0, 4.0);
      msum += std::fabs(x);
    }
    double want = msum / static_cast<double>(v.size());
    CHECK(luxemburg_norm(v, prm) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("norm is positively homogeneous") {
  Rng rng(9);
  OrliczParams prm;
  prm.beta = 1.0;
  std::vector<double> v(25);
  for (auto& x : v) x = rng.uniform(-2.0, 2.0);
  double base = luxemburg_norm(v, prm);
  for (double c : {0.125, 3.0, 40.0}) {
    std::vector<double> w = v;
    for (auto& x : w) x *= c;
    CHECK(luxemburg_norm(w, prm) == doctest::Approx(c * base).epsilon(1e-8));
  }
}

TEST_CASE("constant inputs match a scalar root for every beta") {
  // For f == c the norm is c / t_beta with t_beta the root of
  // t log^beta(1+t) = 1, found here by plain bisection.
  for (double beta : {0.5, 1.0, 2.0}) {
    double lo = 1.0, hi = 3.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (mid * std::pow(std::log1p(mid), beta) < 1.0 ? lo : hi) = mid;
    }
    double troot = 0.5 * (lo + hi);
    OrliczParams prm;
    prm.beta = beta;
    std::vector<double> v(17, 2.5);
    CHECK(luxemburg_norm(v, prm) == doctest::Approx(2.5 / troot).epsilon(1e-8));
  }
}

TEST_CASE("defining functional stays within solver tolerance of one") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(rng.uniform_int(2, 60)));
    bool nonzero = false;
    for (auto& x : v) {
      x = rng.uniform01() < 0.3 ? 0.0 : rng.uniform(-6.0, 6.0);
      nonzero = nonzero || x != 0.0;
    }
    if (!nonzero) v[0] = 1.0;
    OrliczParams prm;
    prm.beta = rng.uniform(0.0, 2.0);
    prm.tolerance = 1e-10;
    double lam = luxemburg_norm(v, prm);
    REQUIRE(lam > 0.0);
    double val = phi_mean(v, lam, prm.beta);
    CHECK(val <= 1.0 + 1e-6);
    // At 0.999 lambda the functional must exceed one: lambda is least.
    CHECK(phi_mean(v, lam * 0.999, prm.beta) > 1.0 - 1e-9);
  }
}

TEST_CASE("distributional bound for the localized norm") {
  // mean Phi(|f|/lambda) <= 1 at lambda = norm implies the superlevel bound
  // #{|f| > s} / #cells <= 1 / Phi(s/norm) for every s > 0.
  Rng rng(33);
  std::vector<double> v(200);
  for (auto& x : v) x = rng.uniform01() < 0.5 ? 0.0 : rng.uniform(0.0, 10.0);
  OrliczParams prm;
  prm.beta = 1.0;
  double lam = luxemburg_norm(v, prm);
  REQUIRE(lam > 0.0);
  for (double s : {0.5, 1.0, 2.0, 5.0, 8.0}) {
    std::size_t count = 0;
    for (double x : v)
      if (std::fabs(x) > s) ++count;
    double frac = static_cast<double>(count) / static_cast<double>(v.size());
    double bound = 1.0 / young_phi(s / lam, prm.beta);
    CHECK(frac <= bound + 1e-12);
  }
}

TEST_CASE("all-zero input has zero norm") {
  OrliczParams prm;
  std::vector<double> v(10, 0.0);
  CHECK(luxemburg_norm(v, prm) == 0.0);
  CHECK(exp_norm(v, prm) == 0.0);
}

TEST_CASE("exponential norm of a constant is c over log 2") {
  // mean exp(c/t) = 2 for constant input means t = c / log 2.
  OrliczParams prm;
  std::vector<double> v(12, 3.0);
  CHECK(exp_norm(v, prm) == doctest::Approx(3.0 / std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("exponential norm matches a hand-solved two-cell case") {
  // Cells {c, 0}: (exp(c/t) + 1) / 2 = 2 gives t = c / log 3.
  OrliczParams prm;
  std::vector<double> v{2.0, 0.0};
  CHECK(exp_norm(v, prm) == doctest::Approx(2.0 / std::log(3.0)).epsilon(1e-8));
}

TEST_CASE("grid overloads agree with the flat-vector core") {
  Box b = unit_line();
  ShiftedGridFamily fam(b, 4);
  Rng rng(41);
  std::vector<double> vals(16);
  for (auto& x : vals) x = rng.uniform(0.0, 4.0);
  auto f = GridFunction::from_values(b, 4, vals);

  auto q = fam.cube_at(0, 1, 4, 0);
  auto r = fam.cell_range(q);
  std::vector<double> slice;
  for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i) slice.push_back(f.value(i));

  OrliczParams prm;
  prm.beta = 1.0;
  CHECK(luxemburg_norm(f, r, 1.0) == doctest::Approx(luxemburg_norm(slice, prm)).epsilon(1e-12));
  CHECK(luxemburg_norm(fam, f, q, 1.0) ==
        doctest::Approx(luxemburg_norm(slice, prm)).epsilon(1e-12));
  CHECK(exp_norm(f, r) == doctest::Approx(exp_norm(slice, prm)).epsilon(1e-12));
  CHECK(exp_norm(fam, f, q) == doctest::Approx(exp_norm(slice, prm)).epsilon(1e-12));
}

TEST_CASE("generalized Holder inequality holds on random data") {
  Rng rng(55);
  Box b = unit_line();
  for (int trial = 0; trial < 100; ++trial) {
    int m = 5;
    std::vector<double> fv(32), hv(32);
    for (auto& x : fv) x = rng.uniform01() < 0.3 ? 0.0 : rng.uniform(-5.0, 5.0);
    for (auto& x : hv) x = rng.uniform(-2.0, 2.0);
    auto f = GridFunction::from_values(b, m, fv);
    auto h = GridFunction::from_values(b, m, hv);
    CellRange r = f.full_range();
    auto [lhs, rhs] = orlicz_holder_pair(f, h, r, 1.0);
    CHECK(lhs <= 2.0 * rhs + 1e-12);
  }
}
