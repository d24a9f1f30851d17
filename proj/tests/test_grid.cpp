#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "halab/grid.hpp"
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

Box square(double lo, double side) {
  Box b;
  b.n = 2;
  b.lo = {lo, lo};
  b.side = side;
  return b;
}

std::string temp_path(const char* stem) {
  return std::string("/tmp/halab_test_") + stem;
}

}  // namespace

TEST_CASE("midpoint sampling is exact for affine integrands") {
  // The midpoint rule integrates linear functions exactly, so cell averages
  // of f(x) = x coincide with midpoint samples.
  auto f = GridFunction::sample(unit_line(), 6, [](double x, double) { return x; });
  auto g = GridFunction::cell_average_1d(unit_line(), 6, [](double a, double b) {
    return 0.5 * (b * b - a * a);
  });
  REQUIRE(f.cell_count() == 64);
  for (std::int64_t i = 0; i < f.cell_count(); ++i) {
    CHECK(f.value(i) == doctest::Approx(g.value(i)).epsilon(1e-14));
  }
}

TEST_CASE("integral of the constant one equals the box volume") {
  auto f1 = GridFunction::sample(unit_line(), 5, [](double, double) { return 1.0; });
  CHECK(integral(f1) == doctest::Approx(1.0).epsilon(1e-15));

  auto f2 = GridFunction::sample(square(-2.0, 4.0), 4, [](double, double) { return 1.0; });
  CHECK(integral(f2) == doctest::Approx(16.0).epsilon(1e-15));
}

TEST_CASE("cell averages integrate the mass function exactly") {
  Box b;
  b.n = 1;
  b.lo = {-1.0, 0.0};
  b.side = 2.0;
  // f(x) = x^2 via its primitive x^3/3.
  auto f = GridFunction::cell_average_1d(b, 7, [](double lo, double hi) {
    return (hi * hi * hi - lo * lo * lo) / 3.0;
  });
  CHECK(integral(f) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("prefix sums agree with direct summation on random ranges") {
  Rng rng(7);

  SUBCASE("one dimension") {
    Box b = unit_line();
    std::vector<double> vals(1 << 8);
    for (auto& v : vals) v = rng.uniform(-1.0, 1.0);
    auto f = GridFunction::from_values(b, 8, vals);
    PrefixSums ps(f);
    for (int trial = 0; trial < 50; ++trial) {
      std::int64_t a = rng.uniform_int(0, 255);
      std::int64_t c = rng.uniform_int(0, 255);
      if (a > c) std::swap(a, c);
      CellRange r;
      r.n = 1;
      r.lo = {a, 0};
      r.hi = {c + 1, 1};
      double direct = 0.0;
      for (std::int64_t i = a; i <= c; ++i) direct += f.value(i);
      CHECK(ps.cell_sum(r) == doctest::Approx(direct).epsilon(1e-12));
      CHECK(ps.range_mean(r) ==
            doctest::Approx(direct / static_cast<double>(r.count())).epsilon(1e-12));
    }
  }

  SUBCASE("two dimensions") {
    Box b = square(0.0, 1.0);
    std::int64_t cells = 1 << 5;
    std::vector<double> vals(static_cast<std::size_t>(cells * cells));
    for (auto& v : vals) v = rng.uniform(0.0, 3.0);
    auto f = GridFunction::from_values(b, 5, vals);
    PrefixSums ps(f);
    for (int trial = 0; trial < 50; ++trial) {
      std::int64_t ax = rng.uniform_int(0, cells - 1);
      std::int64_t bx = rng.uniform_int(0, cells - 1);
      std::int64_t ay = rng.uniform_int(0, cells - 1);
      std::int64_t by = rng.uniform_int(0, cells - 1);
      if (ax > bx) std::swap(ax, bx);
      if (ay > by) std::swap(ay, by);
      CellRange r;
      r.n = 2;
      r.lo = {ax, ay};
      r.hi = {bx + 1, by + 1};
      double direct = 0.0;
      for (std::int64_t j = ay; j <= by; ++j)
        for (std::int64_t i = ax; i <= bx; ++i) direct += f.value(f.flat_index(i, j));
      CHECK(ps.cell_sum(r) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("range mean rejects empty ranges") {
  auto f = GridFunction::sample(unit_line(), 3, [](double x, double) { return x; });
  PrefixSums ps(f);
  CellRange r;
  r.n = 1;
  r.lo = {4, 0};
  r.hi = {4, 1};
  CHECK_THROWS_AS(ps.range_mean(r), ParameterError);
}

TEST_CASE("binary round trip preserves values bit for bit") {
  Rng rng(11);
  Box b = square(-2.0, 4.0);
  std::int64_t cells = 1 << 4;
  std::vector<double> vals(static_cast<std::size_t>(cells * cells));
  for (auto& v : vals) v = rng.uniform(-5.0, 5.0) * std::pow(10.0, rng.uniform_int(-8, 8));
  auto f = GridFunction::from_values(b, 4, vals);
  auto path = temp_path("roundtrip.bin");
  f.save_binary(path);
  auto g = GridFunction::load_binary(path);
  std::remove(path.c_str());

  REQUIRE(g.n() == f.n());
  REQUIRE(g.m() == f.m());
  CHECK(g.box().lo[0] == f.box().lo[0]);
  CHECK(g.box().lo[1] == f.box().lo[1]);
  CHECK(g.box().side == f.box().side);
  for (std::int64_t i = 0; i < f.cell_count(); ++i) CHECK(g.value(i) == f.value(i));
}

TEST_CASE("csv round trip holds values to print precision") {
  Rng rng(13);
  Box b = unit_line();
  std::vector<double> vals(1 << 6);
  for (auto& v : vals) v = rng.uniform(-3.0, 3.0);
  auto f = GridFunction::from_values(b, 6, vals);
  auto path = temp_path("roundtrip.csv");
  f.save_csv(path);
  auto g = GridFunction::load_csv(path);
  std::remove(path.c_str());

  REQUIRE(g.cell_count() == f.cell_count());
  for (std::int64_t i = 0; i < f.cell_count(); ++i) {
    CHECK(g.value(i) == doctest::Approx(f.value(i)).epsilon(1e-11));
  }
}

TEST_CASE("cell centers land at midpoints") {
  auto f = GridFunction::sample(unit_line(), 2, [](double, double) { return 0.0; });
  auto c = f.cell_center(0);
  CHECK(c[0] == doctest::Approx(0.125).epsilon(1e-15));
  c = f.cell_center(3);
  CHECK(c[0] == doctest::Approx(0.875).epsilon(1e-15));

  auto g = GridFunction::sample(square(0.0, 2.0), 1, [](double, double) { return 0.0; });
  auto cc = g.cell_center(g.flat_index(1, 1));
  CHECK(cc[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(cc[1] == doctest::Approx(1.5).epsilon(1e-15));
}
