#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

namespace halab {

// Amplitude A with its analytic gradient, evaluated at arbitrary points
// (callers sample at cell midpoints, which avoid the origin on our grids).
struct Amplitude {
  std::string name;
  bool affine = false;
  std::function<double(double, double)> value;
  std::function<std::array<double, 2>(double, double)> gradient;

  // A(x) = x0 log|x0| (BMO gradient, the sharpness example's amplitude).
  static Amplitude xlogx();
  // A(x) = c0 x0 + c1 x1; the operator kernel annihilates these exactly.
  static Amplitude affine_map(double c0, double c1 = 0.0);
  // "xlogx" or "affine:<c>".
  static Amplitude preset(const std::string& name);
};

// Largest |A(x)-A(y)-gradA(midpoints...)| style residual of the gradient
// against centered finite differences at random points; used by tests.
double gradient_consistency(const Amplitude& a, int n, double step, std::uint64_t seed,
                            int samples = 64);

// Mean-gradient comparison: lhs = |A(x)-A(y)|, rhs = |x-y| times
// the L^q mean of |grad A| over the cube centered at x with side 2|x-y|,
// by midpoint quadrature with nodes_per_axis points.  In one dimension
// lhs <= 2 rhs: the segment from y to x fills half the cube, and Jensen
// lifts the plain mean to the L^q mean.
std::pair<double, double> gradient_mean_bound(const Amplitude& a, int n,
                                              const std::array<double, 2>& x,
                                              const std::array<double, 2>& y, double q,
                                              int nodes_per_axis = 512);

}  // namespace halab
