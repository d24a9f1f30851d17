#pragma once

#include <functional>
#include <string>
#include <vector>

namespace halab {

// Degree-zero homogeneous kernel data: values on the unit sphere.  n=1 keeps
// the two point values; n=2 keeps a function of the angle.
struct SphericalKernel {
  int n = 1;
  std::string name = "const1";
  double plus = 1.0;
  double minus = 1.0;
  std::function<double(double)> omega;  // n=2 only: theta -> value

  double at_direction(double ux, double uy) const;

  // Presets: const1 (both dims), cos2theta, costheta (n=2), sign (n=1).
  static SphericalKernel preset(const std::string& name, int n);
};

// First spherical moments, one residual per coordinate: n=1 the two-point sum
// Omega(1)-Omega(-1); n=2 periodic trapezoid of Omega(theta)cos/sin(theta).
std::vector<double> check_vanishing_moment(const SphericalKernel& k, int nodes = 8192);

// omega_inf(t) = sup over rotations moving points less than t (closure
// included) of the sup-distance between Omega and its rotate.  The two-point
// sphere admits only the identity below displacement 2, so n=1 returns 0
// there and |Omega(1)-Omega(-1)| beyond.
double continuity_modulus(const SphericalKernel& k, double t, int ntheta = 8192, int nphi = 64);

// Partial integral of omega_inf(t)(1+|log t|)/t over (t_min, 1) by log-spaced
// midpoint quadrature, with the contribution of the final decade above t_min
// reported separately as a convergence signal.
struct DiniLogResult {
  double value = 0.0;
  double last_decade = 0.0;
};
DiniLogResult dini_log_integral(const SphericalKernel& k, double t_min,
                                int nodes_per_decade = 512, int ntheta = 2048, int nphi = 16);

}  // namespace halab
