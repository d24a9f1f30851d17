#pragma once

// Semi-analytic evaluation of the rough commutator integral applied to a
// truncated power profile on the line.
//
// For f(x) = x^(delta-1) on (0,1), amplitude A(y) = y log|y| and the plain
// second-order kernel, the operator value at x in (0,1) collapses to
//
//   (T f)(x) = x^(delta-1) * G(1/x),
//   G(s)     = integral_0^s (t - 1 - log t) / (1 - t)^2 * t^(delta-1) dt,
//
// with a nonnegative integrand. Substituting t = e^v turns G into a
// one-dimensional quadrature along the log axis, which stays resolvable for
// small delta where a uniform spatial grid would need astronomically many
// cells. The L^p integrals against the power weight w = |x|^((p-1)(1-delta))
// collapse the same way: with x = e^u,
//
//   ||f||^p   = integral_{umin}^{0} e^(delta u) du,
//   ||T f||^p = integral_{umin}^{0} G(e^{-u})^p e^(delta u) du.

#include <vector>

#include "halab/common.hpp"

namespace halab {

// Integrand of G in log coordinates: h(v) = e^(delta v) (e^v - 1 - v) / (1 - e^v)^2.
// Evaluated piecewise to stay finite near v = 0 and for large |v|.
double power_tail_density(double v, double delta);

// Prefix-integral table for G(e^v) over v in [vmin, vmax], midpoint rule.
// vmin is chosen internally so the discarded tail is negligible relative to G(1).
class PowerTailProfile {
 public:
  PowerTailProfile(double delta, double vmax, int nodes = 400000);

  // G(e^v); arguments below vmin clamp to 0, above vmax to the full integral.
  double at_log(double v) const;

  double delta() const { return delta_; }

 private:
  double delta_ = 0;
  double vmin_ = 0;
  double dv_ = 0;
  int nodes_ = 0;
  std::vector<double> prefix_;
};

struct PowerSharpness {
  double delta = 0;
  double f_norm_p = 0;  // ||f||_{L^p(w)}^p, exact value 1/delta up to quadrature
  double t_norm_p = 0;  // ||T f||_{L^p(w)}^p
  double ratio = 0;     // (t_norm_p / f_norm_p)^(1/p)
};

// Evaluates both norms with 2^depth midpoint nodes on the log axis
// u in [-depth*log(4)/delta, 0], i.e. x down to 4^(-depth/delta... ) -- the
// spatial range a depth-`depth` dyadic grid could not resolve directly.
// Requires the node spacing to resolve the weight scale: du <= delta/2,
// otherwise throws ResolutionError naming the smallest admissible depth.
PowerSharpness power_sharpness(double p, double delta, int depth);

}  // namespace halab
