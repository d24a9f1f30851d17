#include "halab/kernel.hpp"

#include <cmath>

#include "halab/common.hpp"

namespace halab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double SphericalKernel::at_direction(double ux, double uy) const {
  if (n == 1) return ux > 0.0 ? plus : minus;
  return omega(std::atan2(uy, ux));
}

SphericalKernel SphericalKernel::preset(const std::string& name, int n) {
  if (n != 1 && n != 2) throw ParameterError("kernel preset: n must be 1 or 2");
  SphericalKernel k;
  k.n = n;
  k.name = name;
  if (name == "const1") {
    k.plus = k.minus = 1.0;
    k.omega = [](double) { return 1.0; };
    return k;
  }
  if (name == "sign" && n == 1) {
    k.plus = 1.0;
    k.minus = -1.0;
    return k;
  }
  if (name == "cos2theta" && n == 2) {
    k.omega = [](double th) { return std::cos(2.0 * th); };
    return k;
  }
  if (name == "costheta" && n == 2) {
    k.omega = [](double th) { return std::cos(th); };
    return k;
  }
  throw ParameterError("kernel preset: unknown name '" + name + "' for n=" + std::to_string(n));
}

std::vector<double> check_vanishing_moment(const SphericalKernel& k, int nodes) {
  if (k.n == 1) return {k.plus - k.minus};
  if (nodes < 8) throw ParameterError("check_vanishing_moment: too few nodes");
  double rc = 0.0, rs = 0.0;
  const double dth = kTwoPi / nodes;
  for (int i = 0; i < nodes; ++i) {
    const double th = i * dth;
    const double w = k.omega(th);
    rc += w * std::cos(th);
    rs += w * std::sin(th);
  }
  return {rc * dth, rs * dth};
}

double continuity_modulus(const SphericalKernel& k, double t, int ntheta, int nphi) {
  if (!(t > 0.0)) throw ParameterError("continuity_modulus: t must be positive");
  if (k.n == 1) return t > 2.0 ? std::abs(k.plus - k.minus) : 0.0;
  // Rotation by phi moves sphere points by 2 sin(phi/2); admit phi up to the
  // closure value so the sup is attained for moduli increasing in phi.
  const double phi_max = t >= 2.0 ? kTwoPi / 2.0 : 2.0 * std::asin(0.5 * t);
  const double dth = kTwoPi / ntheta;
  double best = 0.0;
  for (int a = 1; a <= nphi; ++a) {
    const double phi = phi_max * a / nphi;
    double worst = 0.0;
    for (int i = 0; i < ntheta; ++i) {
      const double th = i * dth;
      const double d = std::abs(k.omega(th + phi) - k.omega(th));
      if (d > worst) worst = d;
    }
    if (worst > best) best = worst;
  }
  return best;
}

DiniLogResult dini_log_integral(const SphericalKernel& k, double t_min, int nodes_per_decade,
                                int ntheta, int nphi) {
  if (!(t_min > 0.0) || !(t_min < 1.0))
    throw ParameterError("dini_log_integral: t_min must lie in (0,1)");
  DiniLogResult res;
  if (k.n == 1) return res;  // modulus vanishes below displacement 2
  const double u_lo = std::log(t_min);
  const double decades = -u_lo / std::log(10.0);
  const int nodes = std::max(16, static_cast<int>(std::ceil(decades * nodes_per_decade)));
  const double du = -u_lo / nodes;
  const double u_decade = u_lo + std::log(10.0);  // top of the final decade
  for (int i = 0; i < nodes; ++i) {
    const double u = u_lo + (i + 0.5) * du;
    const double w = continuity_modulus(k, std::exp(u), ntheta, nphi) * (1.0 + std::abs(u)) * du;
    res.value += w;
    if (u < u_decade) res.last_decade += w;
  }
  return res;
}

}  // namespace halab
