#include "halab/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "halab/util.hpp"

namespace halab {

double power_tail_density(double v, double delta) {
  if (std::abs(v) < 1e-4) {
    // t -> 1: (t - 1 - log t)/(1 - t)^2 = 1/2 + (1-t)/3 + (1-t)^2/4 + ...
    double u = 1.0 - std::exp(v);
    return std::exp(delta * v) * (0.5 + u / 3.0 + u * u / 4.0);
  }
  if (v >= 30.0) {
    // factor e^v out of the quotient so nothing overflows
    double e = std::exp(-v);
    return std::exp((delta - 1.0) * v) * (1.0 - (1.0 + v) * e) / ((1.0 - e) * (1.0 - e));
  }
  double t = std::exp(v);
  return std::exp(delta * v) * (t - 1.0 - v) / ((1.0 - t) * (1.0 - t));
}

PowerTailProfile::PowerTailProfile(double delta, double vmax, int nodes) {
  if (!(delta > 0.0) || !(delta < 1.0)) throw ParameterError("PowerTailProfile: delta must lie in (0,1)");
  if (nodes < 1000) throw ParameterError("PowerTailProfile: need at least 1000 nodes");
  delta_ = delta;
  // below vmin the integrand is ~ e^(delta v) |v|, whose tail mass is
  // negligible against G(1) >= 1/delta^2 - 1/delta
  vmin_ = std::max(-45.0 / delta, -700.0);
  if (!(vmax > vmin_)) throw ParameterError("PowerTailProfile: vmax must exceed the internal vmin");
  nodes_ = nodes;
  dv_ = (vmax - vmin_) / nodes;
  prefix_.assign(static_cast<std::size_t>(nodes) + 1, 0.0);
  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    acc += power_tail_density(vmin_ + (i + 0.5) * dv_, delta) * dv_;
    prefix_[static_cast<std::size_t>(i) + 1] = acc;
  }
}

double PowerTailProfile::at_log(double v) const {
  double pos = std::floor((v - vmin_) / dv_);
  long idx = pos < 0 ? 0 : (pos >= nodes_ ? nodes_ : static_cast<long>(pos));
  double full = prefix_[static_cast<std::size_t>(idx)];
  if (idx >= nodes_) return full;
  double lo = vmin_ + idx * dv_;
  double rem = std::clamp(v - lo, 0.0, dv_);
  return full + power_tail_density(lo + 0.5 * rem, delta_) * rem;
}

PowerSharpness power_sharpness(double p, double delta, int depth) {
  if (!(p > 1.0)) throw ParameterError("power_sharpness: p must exceed 1");
  if (!(delta > 0.0) || !(delta < 0.5)) throw ParameterError("power_sharpness: delta must lie in (0,1/2)");
  if (depth < 2 || depth > 24) throw ParameterError("power_sharpness: depth must lie in [2,24]");
  double umin = -depth * std::log(4.0) / delta;
  long nu = 1L << depth;
  double du = -umin / static_cast<double>(nu);
  if (du > delta / 2.0) {
    // du = depth*log(4)/(delta*2^depth) decreases in depth; report the first depth that works
    int need = depth;
    while (need <= 24 && need * std::log(4.0) / (delta * std::pow(2.0, need)) > delta / 2.0) ++need;
    throw ResolutionError("power_sharpness: log-axis spacing " + format_double(du) +
                          " exceeds delta/2; increase depth to at least " + std::to_string(need));
  }
  PowerTailProfile profile(delta, -umin + 1.0);
  double fp = 0.0, tp = 0.0;
  for (long i = 0; i < nu; ++i) {
    double u = umin + (static_cast<double>(i) + 0.5) * du;
    double e = std::exp(delta * u);
    double g = profile.at_log(-u);
    fp += e;
    tp += std::pow(g, p) * e;
  }
  fp *= du;
  tp *= du;
  PowerSharpness out;
  out.delta = delta;
  out.f_norm_p = fp;
  out.t_norm_p = tp;
  out.ratio = std::pow(tp / fp, 1.0 / p);
  return out;
}

}  // namespace halab
