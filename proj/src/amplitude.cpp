#include "halab/amplitude.hpp"

#include <cmath>
#include <cstdint>
#include <utility>

#include "halab/common.hpp"
#include "halab/util.hpp"

namespace halab {

namespace {

double safe_log_abs(double x) {
  const double a = std::abs(x);
  return std::log(a > 1e-300 ? a : 1e-300);
}

}  // namespace

Amplitude Amplitude::xlogx() {
  Amplitude a;
  a.name = "xlogx";
  a.value = [](double x0, double) { return x0 == 0.0 ? 0.0 : x0 * safe_log_abs(x0); };
  a.gradient = [](double x0, double) {
    return std::array<double, 2>{safe_log_abs(x0) + 1.0, 0.0};
  };
  return a;
}

Amplitude Amplitude::affine_map(double c0, double c1) {
  Amplitude a;
  a.name = "affine";
  a.affine = true;
  a.value = [c0, c1](double x0, double x1) { return c0 * x0 + c1 * x1; };
  a.gradient = [c0, c1](double, double) { return std::array<double, 2>{c0, c1}; };
  return a;
}

Amplitude Amplitude::preset(const std::string& name) {
  if (name == "xlogx") return xlogx();
  const std::string key = "affine:";
  if (name.rfind(key, 0) == 0) {
    const std::string arg = name.substr(key.size());
    char* end = nullptr;
    const double c = std::strtod(arg.c_str(), &end);
    if (end == arg.c_str() || *end != '\0')
      throw ParameterError("amplitude preset: bad affine slope '" + arg + "'");
    return affine_map(c, c);
  }
  throw ParameterError("amplitude preset: unknown name '" + name + "'");
}

double gradient_consistency(const Amplitude& a, int n, double step, std::uint64_t seed,
                            int samples) {
  if (n != 1 && n != 2) throw ParameterError("gradient_consistency: n must be 1 or 2");
  if (!(step > 0.0)) throw ParameterError("gradient_consistency: step must be positive");
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    // keep sample points away from gradient singularities at the origin
    const double x0 = rng.uniform(0.1, 1.9) * (rng.uniform01() < 0.5 ? -1.0 : 1.0);
    const double x1 = n == 2 ? rng.uniform(0.1, 1.9) * (rng.uniform01() < 0.5 ? -1.0 : 1.0) : 0.0;
    const std::array<double, 2> g = a.gradient(x0, x1);
    const double d0 = (a.value(x0 + step, x1) - a.value(x0 - step, x1)) / (2.0 * step);
    worst = std::max(worst, std::abs(d0 - g[0]));
    if (n == 2) {
      const double d1 = (a.value(x0, x1 + step) - a.value(x0, x1 - step)) / (2.0 * step);
      worst = std::max(worst, std::abs(d1 - g[1]));
    }
  }
  return worst;
}

std::pair<double, double> gradient_mean_bound(const Amplitude& a, int n,
                                              const std::array<double, 2>& x,
                                              const std::array<double, 2>& y, double q,
                                              int nodes_per_axis) {
  if (n != 1 && n != 2) throw ParameterError("gradient_mean_bound: n must be 1 or 2");
  if (!(q >= 1.0)) throw ParameterError("gradient_mean_bound: q must be at least 1");
  const double dx0 = x[0] - y[0], dx1 = n == 2 ? x[1] - y[1] : 0.0;
  const double dist = std::sqrt(dx0 * dx0 + dx1 * dx1);
  const double lhs = std::abs(a.value(x[0], x[1]) - a.value(y[0], y[1]));
  if (dist == 0.0) return {lhs, 0.0};
  const double side = 2.0 * dist;
  const double h = side / nodes_per_axis;
  double acc = 0.0;
  const int nj = n == 2 ? nodes_per_axis : 1;
  for (int j = 0; j < nj; ++j) {
    const double p1 = n == 2 ? x[1] - dist + (j + 0.5) * h : 0.0;
    for (int i = 0; i < nodes_per_axis; ++i) {
      const double p0 = x[0] - dist + (i + 0.5) * h;
      const std::array<double, 2> g = a.gradient(p0, p1);
      const double mag = n == 2 ? std::sqrt(g[0] * g[0] + g[1] * g[1]) : std::abs(g[0]);
      acc += std::pow(mag, q);
    }
  }
  const double mean_q = acc / (static_cast<double>(nodes_per_axis) * nj);
  return {lhs, dist * std::pow(mean_q, 1.0 / q)};
}

}  // namespace halab
