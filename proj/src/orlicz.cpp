#include "halab/orlicz.hpp"

#include <cmath>
#include <cstdlib>

#include "halab/common.hpp"

namespace halab {

double young_phi(double t, double beta) {
  if (t <= 0.0) return 0.0;
  if (beta == 0.0) return t;
  return t * std::pow(std::log1p(t), beta);
}

namespace {

std::vector<double> gather(const GridFunction& f, const CellRange& r) {
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(r.count()));
  if (f.n() == 1) {
    for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i) vals.push_back(f.value(i));
  } else {
    for (std::int64_t j = r.lo[1]; j < r.hi[1]; ++j)
      for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i)
        vals.push_back(f.value(f.flat_index(i, j)));
  }
  return vals;
}

// Mean of integrand(|v|/lambda) minus the target level; strictly decreasing
// in lambda whenever some value is nonzero.
template <typename Fn>
double solve_decreasing(double mean_abs, const Fn& residual, const OrliczParams& params,
                        const char* what) {
  double lo = mean_abs, hi = mean_abs;
  int spent = 0;
  if (residual(hi) > 0.0) {
    while (residual(hi) > 0.0) {
      hi *= 2.0;
      if (++spent > params.max_expansions || !std::isfinite(hi))
        throw NonConvergenceError(std::string(what) + ": bracket expansion exhausted");
    }
    lo = hi / 2.0;
  } else {
    while (residual(lo) <= 0.0) {
      lo *= 0.5;
      if (++spent > params.max_expansions || lo == 0.0) {
        // Residual stays nonpositive arbitrarily close to 0: the infimum is 0.
        return 0.0;
      }
    }
    hi = lo * 2.0;
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  if (std::abs(residual(hi)) > 10.0 * params.tolerance &&
      std::abs(residual(lo)) > 10.0 * params.tolerance)
    throw NonConvergenceError(std::string(what) + ": residual did not settle");
  return hi;
}

}  // namespace

double luxemburg_norm(const std::vector<double>& cell_values, const OrliczParams& params) {
  if (params.beta < 0.0) throw ParameterError("luxemburg_norm: beta must be nonnegative");
  if (cell_values.empty()) throw ParameterError("luxemburg_norm: empty cell set");
  const double inv_n = 1.0 / static_cast<double>(cell_values.size());
  double mean_abs = 0.0, max_abs = 0.0;
  for (double v : cell_values) {
    const double a = std::abs(v);
    mean_abs += a;
    if (a > max_abs) max_abs = a;
  }
  mean_abs *= inv_n;
  if (max_abs == 0.0) return 0.0;
  if (params.beta == 0.0) return mean_abs;  // Phi(t)=t makes the norm the plain mean
  const auto residual = [&](double lambda) {
    double s = 0.0;
    for (double v : cell_values) s += young_phi(std::abs(v) / lambda, params.beta);
    return s * inv_n - 1.0;
  };
  return solve_decreasing(mean_abs, residual, params, "luxemburg_norm");
}

double luxemburg_norm(const GridFunction& f, const CellRange& r, double beta) {
  OrliczParams params;
  params.beta = beta;
  return luxemburg_norm(gather(f, r), params);
}

double luxemburg_norm(const ShiftedGridFamily& fam, const GridFunction& f,
                      const DyadicCube& q, double beta) {
  const CellRange r = fam.cell_range(q);
  if (r.empty()) throw AlignmentError("luxemburg_norm: cube does not meet the box");
  return luxemburg_norm(f, r, beta);
}

double exp_norm(const std::vector<double>& cell_values, const OrliczParams& params) {
  if (cell_values.empty()) throw ParameterError("exp_norm: empty cell set");
  const double inv_n = 1.0 / static_cast<double>(cell_values.size());
  double mean_abs = 0.0, max_abs = 0.0;
  for (double v : cell_values) {
    const double a = std::abs(v);
    mean_abs += a;
    if (a > max_abs) max_abs = a;
  }
  mean_abs *= inv_n;
  if (max_abs == 0.0) return 0.0;
  const auto residual = [&](double t) {
    double s = 0.0;
    for (double v : cell_values) {
      const double e = std::abs(v) / t;
      if (e > 700.0) return 1e300;  // mean surely above 2; dodge exp overflow
      s += std::exp(e);
    }
    return s * inv_n - 2.0;
  };
  return solve_decreasing(mean_abs, residual, params, "exp_norm");
}

double exp_norm(const GridFunction& f, const CellRange& r) {
  return exp_norm(gather(f, r), OrliczParams{});
}

double exp_norm(const ShiftedGridFamily& fam, const GridFunction& f, const DyadicCube& q) {
  const CellRange r = fam.cell_range(q);
  if (r.empty()) throw AlignmentError("exp_norm: cube does not meet the box");
  return exp_norm(f, r);
}

std::pair<double, double> orlicz_holder_pair(const GridFunction& f, const GridFunction& h,
                                             const CellRange& r, double beta) {
  if (!same_geometry(f.box(), h.box()) || f.m() != h.m())
    throw AlignmentError("orlicz_holder_pair: mismatched grids");
  const std::vector<double> fv = gather(f, r), hv = gather(h, r);
  double lhs = 0.0;
  for (std::size_t k = 0; k < fv.size(); ++k) lhs += std::abs(fv[k] * hv[k]);
  lhs /= static_cast<double>(fv.size());
  OrliczParams params;
  params.beta = beta;
  const double rhs = luxemburg_norm(fv, params) * exp_norm(hv, OrliczParams{});
  return {lhs, rhs};
}

}  // namespace halab
