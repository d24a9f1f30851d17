#include "halab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "halab/common.hpp"

namespace halab {

namespace {

void check_weight(const GridFunction& w, const char* what) {
  for (double v : w.values())
    if (!(v > 0.0) || !std::isfinite(v))
      throw ParameterError(std::string(what) + ": weight samples must be positive and finite");
}

void check_depth(const ShiftedGridFamily& fam, int depth, const char* what) {
  if (depth < 0 || depth > fam.max_level())
    throw ParameterError(std::string(what) + ": depth outside grid levels");
}

CellRange intersect(const CellRange& a, const CellRange& b) {
  CellRange r;
  r.n = a.n;
  for (int ax = 0; ax < a.n; ++ax) {
    const std::size_t k = static_cast<std::size_t>(ax);
    r.lo[k] = std::max(a.lo[k], b.lo[k]);
    r.hi[k] = std::min(a.hi[k], b.hi[k]);
    if (r.hi[k] < r.lo[k]) r.hi[k] = r.lo[k];
  }
  if (a.n == 1) {
    r.lo[1] = 0;
    r.hi[1] = 1;
  }
  return r;
}

template <typename Fn>
void for_each_cube(const ShiftedGridFamily& fam, int depth, const Fn& fn) {
  for (int g = 0; g < fam.grid_count(); ++g)
    for (int level = 0; level <= depth; ++level)
      for (const DyadicCube& q : fam.level_cubes(g, level)) {
        const CellRange r = fam.cell_range(q);
        if (!r.empty()) fn(q, r);
      }
}

}  // namespace

double ap_constant(const ShiftedGridFamily& fam, const GridFunction& w, double p, int depth) {
  if (!(p > 1.0)) throw ParameterError("ap_constant: p must exceed 1");
  return ap_constant_pair(fam, w, dual_weight(w, p), p, depth);
}

double ap_constant_pair(const ShiftedGridFamily& fam, const GridFunction& w,
                        const GridFunction& sigma, double p, int depth) {
  if (!(p > 1.0)) throw ParameterError("ap_constant_pair: p must exceed 1");
  if (!same_geometry(w.box(), sigma.box()) || w.m() != sigma.m())
    throw AlignmentError("ap_constant_pair: weight grids disagree");
  check_weight(w, "ap_constant_pair");
  check_weight(sigma, "ap_constant_pair");
  check_depth(fam, depth, "ap_constant_pair");
  const PrefixSums pw(w), ps(sigma);
  double best = 0.0;
  for_each_cube(fam, depth, [&](const DyadicCube&, const CellRange& r) {
    const double prod = pw.range_mean(r) * std::pow(ps.range_mean(r), p - 1.0);
    if (prod > best) best = prod;
  });
  return best;
}

double ap_product(const ShiftedGridFamily& fam, const GridFunction& w,
                  const GridFunction& sigma, double p, const DyadicCube& q) {
  if (!(p > 1.0)) throw ParameterError("ap_product: p must exceed 1");
  const CellRange r = fam.cell_range(q);
  if (r.empty()) throw AlignmentError("ap_product: cube does not meet the box");
  return mean(w, r) * std::pow(mean(sigma, r), p - 1.0);
}

double a1_constant(const ShiftedGridFamily& fam, const GridFunction& w, int depth) {
  check_weight(w, "a1_constant");
  check_depth(fam, depth, "a1_constant");
  const PrefixSums pw(w);
  double best = 0.0;
  for_each_cube(fam, depth, [&](const DyadicCube&, const CellRange& r) {
    double mn = std::numeric_limits<double>::infinity();
    if (w.n() == 1) {
      for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i) mn = std::min(mn, w.value(i));
    } else {
      for (std::int64_t j = r.lo[1]; j < r.hi[1]; ++j)
        for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i)
          mn = std::min(mn, w.value(w.flat_index(i, j)));
    }
    const double ratio = pw.range_mean(r) / mn;
    if (ratio > best) best = ratio;
  });
  return best;
}

double ainf_constant(const ShiftedGridFamily& fam, const GridFunction& u, int depth) {
  check_weight(u, "ainf_constant");
  check_depth(fam, depth, "ainf_constant");
  const PrefixSums pu(u);
  double best = 0.0;
  for_each_cube(fam, depth, [&](const DyadicCube&, const CellRange& rq) {
    double num = 0.0;  // sum over cells of Q of M(u chi_Q)
    const auto maximal_at = [&](std::int64_t i, std::int64_t j) {
      double mx = 0.0;
      for (int g = 0; g < fam.grid_count(); ++g)
        for (int level = 0; level <= fam.max_level(); ++level) {
          const DyadicCube rc = fam.cube_at(g, level, i, j);
          const CellRange rr = fam.cell_range(rc);
          if (rr.empty()) continue;
          const double v =
              pu.cell_sum(intersect(rr, rq)) / static_cast<double>(rr.count());
          if (v > mx) mx = v;
        }
      return mx;
    };
    if (u.n() == 1) {
      for (std::int64_t i = rq.lo[0]; i < rq.hi[0]; ++i) num += maximal_at(i, 0);
    } else {
      for (std::int64_t j = rq.lo[1]; j < rq.hi[1]; ++j)
        for (std::int64_t i = rq.lo[0]; i < rq.hi[0]; ++i) num += maximal_at(i, j);
    }
    const double ratio = num / pu.cell_sum(rq);
    if (ratio > best) best = ratio;
  });
  return best;
}

GridFunction dual_weight(const GridFunction& w, double p) {
  if (!(p > 1.0)) throw ParameterError("dual_weight: p must exceed 1");
  check_weight(w, "dual_weight");
  GridFunction sigma = w;
  const double e = -1.0 / (p - 1.0);
  for (double& v : sigma.values()) v = std::pow(v, e);
  return sigma;
}

double weighted_lp_norm(const GridFunction& f, const GridFunction& w, double p) {
  std::vector<const GridFunction*> fs{&f};
  return vector_lp_lq_norm(fs, w, p, 2.0);
}

GridFunction lq_combine(const std::vector<const GridFunction*>& fs, double q) {
  if (fs.empty()) throw ParameterError("lq_combine: empty sequence");
  for (const GridFunction* f : fs)
    if (!same_geometry(f->box(), fs[0]->box()) || f->m() != fs[0]->m())
      throw AlignmentError("lq_combine: sequence geometry disagrees");
  if (!(q > 0.0)) throw ParameterError("lq_combine: q must be positive");
  GridFunction out(fs[0]->box(), fs[0]->m());
  const bool use_max = std::isinf(q);
  for (std::int64_t c = 0; c < out.cell_count(); ++c) {
    double acc = 0.0;
    for (const GridFunction* f : fs) {
      const double a = std::abs(f->value(c));
      acc = use_max ? std::max(acc, a) : acc + std::pow(a, q);
    }
    out.value(c) = use_max ? acc : std::pow(acc, 1.0 / q);
  }
  return out;
}

double vector_lp_lq_norm(const std::vector<const GridFunction*>& fs, const GridFunction& w,
                         double p, double q) {
  if (!(p > 0.0)) throw ParameterError("vector_lp_lq_norm: p must be positive");
  const GridFunction g = lq_combine(fs, q);
  if (!same_geometry(g.box(), w.box()) || g.m() != w.m())
    throw AlignmentError("vector_lp_lq_norm: weight geometry disagrees");
  double s = 0.0;
  for (std::int64_t c = 0; c < g.cell_count(); ++c)
    s += std::pow(g.value(c), p) * w.value(c);
  return std::pow(s * g.cell_volume(), 1.0 / p);
}

double vector_weak_lp_lq(const std::vector<const GridFunction*>& fs, const GridFunction& w,
                         double p, double q) {
  if (!(p > 0.0)) throw ParameterError("vector_weak_lp_lq: p must be positive");
  const GridFunction g = lq_combine(fs, q);
  if (!same_geometry(g.box(), w.box()) || g.m() != w.m())
    throw AlignmentError("vector_weak_lp_lq: weight geometry disagrees");
  std::vector<std::pair<double, double>> lv;  // (level value, cell weight mass)
  lv.reserve(static_cast<std::size_t>(g.cell_count()));
  for (std::int64_t c = 0; c < g.cell_count(); ++c)
    if (g.value(c) > 0.0) lv.emplace_back(g.value(c), w.value(c) * g.cell_volume());
  std::sort(lv.begin(), lv.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  double cum = 0.0, best = 0.0;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    cum += lv[i].second;
    if (i + 1 == lv.size() || lv[i + 1].first != lv[i].first)
      best = std::max(best, std::pow(lv[i].first, p) * cum);
  }
  return std::pow(best, 1.0 / p);
}

double weighted_superlevel_measure(const GridFunction& g, const GridFunction& w, double level) {
  if (!same_geometry(g.box(), w.box()) || g.m() != w.m())
    throw AlignmentError("weighted_superlevel_measure: geometry disagrees");
  double s = 0.0;
  for (std::int64_t c = 0; c < g.cell_count(); ++c)
    if (g.value(c) > level) s += w.value(c);
  return s * g.cell_volume();
}

}  // namespace halab
