#include "halab/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "halab/common.hpp"
#include "halab/orlicz.hpp"

namespace halab {

namespace {

void check_pair(const ShiftedGridFamily& fam, const GridFunction& f, const char* what) {
  if (!same_geometry(fam.box(), f.box()) || fam.m() != f.m())
    throw AlignmentError(std::string(what) + ": function and family disagree on geometry");
}

GridFunction abs_of(const GridFunction& f) {
  GridFunction g = f;
  for (double& v : g.values()) v = std::abs(v);
  return g;
}

// Depth-first top-down sweep of one grid: each cell receives the max of
// cube_value over all its containing cubes (levels 0..m).
GridFunction ancestor_sup(const ShiftedGridFamily& fam, int grid,
                          const std::function<double(const CellRange&)>& cube_value) {
  GridFunction out(fam.box(), fam.m());
  struct Item {
    DyadicCube q;
    double running;
  };
  std::vector<Item> stack;
  for (const DyadicCube& q : fam.level_cubes(grid, 0)) stack.push_back({q, 0.0});
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const CellRange r = fam.cell_range(it.q);
    if (r.empty()) continue;
    const double v = std::max(it.running, cube_value(r));
    if (it.q.level == fam.max_level()) {
      for (std::int64_t j = r.lo[1]; j < r.hi[1]; ++j)
        for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i)
          out.value(out.n() == 2 ? out.flat_index(i, j) : i) = v;
    } else {
      for (const DyadicCube& c : fam.children(it.q)) stack.push_back({c, v});
    }
  }
  return out;
}

GridFunction cellwise_max(const GridFunction& a, const GridFunction& b) {
  GridFunction out = a;
  for (std::int64_t c = 0; c < out.cell_count(); ++c)
    out.value(c) = std::max(a.value(c), b.value(c));
  return out;
}

}  // namespace

GridFunction dyadic_maximal(const ShiftedGridFamily& fam, const GridFunction& f, int grid) {
  check_pair(fam, f, "dyadic_maximal");
  const GridFunction a = abs_of(f);
  const PrefixSums ps(a);
  return ancestor_sup(fam, grid, [&](const CellRange& r) { return ps.range_mean(r); });
}

GridFunction shifted_maximal(const ShiftedGridFamily& fam, const GridFunction& f) {
  GridFunction out = dyadic_maximal(fam, f, 0);
  for (int g = 1; g < fam.grid_count(); ++g) out = cellwise_max(out, dyadic_maximal(fam, f, g));
  return out;
}

GridFunction hl_maximal(const ShiftedGridFamily& fam, const GridFunction& f) {
  check_pair(fam, f, "hl_maximal");
  if (f.n() == 2) return shifted_maximal(fam, f);
  const std::int64_t n = f.cells_per_axis();
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::int64_t i = 0; i < n; ++i)
    prefix[static_cast<std::size_t>(i) + 1] =
        prefix[static_cast<std::size_t>(i)] + std::abs(f.value(i));
  GridFunction out(f.box(), f.m());
  std::vector<double> suffix(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t a = 0; a < n; ++a) {
    // suffix[c] = best mean over windows [a, b) with b > c
    double run = -1.0;
    for (std::int64_t c = n - 1; c >= a; --c) {
      const double m = (prefix[static_cast<std::size_t>(c) + 1] -
                        prefix[static_cast<std::size_t>(a)]) /
                       static_cast<double>(c + 1 - a);
      run = std::max(run, m);
      suffix[static_cast<std::size_t>(c)] = run;
    }
    for (std::int64_t c = a; c < n; ++c)
      out.value(c) = std::max(out.value(c), suffix[static_cast<std::size_t>(c)]);
  }
  return out;
}

GridFunction m_delta(const ShiftedGridFamily& fam, const GridFunction& f, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) throw ParameterError("m_delta: delta must lie in (0,1)");
  GridFunction g = f;
  for (double& v : g.values()) v = std::pow(std::abs(v), delta);
  GridFunction out = shifted_maximal(fam, g);
  for (double& v : out.values()) v = std::pow(v, 1.0 / delta);
  return out;
}

namespace {

double median_abs_deviation(const GridFunction& f, const CellRange& r,
                            std::vector<double>& scratch) {
  scratch.clear();
  if (f.n() == 1) {
    for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i) scratch.push_back(f.value(i));
  } else {
    for (std::int64_t j = r.lo[1]; j < r.hi[1]; ++j)
      for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i)
        scratch.push_back(f.value(f.flat_index(i, j)));
  }
  const std::size_t mid = (scratch.size() - 1) / 2;
  std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(mid),
                   scratch.end());
  const double med = scratch[mid];
  double s = 0.0;
  for (double v : scratch) s += std::abs(v - med);
  return s / static_cast<double>(scratch.size());
}

}  // namespace

GridFunction sharp_maximal(const ShiftedGridFamily& fam, const GridFunction& f) {
  check_pair(fam, f, "sharp_maximal");
  std::vector<double> scratch;
  return ancestor_sup(fam, 0,
                      [&](const CellRange& r) { return median_abs_deviation(f, r, scratch); });
}

GridFunction sharp_maximal_delta(const ShiftedGridFamily& fam, const GridFunction& f,
                                 double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw ParameterError("sharp_maximal_delta: delta must lie in (0,1)");
  GridFunction g = f;
  for (double& v : g.values()) v = std::pow(std::abs(v), delta);
  GridFunction out = sharp_maximal(fam, g);
  for (double& v : out.values()) v = std::pow(v, 1.0 / delta);
  return out;
}

GridFunction orlicz_maximal(const ShiftedGridFamily& fam, const GridFunction& f, double beta) {
  check_pair(fam, f, "orlicz_maximal");
  GridFunction out(fam.box(), fam.m());
  for (int g = 0; g < fam.grid_count(); ++g) {
    GridFunction per =
        ancestor_sup(fam, g, [&](const CellRange& r) { return luxemburg_norm(f, r, beta); });
    out = cellwise_max(out, per);
  }
  return out;
}

GridFunction iterated_maximal(const ShiftedGridFamily& fam, const GridFunction& f) {
  check_pair(fam, f, "iterated_maximal");
  GridFunction out(fam.box(), fam.m());
  for (int g = 0; g < fam.grid_count(); ++g) {
    const GridFunction once = dyadic_maximal(fam, f, g);
    out = cellwise_max(out, dyadic_maximal(fam, once, g));
  }
  return out;
}

namespace {

bool range_covers(const CellRange& outer, const CellRange& inner) {
  for (int a = 0; a < outer.n; ++a) {
    const std::size_t k = static_cast<std::size_t>(a);
    if (outer.lo[k] > inner.lo[k] || outer.hi[k] < inner.hi[k]) return false;
  }
  return true;
}

bool ranges_meet(const CellRange& a, const CellRange& b) {
  for (int ax = 0; ax < a.n; ++ax) {
    const std::size_t k = static_cast<std::size_t>(ax);
    if (std::max(a.lo[k], b.lo[k]) >= std::min(a.hi[k], b.hi[k])) return false;
  }
  return true;
}

}  // namespace

std::vector<double> grand_maximal_values(const ShiftedGridFamily& fam,
                                         const SublinearOperatorHandle& op,
                                         const GridFunction& f, const CellRange& keep,
                                         const CellRange& eval, int max_level,
                                         std::int64_t budget) {
  check_pair(fam, f, "grand_maximal");
  if (max_level < 0 || max_level > fam.max_level())
    throw ParameterError("grand_maximal: level cap outside grid levels");
  std::vector<double> out(static_cast<std::size_t>(eval.count()), 0.0);
  const auto eval_offset = [&](std::int64_t i, std::int64_t j) {
    return (i - eval.lo[0]) +
           (eval.n == 2 ? (eval.hi[0] - eval.lo[0]) * (j - eval.lo[1]) : 0);
  };
  std::int64_t spent = 0;
  std::vector<std::int64_t> cells;
  for (int g = 0; g < fam.grid_count(); ++g)
    for (int level = 0; level <= max_level; ++level)
      for (const DyadicCube& q : fam.level_cubes(g, level)) {
        const CellRange rq = fam.cell_range(q);
        if (rq.empty() || !ranges_meet(rq, eval)) continue;
        const CellRange r3 = fam.dilate3_range(q);
        if (range_covers(r3, keep)) continue;  // cutoff removes all of f's support
        spent += rq.count() * keep.count();
        if (spent > budget)
          throw CostBudgetError("grand_maximal: cube family exceeds the evaluation budget");
        cells.clear();
        for (std::int64_t j = rq.lo[1]; j < rq.hi[1]; ++j)
          for (std::int64_t i = rq.lo[0]; i < rq.hi[0]; ++i)
            cells.push_back(f.n() == 2 ? f.flat_index(i, j) : i);
        CellSelector sel;
        sel.keep = keep;
        sel.minus = r3;
        const std::vector<double> tv = op.apply_at(f, sel, cells);
        double v = 0.0;
        for (double t : tv) v = std::max(v, std::abs(t));
        if (v <= 0.0) continue;
        for (std::int64_t j = std::max(rq.lo[1], eval.lo[1]);
             j < std::min(rq.hi[1], eval.hi[1]); ++j)
          for (std::int64_t i = std::max(rq.lo[0], eval.lo[0]);
               i < std::min(rq.hi[0], eval.hi[0]); ++i) {
            double& slot = out[static_cast<std::size_t>(eval_offset(i, j))];
            slot = std::max(slot, v);
          }
      }
  return out;
}

GridFunction grand_maximal(const ShiftedGridFamily& fam, const SublinearOperatorHandle& op,
                           const GridFunction& f, int max_level, std::int64_t budget) {
  const CellRange full = f.full_range();
  const std::vector<double> vals = grand_maximal_values(fam, op, f, full, full, max_level, budget);
  GridFunction out(f.box(), f.m());
  for (std::int64_t c = 0; c < out.cell_count(); ++c)
    out.value(c) = vals[static_cast<std::size_t>(c)];
  return out;
}

}  // namespace halab
