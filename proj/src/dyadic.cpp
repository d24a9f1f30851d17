#include "halab/dyadic.hpp"

#include <cmath>

#include "halab/util.hpp"

namespace halab {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

ShiftedGridFamily::ShiftedGridFamily(const Box& box, int m) : box_(box), m_(m) {
  if (box.n != 1 && box.n != 2) throw ParameterError("grid family: n must be 1 or 2");
  if (m < 1 || m > 26) throw ParameterError("grid family: refinement level out of range");
  cells_ = std::int64_t{1} << m;
  grids_ = box.n == 2 ? 9 : 3;
  // Translates by thirds of the box, snapped to whole finest-level cells so
  // cubes stay unions of cells and each grid nests exactly across levels.
  const std::int64_t third = static_cast<std::int64_t>(
      std::llround(static_cast<double>(cells_) / 3.0));
  const std::int64_t axis_shift[3] = {0, third, 2 * third};
  for (int g = 0; g < grids_; ++g) {
    shifts_[static_cast<std::size_t>(g)][0] = axis_shift[g % 3];
    shifts_[static_cast<std::size_t>(g)][1] = box.n == 2 ? axis_shift[g / 3] : 0;
  }
}

std::int64_t ShiftedGridFamily::shift_cells(int g, int axis) const {
  if (g < 0 || g >= grids_) throw ParameterError("shift_cells: grid index out of range");
  if (axis < 0 || axis >= box_.n) throw ParameterError("shift_cells: axis out of range");
  return shifts_[static_cast<std::size_t>(g)][static_cast<std::size_t>(axis)];
}

double ShiftedGridFamily::side_of_level(int level) const {
  return box_.side / static_cast<double>(std::int64_t{1} << level);
}

RealCube ShiftedGridFamily::real_cube(const DyadicCube& q) const {
  const double h = cell_width();
  const std::int64_t w = cells_ >> q.level;
  RealCube rc;
  rc.n = box_.n;
  rc.side = side_of_level(q.level);
  for (int a = 0; a < box_.n; ++a) {
    const std::int64_t s = shifts_[static_cast<std::size_t>(q.grid)][static_cast<std::size_t>(a)];
    rc.lo[static_cast<std::size_t>(a)] =
        box_.lo[static_cast<std::size_t>(a)] +
        static_cast<double>(s + q.idx[static_cast<std::size_t>(a)] * w) * h;
  }
  return rc;
}

CellRange ShiftedGridFamily::cell_range(const DyadicCube& q) const {
  if (q.grid < 0 || q.grid >= grids_ || q.level < 0 || q.level > m_)
    throw ParameterError("cell_range: cube outside family");
  const std::int64_t w = cells_ >> q.level;
  CellRange r;
  r.n = box_.n;
  for (int a = 0; a < box_.n; ++a) {
    const std::int64_t s = shifts_[static_cast<std::size_t>(q.grid)][static_cast<std::size_t>(a)];
    std::int64_t lo = s + q.idx[static_cast<std::size_t>(a)] * w;
    std::int64_t hi = lo + w;
    if (lo < 0) lo = 0;
    if (hi > cells_) hi = cells_;
    r.lo[static_cast<std::size_t>(a)] = lo;
    r.hi[static_cast<std::size_t>(a)] = hi < lo ? lo : hi;
  }
  if (box_.n == 1) {
    r.lo[1] = 0;
    r.hi[1] = 1;
  }
  return r;
}

CellRange ShiftedGridFamily::dilate3_range(const DyadicCube& q) const {
  const std::int64_t w = cells_ >> q.level;
  CellRange r;
  r.n = box_.n;
  for (int a = 0; a < box_.n; ++a) {
    const std::int64_t s = shifts_[static_cast<std::size_t>(q.grid)][static_cast<std::size_t>(a)];
    std::int64_t lo = s + (q.idx[static_cast<std::size_t>(a)] - 1) * w;
    std::int64_t hi = lo + 3 * w;
    if (lo < 0) lo = 0;
    if (hi > cells_) hi = cells_;
    r.lo[static_cast<std::size_t>(a)] = lo;
    r.hi[static_cast<std::size_t>(a)] = hi < lo ? lo : hi;
  }
  if (box_.n == 1) {
    r.lo[1] = 0;
    r.hi[1] = 1;
  }
  return r;
}

DyadicCube ShiftedGridFamily::cube_at(int g, int level, std::int64_t i, std::int64_t j) const {
  if (g < 0 || g >= grids_ || level < 0 || level > m_)
    throw ParameterError("cube_at: cube outside family");
  const std::int64_t w = cells_ >> level;
  DyadicCube q;
  q.grid = g;
  q.level = level;
  q.idx[0] = floor_div(i - shifts_[static_cast<std::size_t>(g)][0], w);
  q.idx[1] = box_.n == 2 ? floor_div(j - shifts_[static_cast<std::size_t>(g)][1], w) : 0;
  return q;
}

DyadicCube ShiftedGridFamily::parent(const DyadicCube& q) const {
  if (q.level <= 0) throw ParameterError("parent: root cube has no parent");
  DyadicCube p = q;
  p.level = q.level - 1;
  p.idx[0] = floor_div(q.idx[0], 2);
  p.idx[1] = floor_div(q.idx[1], 2);
  return p;
}

std::vector<DyadicCube> ShiftedGridFamily::children(const DyadicCube& q) const {
  if (q.level >= m_) throw ParameterError("children: cube is at the finest level");
  std::vector<DyadicCube> out;
  out.reserve(box_.n == 2 ? 4 : 2);
  for (int dj = 0; dj < (box_.n == 2 ? 2 : 1); ++dj)
    for (int di = 0; di < 2; ++di) {
      DyadicCube c = q;
      c.level = q.level + 1;
      c.idx[0] = 2 * q.idx[0] + di;
      c.idx[1] = box_.n == 2 ? 2 * q.idx[1] + dj : 0;
      out.push_back(c);
    }
  return out;
}

std::vector<DyadicCube> ShiftedGridFamily::level_cubes(int g, int level) const {
  if (g < 0 || g >= grids_ || level < 0 || level > m_)
    throw ParameterError("level_cubes: outside family");
  const std::int64_t w = cells_ >> level;
  std::array<std::int64_t, 2> kmin{0, 0}, kmax{0, 0};
  for (int a = 0; a < box_.n; ++a) {
    const std::int64_t s = shifts_[static_cast<std::size_t>(g)][static_cast<std::size_t>(a)];
    // Smallest k whose footprint meets the box: s + k w + w >= 1.
    kmin[static_cast<std::size_t>(a)] = -floor_div(s + w - 1, w);
    kmax[static_cast<std::size_t>(a)] = floor_div(cells_ - 1 - s, w);
  }
  std::vector<DyadicCube> out;
  for (std::int64_t kj = kmin[1]; kj <= (box_.n == 2 ? kmax[1] : kmin[1]); ++kj)
    for (std::int64_t ki = kmin[0]; ki <= kmax[0]; ++ki) {
      DyadicCube q;
      q.grid = g;
      q.level = level;
      q.idx = {ki, box_.n == 2 ? kj : 0};
      if (!cell_range(q).empty()) out.push_back(q);
    }
  return out;
}

DyadicCube ShiftedGridFamily::covering_cube(const RealCube& q) const {
  if (q.n != box_.n) throw ParameterError("covering_cube: dimension mismatch");
  const double h = cell_width();
  if (!(q.side >= h))
    throw ParameterError("covering_cube: cube must span at least one cell");
  if (!(q.side <= box_.side / 6.0))
    throw ParameterError("covering_cube: cube side exceeds box side over six");
  // Finest candidate level: cover side must be at least the cube side.
  int lmax = 0;
  while (lmax < m_ && side_of_level(lmax + 1) >= q.side) ++lmax;
  int best_level = -1;
  DyadicCube best;
  for (int g = 0; g < grids_; ++g) {
    for (int level = lmax; level >= 0; --level) {
      const std::int64_t w = cells_ >> level;
      DyadicCube cand;
      cand.grid = g;
      cand.level = level;
      bool contains = true;
      for (int a = 0; a < box_.n; ++a) {
        const std::int64_t s =
            shifts_[static_cast<std::size_t>(g)][static_cast<std::size_t>(a)];
        const double alo =
            (q.lo[static_cast<std::size_t>(a)] - box_.lo[static_cast<std::size_t>(a)]) / h;
        const double ahi = alo + q.side / h;
        const std::int64_t k = static_cast<std::int64_t>(
            std::floor((alo - static_cast<double>(s)) / static_cast<double>(w)));
        if (ahi > static_cast<double>(s + (k + 1) * w)) {
          contains = false;
          break;
        }
        cand.idx[static_cast<std::size_t>(a)] = k;
      }
      if (contains) {
        if (level > best_level) {
          best_level = level;
          best = cand;
        }
        break;  // coarser levels of this grid only give larger covers
      }
    }
  }
  if (best_level < 0 || side_of_level(best_level) > 6.0 * q.side)
    throw CoverageError("covering_cube: no cover within six times the side");
  return best;
}

CzResult cz_decompose(const ShiftedGridFamily& fam, const GridFunction& f, double lambda) {
  DyadicCube root;
  root.grid = 0;
  root.level = 0;
  root.idx = {0, 0};
  return cz_decompose(fam, f, lambda, root);
}

CzResult cz_decompose(const ShiftedGridFamily& fam, const GridFunction& f, double lambda,
                      const DyadicCube& root) {
  if (!same_geometry(fam.box(), f.box()) || fam.m() != f.m())
    throw AlignmentError("cz_decompose: function and family disagree on geometry");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ParameterError("cz_decompose: lambda must be positive and finite");
  if (root.level < 0 || root.level > fam.max_level())
    throw ParameterError("cz_decompose: root outside family");
  PrefixSums ps(f);
  CzResult res;
  std::vector<DyadicCube> stack;
  stack.push_back(root);
  while (!stack.empty()) {
    DyadicCube q = stack.back();
    stack.pop_back();
    const CellRange r = fam.cell_range(q);
    if (r.empty()) continue;
    if (ps.range_mean(r) > lambda) {
      res.cubes.push_back(q);
      res.covered_cells += r.count();
    } else if (q.level < fam.max_level()) {
      for (const DyadicCube& c : fam.children(q)) stack.push_back(c);
    }
  }
  return res;
}

}  // namespace halab
