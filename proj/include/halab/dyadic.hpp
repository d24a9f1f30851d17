#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "halab/grid.hpp"

namespace halab {

// A cube of one shifted grid: generation `level` (side = box.side / 2^level),
// per-axis integer position.  Positions may stick out of the box; clip to cell
// indices via ShiftedGridFamily::cell_range before touching data.
struct DyadicCube {
  int grid = 0;
  int level = 0;
  std::array<std::int64_t, 2> idx{0, 0};
};

// Real-coordinate footprint of a cube.
struct RealCube {
  int n = 1;
  std::array<double, 2> lo{0.0, 0.0};
  double side = 0.0;
};

// Family of 3^n dyadic lattices over one sampled grid: the standard lattice
// plus translates by roughly one and two thirds of the box in each axis.
// Shifts are snapped to whole cells of the finest level, so every cube of
// every grid is a union of cells and each grid keeps exact nesting.
class ShiftedGridFamily {
 public:
  ShiftedGridFamily(const Box& box, int m);

  int n() const { return box_.n; }
  int m() const { return m_; }
  int grid_count() const { return grids_; }
  int max_level() const { return m_; }
  const Box& box() const { return box_; }
  double cell_width() const { return box_.side / static_cast<double>(cells_); }

  // Cell shift of grid g along axis `axis` (in finest-level cells).
  std::int64_t shift_cells(int g, int axis) const;

  double side_of_level(int level) const;
  RealCube real_cube(const DyadicCube& q) const;

  // Clip a cube (or its 3Q dilation) to the box's cell index ranges.
  CellRange cell_range(const DyadicCube& q) const;
  CellRange dilate3_range(const DyadicCube& q) const;

  // Cube of grid g at `level` whose footprint contains the cell (i,j).
  DyadicCube cube_at(int g, int level, std::int64_t i, std::int64_t j) const;

  DyadicCube parent(const DyadicCube& q) const;
  std::vector<DyadicCube> children(const DyadicCube& q) const;

  // All cubes of grid g at `level` whose footprint meets the box.
  std::vector<DyadicCube> level_cubes(int g, int level) const;

  // Smallest cube of some grid with Q \subset interior-covering footprint and
  // side(cover) <= 6 side(Q).  Requires one cell width <= side <= box.side/6;
  // sub-cell cubes straddling a cell boundary can defeat every cell-aligned
  // lattice, so callers must not pass them.
  DyadicCube covering_cube(const RealCube& q) const;

 private:
  Box box_;
  int m_ = 0;
  int grids_ = 3;
  std::int64_t cells_ = 1;
  std::array<std::array<std::int64_t, 2>, 9> shifts_{};
};

// Stopping cubes of the standard grid (grid 0): maximal dyadic cubes with
// mean(f) > lambda, scanned down from the whole box to single cells.
// Means over non-root stopping cubes exceed lambda by at most 2^n.
struct CzResult {
  std::vector<DyadicCube> cubes;
  // Flat cell indices not covered by any stopping cube.
  std::int64_t covered_cells = 0;
};

CzResult cz_decompose(const ShiftedGridFamily& fam, const GridFunction& f,
                      double lambda);

// Same scan restricted to the subtree below `root` (any grid, any level).
CzResult cz_decompose(const ShiftedGridFamily& fam, const GridFunction& f,
                      double lambda, const DyadicCube& root);

}  // namespace halab
