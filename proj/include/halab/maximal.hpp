#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "halab/dyadic.hpp"
#include "halab/grid.hpp"

namespace halab {

// Per-cell sup of mean |f| over containing cubes of one grid (top-down pass).
GridFunction dyadic_maximal(const ShiftedGridFamily& fam, const GridFunction& f, int grid);

// Max of dyadic_maximal over all 3^n shifted grids.
GridFunction shifted_maximal(const ShiftedGridFamily& fam, const GridFunction& f);

// Uncentered Hardy-Littlewood maximal: exact over all cell-aligned windows in
// 1-D; the shifted-family maximal serves as the 2-D surrogate.
GridFunction hl_maximal(const ShiftedGridFamily& fam, const GridFunction& f);

// (M(|f|^delta))^{1/delta} over the shifted family.
GridFunction m_delta(const ShiftedGridFamily& fam, const GridFunction& f, double delta);

// Dyadic sharp maximal on the standard grid: per cube the least mean absolute
// deviation over constants, attained at the cell median.
GridFunction sharp_maximal(const ShiftedGridFamily& fam, const GridFunction& f);
GridFunction sharp_maximal_delta(const ShiftedGridFamily& fam, const GridFunction& f,
                                 double delta);

// sup over containing cubes of all grids of the localized Luxemburg norm.
GridFunction orlicz_maximal(const ShiftedGridFamily& fam, const GridFunction& f, double beta);

// M(M f) per grid, then max over grids.
GridFunction iterated_maximal(const ShiftedGridFamily& fam, const GridFunction& f);

// Cell subset shaped as "inside keep, outside minus" (enough for every cutoff
// this library forms: supports and 3Q complements are cell ranges).
struct CellSelector {
  CellRange keep;
  CellRange minus;  // empty range excludes nothing

  bool contains(std::int64_t i, std::int64_t j) const {
    const auto inside = [&](const CellRange& r) {
      if (i < r.lo[0] || i >= r.hi[0]) return false;
      if (r.n == 2 && (j < r.lo[1] || j >= r.hi[1])) return false;
      return true;
    };
    return inside(keep) && !(minus.count() > 0 && inside(minus));
  }
};

// Evaluator for T(f restricted to a cell subset) at chosen cells, plus a
// declared boundedness hint (assumed, not enforced).
struct SublinearOperatorHandle {
  std::function<std::vector<double>(const GridFunction& f, const CellSelector& sel,
                                    const std::vector<std::int64_t>& cells)>
      apply_at;
  bool bounded_hint = true;
};

// Grand maximal: per cell x, sup over family cubes Q containing x (levels
// 0..max_level) of max_{cells xi of Q} |T(f restricted outside 3Q)(xi)|.
// keep further restricts f's support (used by the sparse recursion);
// eval limits where output is produced.  Budget counts selector evaluations.
std::vector<double> grand_maximal_values(const ShiftedGridFamily& fam,
                                         const SublinearOperatorHandle& op,
                                         const GridFunction& f, const CellRange& keep,
                                         const CellRange& eval, int max_level,
                                         std::int64_t budget);

GridFunction grand_maximal(const ShiftedGridFamily& fam, const SublinearOperatorHandle& op,
                           const GridFunction& f, int max_level,
                           std::int64_t budget = std::int64_t{1} << 33);

}  // namespace halab
