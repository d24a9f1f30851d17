#include "halab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "halab/orlicz.hpp"
#include "halab/util.hpp"
#include "halab/weights.hpp"

namespace halab {

namespace {

struct BuildState {
  const ShiftedGridFamily* fam = nullptr;
  const SublinearOperatorHandle* op = nullptr;
  const std::vector<const GridFunction*>* fs = nullptr;
  const GridFunction* combined = nullptr;
  SparseBuildOptions options;
  double c2 = 0.0;
  int doublings_left = 0;
  SparseFamily* out = nullptr;
};

void build_node(BuildState& st, const DyadicCube& q0, int depth) {
  const ShiftedGridFamily& fam = *st.fam;
  const CellRange r0 = fam.cell_range(q0);
  if (r0.empty()) return;
  const CellRange r3 = fam.dilate3_range(q0);
  const double lam = luxemburg_norm(*st.combined, r3, st.options.beta);
  if (lam <= 0.0) return;  // inputs vanish on 3Q: nothing to dominate

  st.out->max_depth = std::max(st.out->max_depth, depth);

  // l^q combination of the grand-maximal values of the masked inputs over Q.
  const std::size_t count0 = static_cast<std::size_t>(r0.count());
  std::vector<double> mt(count0, 0.0);
  const bool qinf = std::isinf(st.options.q);
  for (const GridFunction* f : *st.fs) {
    const std::vector<double> one = grand_maximal_values(
        fam, *st.op, *f, r3, r0, fam.max_level(), st.options.op_budget);
    for (std::size_t c = 0; c < count0; ++c)
      mt[c] = qinf ? std::max(mt[c], std::abs(one[c]))
                   : mt[c] + std::pow(std::abs(one[c]), st.options.q);
  }
  if (!qinf)
    for (double& v : mt) v = std::pow(v, 1.0 / st.options.q);

  const GridFunction& g = *st.combined;
  const auto eval_offset = [&](std::int64_t i, std::int64_t j) {
    return static_cast<std::size_t>((i - r0.lo[0]) +
                                    (r0.n == 2 ? (r0.hi[0] - r0.lo[0]) * (j - r0.lo[1]) : 0));
  };

  // Exceptional cells at the current threshold; C2 doubles until they fill at
  // most 2^-(n+2) of Q (integer comparison, exact).
  std::vector<std::int64_t> exceptional;
  for (;;) {
    const double threshold = st.c2 * lam;
    exceptional.clear();
    for (std::int64_t j = r0.lo[1]; j < r0.hi[1]; ++j)
      for (std::int64_t i = r0.lo[0]; i < r0.hi[0]; ++i) {
        const std::int64_t flat = g.n() == 2 ? g.flat_index(i, j) : i;
        if (std::abs(g.value(flat)) > threshold || mt[eval_offset(i, j)] > threshold)
          exceptional.push_back(flat);
      }
    if (static_cast<std::int64_t>(exceptional.size()) * (std::int64_t{1} << (fam.n() + 2)) <=
        r0.count())
      break;
    if (st.doublings_left-- <= 0)
      throw ConstructionError(
          "build_sparse_family: threshold doubling cap reached; the operator handle "
          "violates the weak-type behaviour the construction relies on");
    st.c2 *= 2.0;
  }

  GridFunction chi(g.box(), g.m());
  for (std::int64_t flat : exceptional) chi.value(flat) = 1.0;
  const double stop_level = std::ldexp(1.0, -(fam.n() + 1));
  CzResult stopping = cz_decompose(fam, chi, stop_level, q0);
  std::sort(stopping.cubes.begin(), stopping.cubes.end(),
            [](const DyadicCube& a, const DyadicCube& b) {
              if (a.level != b.level) return a.level < b.level;
              if (a.idx[1] != b.idx[1]) return a.idx[1] < b.idx[1];
              return a.idx[0] < b.idx[0];
            });

  // Witness: parent cells not covered by any child.  The children are
  // disjoint cells subsets of Q, so set subtraction is a mark pass.
  std::vector<char> covered(count0, 0);
  std::int64_t covered_cells = 0;
  for (const DyadicCube& p : stopping.cubes) {
    const CellRange rp = fam.cell_range(p);
    covered_cells += rp.count();
    for (std::int64_t j = rp.lo[1]; j < rp.hi[1]; ++j)
      for (std::int64_t i = rp.lo[0]; i < rp.hi[0]; ++i) covered[eval_offset(i, j)] = 1;
  }
  if (2 * covered_cells > r0.count()) st.out->measure_halving = false;

  SparseCubeEntry entry;
  entry.base = q0;
  entry.support = r3;
  entry.witness.reserve(count0 - static_cast<std::size_t>(covered_cells));
  for (std::int64_t j = r0.lo[1]; j < r0.hi[1]; ++j)
    for (std::int64_t i = r0.lo[0]; i < r0.hi[0]; ++i)
      if (!covered[eval_offset(i, j)])
        entry.witness.push_back(g.n() == 2 ? g.flat_index(i, j) : i);
  st.out->entries.push_back(std::move(entry));

  for (const DyadicCube& p : stopping.cubes) build_node(st, p, depth + 1);
}

}  // namespace

SparseFamily build_sparse_family(const ShiftedGridFamily& fam,
                                 const SublinearOperatorHandle& op,
                                 const std::vector<const GridFunction*>& fs,
                                 const DyadicCube& q0, const SparseBuildOptions& options) {
  if (fs.empty()) throw ParameterError("build_sparse_family: empty function sequence");
  for (const GridFunction* f : fs) {
    if (f == nullptr) throw ParameterError("build_sparse_family: null function");
    if (!same_geometry(fam.box(), f->box()) || fam.m() != f->m())
      throw AlignmentError("build_sparse_family: function and family disagree on geometry");
  }
  if (!(options.q > 1.0)) throw ParameterError("build_sparse_family: q must exceed 1");
  if (options.beta < 0.0) throw ParameterError("build_sparse_family: beta must be nonnegative");
  if (q0.grid != 0) throw ParameterError("build_sparse_family: root must live on the standard grid");

  SparseFamily out;
  out.n = fam.n();
  out.m = fam.m();
  out.eta = 0.5 / std::pow(3.0, fam.n());

  const GridFunction combined = lq_combine(fs, options.q);

  BuildState st;
  st.fam = &fam;
  st.op = &op;
  st.fs = &fs;
  st.combined = &combined;
  st.options = options;
  st.c2 = options.c2_init > 0.0 ? options.c2_init : std::ldexp(1.0, fam.n() + 4);
  st.doublings_left = options.max_doublings;
  st.out = &out;
  build_node(st, q0, 0);
  out.c2_final = st.c2;

  std::sort(out.entries.begin(), out.entries.end(),
            [](const SparseCubeEntry& a, const SparseCubeEntry& b) {
              if (a.base.level != b.base.level) return a.base.level < b.base.level;
              if (a.base.idx[1] != b.base.idx[1]) return a.base.idx[1] < b.base.idx[1];
              if (a.base.idx[0] != b.base.idx[0]) return a.base.idx[0] < b.base.idx[0];
              return a.base.grid < b.base.grid;
            });
  return out;
}

SparsityReport verify_sparsity(const ShiftedGridFamily& fam, const SparseFamily& family,
                               double eta) {
  SparsityReport rep;
  rep.ok = true;
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  if (family.entries.empty()) {
    rep.worst_ratio = 0.0;
    return rep;
  }
  const std::int64_t den = 2 * static_cast<std::int64_t>(std::llround(std::pow(3.0, fam.n())));
  const bool canonical = std::abs(eta * static_cast<double>(den) - 1.0) < 1e-12;

  std::vector<char> seen(static_cast<std::size_t>(
                             fam.n() == 2 ? (std::int64_t{1} << (2 * fam.m())) : (std::int64_t{1} << fam.m())),
                         0);
  for (const SparseCubeEntry& entry : family.entries) {
    const CellRange base = fam.cell_range(entry.base);
    const std::int64_t support_cells = entry.support.count();
    const std::int64_t witness_cells = static_cast<std::int64_t>(entry.witness.size());
    if (support_cells == 0) {
      rep.ok = false;
      rep.violation = "entry with empty support";
      return rep;
    }
    for (std::int64_t flat : entry.witness) {
      const std::int64_t i = fam.n() == 2 ? flat % (std::int64_t{1} << fam.m()) : flat;
      const std::int64_t j = fam.n() == 2 ? flat / (std::int64_t{1} << fam.m()) : 0;
      const bool in_base = i >= base.lo[0] && i < base.hi[0] &&
                           (fam.n() == 1 || (j >= base.lo[1] && j < base.hi[1]));
      if (!in_base) {
        rep.ok = false;
        rep.violation = "witness cell outside its cube";
        return rep;
      }
      if (seen[static_cast<std::size_t>(flat)]) {
        rep.ok = false;
        rep.violation = "witness cells of two entries overlap";
        return rep;
      }
      seen[static_cast<std::size_t>(flat)] = 1;
    }
    const bool enough = canonical
                            ? witness_cells * den >= support_cells
                            : static_cast<double>(witness_cells) >=
                                  eta * static_cast<double>(support_cells);
    if (!enough) {
      rep.ok = false;
      rep.violation = "witness smaller than eta times the cube";
      return rep;
    }
    rep.worst_ratio = std::min(
        rep.worst_ratio, static_cast<double>(witness_cells) / static_cast<double>(support_cells));
  }
  return rep;
}

GridFunction sparse_operator(const ShiftedGridFamily& fam, const SparseFamily& family,
                             const GridFunction& f, double beta) {
  if (!same_geometry(fam.box(), f.box()) || fam.m() != f.m())
    throw AlignmentError("sparse_operator: function and family disagree on geometry");
  GridFunction out(f.box(), f.m());
  for (const SparseCubeEntry& entry : family.entries) {
    const CellRange r = entry.support;
    if (r.count() == 0) continue;
    const double norm = luxemburg_norm(f, r, beta);
    if (norm <= 0.0) continue;
    for (std::int64_t j = r.lo[1]; j < r.hi[1]; ++j)
      for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i)
        out.value(out.n() == 2 ? out.flat_index(i, j) : i) += norm;
  }
  return out;
}

double domination_ratio(const ShiftedGridFamily& fam, const SublinearOperatorHandle& op,
                        const std::vector<const GridFunction*>& fs,
                        const SparseFamily& family, double q, double beta) {
  if (fs.empty()) throw ParameterError("domination_ratio: empty function sequence");
  const GridFunction combined = lq_combine(fs, q);
  const GridFunction bound = sparse_operator(fam, family, combined, beta);

  const GridFunction& first = *fs.front();
  const CellRange full = first.full_range();
  std::vector<std::int64_t> cells(static_cast<std::size_t>(first.cell_count()));
  for (std::int64_t c = 0; c < first.cell_count(); ++c) cells[static_cast<std::size_t>(c)] = c;
  CellSelector sel;
  sel.keep = full;

  const bool qinf = std::isinf(q);
  std::vector<double> lhs(cells.size(), 0.0);
  for (const GridFunction* f : fs) {
    const std::vector<double> tv = op.apply_at(*f, sel, cells);
    for (std::size_t c = 0; c < cells.size(); ++c)
      lhs[c] = qinf ? std::max(lhs[c], std::abs(tv[c])) : lhs[c] + std::pow(std::abs(tv[c]), q);
  }
  double worst = 0.0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const double num = qinf ? lhs[c] : std::pow(lhs[c], 1.0 / q);
    const double den = std::max(bound.value(static_cast<std::int64_t>(c)), 1e-300);
    worst = std::max(worst, num / den);
  }
  return worst;
}

void save_sparse_csv(const ShiftedGridFamily& fam, const SparseFamily& family,
                     const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "wb");
  if (out == nullptr) throw ParameterError("save_sparse_csv: cannot open " + path);
  std::fputs("grid,level,index,witness_share\n", out);
  for (const SparseCubeEntry& entry : family.entries) {
    const CellRange base = fam.cell_range(entry.base);
    const double share =
        base.count() > 0
            ? static_cast<double>(entry.witness.size()) / static_cast<double>(base.count())
            : 0.0;
    std::string index = std::to_string(entry.base.idx[0]);
    if (fam.n() == 2) index += ":" + std::to_string(entry.base.idx[1]);
    std::fprintf(out, "%d,%d,%s,%s\n", entry.base.grid, entry.base.level, index.c_str(),
                 format_double(share).c_str());
  }
  std::fclose(out);
}

}  // namespace halab
