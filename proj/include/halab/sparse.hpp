#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "halab/dyadic.hpp"
#include "halab/grid.hpp"
#include "halab/maximal.hpp"

namespace halab {

// One member of a sparse family: a standard-grid cube recorded during the
// stopping-time recursion, its tripled footprint (the cube the sparse operator
// actually charges), and the witness cells certifying sparsity.
struct SparseCubeEntry {
  DyadicCube base;                     // pre-dilation stopping cube
  CellRange support;                   // 3*base clipped to the box
  std::vector<std::int64_t> witness;   // flat cell indices, subset of base
};

struct SparseFamily {
  int n = 1;
  int m = 0;
  double eta = 0.0;        // certified sparsity parameter, 1/(2*3^n) as built
  double c2_final = 0.0;   // threshold multiplier after adaptive doubling
  int max_depth = 0;       // deepest recursion node
  bool measure_halving = true;  // children's total measure <= half the parent, every node
  std::vector<SparseCubeEntry> entries;
};

struct SparseBuildOptions {
  double q = 2.0;      // exponent of the pointwise l^q combination
  double beta = 1.0;   // Orlicz scale of the stopping thresholds
  double c2_init = 0.0;        // <= 0 picks the default 2^(n+4)
  int max_doublings = 40;
  std::int64_t op_budget = std::int64_t{1} << 33;
};

// Stopping-time construction: at each node Q the threshold is C2 times the
// Luxemburg norm of ||{f_k}||_q over 3Q; the exceptional set collects cells
// where the combined function or the combined grand-maximal values of the
// masked inputs exceed it; C2 doubles (globally, monotonically) until the
// exceptional set fills at most 2^-(n+2) of Q; its stopping cubes at mean
// 2^-(n+1) become the children.  Witnesses are the parent cells no child
// covers, so sparsity and the halving property are exact integer statements.
SparseFamily build_sparse_family(const ShiftedGridFamily& fam,
                                 const SublinearOperatorHandle& op,
                                 const std::vector<const GridFunction*>& fs,
                                 const DyadicCube& q0, const SparseBuildOptions& options);

struct SparsityReport {
  bool ok = false;
  double worst_ratio = 0.0;  // min over entries of |witness| / |support|
  std::string violation;     // empty when ok
};

// Checks witness containment, pairwise disjointness, and |E_Q| >= eta |Q|
// on the stored cell sets.  For eta = 1/(2*3^n) the measure test is exact
// integer arithmetic.
SparsityReport verify_sparsity(const ShiftedGridFamily& fam, const SparseFamily& family,
                               double eta);

// A_family f = sum over entries of (Luxemburg norm of f over the support
// cube) times its indicator.
GridFunction sparse_operator(const ShiftedGridFamily& fam, const SparseFamily& family,
                             const GridFunction& f, double beta);

// Empirical domination constant: max over cells of ||{T f_k}||_q divided by
// the sparse operator applied to ||{f_k}||_q (machine floor in the quotient).
double domination_ratio(const ShiftedGridFamily& fam, const SublinearOperatorHandle& op,
                        const std::vector<const GridFunction*>& fs,
                        const SparseFamily& family, double q, double beta);

// CSV rows (grid-shift, level, index, witness share); index is i or i:j.
void save_sparse_csv(const ShiftedGridFamily& fam, const SparseFamily& family,
                     const std::string& path);

}  // namespace halab
