#pragma once

#include <vector>

#include "halab/dyadic.hpp"
#include "halab/grid.hpp"

namespace halab {

// Means over clipped cubes divide by the cell count actually inside the box,
// so every reported average is a true average of stored cells.

// sup over family cubes of levels 0..depth of <w>_Q <w^{-1/(p-1)}>_Q^{p-1}.
double ap_constant(const ShiftedGridFamily& fam, const GridFunction& w, double p, int depth);

// Same sup but with a caller-supplied dual weight (used when sigma is known
// in closed form more accurately than a pointwise power of the w samples).
double ap_constant_pair(const ShiftedGridFamily& fam, const GridFunction& w,
                        const GridFunction& sigma, double p, int depth);

// A_p product of one cube.
double ap_product(const ShiftedGridFamily& fam, const GridFunction& w,
                  const GridFunction& sigma, double p, const DyadicCube& q);

// sup over cubes of <w>_Q / min_Q w.
double a1_constant(const ShiftedGridFamily& fam, const GridFunction& w, int depth);

// Fujii-Wilson constant: sup over family cubes Q of u(Q)^{-1} int_Q M(u chi_Q),
// with M the shifted-family maximal operator restricted to Q.
double ainf_constant(const ShiftedGridFamily& fam, const GridFunction& u, int depth);

GridFunction dual_weight(const GridFunction& w, double p);

double weighted_lp_norm(const GridFunction& f, const GridFunction& w, double p);

// l^q pointwise combination of a function sequence (q = infinity as max).
GridFunction lq_combine(const std::vector<const GridFunction*>& fs, double q);

// ||{f_k}||_{L^p(l^q, w)} by exact cell sums.
double vector_lp_lq_norm(const std::vector<const GridFunction*>& fs, const GridFunction& w,
                         double p, double q);

// sup_{v>0} v^p w({||{f_k}||_q >= v}), maximized over attained cell values.
double vector_weak_lp_lq(const std::vector<const GridFunction*>& fs, const GridFunction& w,
                         double p, double q);

// Weighted measure of the super-level set {g > level}.
double weighted_superlevel_measure(const GridFunction& g, const GridFunction& w, double level);

}  // namespace halab
