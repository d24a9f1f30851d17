#pragma once

#include <vector>

#include "halab/amplitude.hpp"
#include "halab/dyadic.hpp"
#include "halab/grid.hpp"
#include "halab/kernel.hpp"
#include "halab/maximal.hpp"

namespace halab {

// Truncated operator: midpoint quadrature of
//   Omega(x-y)|x-y|^{-n-1}(A(x)-A(y)-gradA(y).(x-y)) f(y)
// over cells with center distance at least eps.
GridFunction t_a_epsilon(const SphericalKernel& k, const Amplitude& a, const GridFunction& f,
                         double eps);

// One pass over the dyadic truncation ladder eps_j = cell width * 2^j:
// finest holds the smallest-eps values, sup_abs the per-cell max |T_eps|, and
// increments the global max cell change at each halving, coarse to fine.
struct LadderResult {
  GridFunction finest;
  GridFunction sup_abs;
  std::vector<double> increments;
};
LadderResult t_a_ladder(const SphericalKernel& k, const Amplitude& a, const GridFunction& f);

// Principal-value evaluation: smallest-eps values plus the Cauchy diagnostic.
// cauchy_ok records whether the final halving changed less than the one
// before it; a false flag is a warning, not an error.
struct PvResult {
  GridFunction value;
  std::vector<double> increments;
  bool cauchy_ok = true;
};
PvResult t_a(const SphericalKernel& k, const Amplitude& a, const GridFunction& f);

GridFunction t_a_star(const SphericalKernel& k, const Amplitude& a, const GridFunction& f);

// Grand-maximal-ready evaluator of the smallest-eps truncation under a cell
// cutoff.  Amplitude values and gradients are cached per grid geometry at
// construction.
SublinearOperatorHandle t_a_handle(const SphericalKernel& k, const Amplitude& a, const Box& box,
                                   int m);

// Triangle-inequality mass of the smallest-eps quadrature: same sum with all
// kernel factors replaced by absolute values.  The natural scale for
// asserting exact cancellations (affine amplitudes).
GridFunction t_a_magnitude_scale(const SphericalKernel& k, const Amplitude& a,
                                 const GridFunction& f);

// sup over family cubes (levels 0..depth) of the mean oscillation of g.
double bmo_seminorm(const ShiftedGridFamily& fam, const GridFunction& g, int depth);

}  // namespace halab
