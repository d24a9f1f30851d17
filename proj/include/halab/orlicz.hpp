#pragma once

#include <utility>
#include <vector>

#include "halab/dyadic.hpp"
#include "halab/grid.hpp"

namespace halab {

// Root-solve controls shared by the two localized norms.
struct OrliczParams {
  double beta = 1.0;
  double tolerance = 1e-10;
  int max_expansions = 128;
};

// Phi(t) = t log^beta(1+t), the Young function behind the L(log L)^beta norm.
double young_phi(double t, double beta);

// Least lambda with (1/#cells) sum Phi(|v|/lambda) <= 1; 0 for all-zero input.
double luxemburg_norm(const std::vector<double>& cell_values, const OrliczParams& params);
double luxemburg_norm(const GridFunction& f, const CellRange& r, double beta);
double luxemburg_norm(const ShiftedGridFamily& fam, const GridFunction& f,
                      const DyadicCube& q, double beta);

// Least t with (1/#cells) sum exp(|v|/t) <= 2; 0 for all-zero input.
double exp_norm(const std::vector<double>& cell_values, const OrliczParams& params);
double exp_norm(const GridFunction& f, const CellRange& r);
double exp_norm(const ShiftedGridFamily& fam, const GridFunction& f, const DyadicCube& q);

// Mean of |f h| over the cube against the product of the two localized norms.
// The generalized Holder inequality bounds first by twice second.
std::pair<double, double> orlicz_holder_pair(const GridFunction& f, const GridFunction& h,
                                             const CellRange& r, double beta = 1.0);

}  // namespace halab
