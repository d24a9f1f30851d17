#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "halab/common.hpp"

namespace halab {

// Half-open axis-aligned box [lo, lo+side)^n with n = 1 or 2.
struct Box {
  int n = 1;
  std::array<double, 2> lo{0.0, 0.0};
  double side = 1.0;
};

bool same_geometry(const Box& a, const Box& b);

// Half-open per-axis cell index ranges [lo, hi).  A rasterized cube.
struct CellRange {
  int n = 1;
  std::array<std::int64_t, 2> lo{0, 0};
  std::array<std::int64_t, 2> hi{0, 0};

  std::int64_t count() const {
    std::int64_t c = hi[0] - lo[0];
    if (n == 2) c *= (hi[1] - lo[1]);
    return c > 0 ? c : 0;
  }
  bool empty() const { return count() == 0; }
};

// A function sampled on the uniform 2^m-per-axis cell grid of a box, one
// value per cell, zero extension outside the box.  Integrals over
// cell-aligned regions are exact sums of cell values times cell volume.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(const Box& box, int m);

  // Cell values from a pointwise sample at cell midpoints.
  static GridFunction sample(const Box& box, int m,
                             const std::function<double(double, double)>& fn);
  // 1-D only: cell values as exact cell averages, mass(a,b) = integral over [a,b).
  static GridFunction cell_average_1d(const Box& box, int m,
                                      const std::function<double(double, double)>& mass);
  static GridFunction from_values(const Box& box, int m, std::vector<double> values);

  const Box& box() const { return box_; }
  int n() const { return box_.n; }
  int m() const { return m_; }
  std::int64_t cells_per_axis() const { return cells_; }
  std::int64_t cell_count() const { return static_cast<std::int64_t>(values_.size()); }
  double cell_width() const { return box_.side / static_cast<double>(cells_); }
  double cell_volume() const;

  double value(std::int64_t flat) const { return values_[static_cast<std::size_t>(flat)]; }
  double& value(std::int64_t flat) { return values_[static_cast<std::size_t>(flat)]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  std::int64_t flat_index(std::int64_t i, std::int64_t j) const { return i + cells_ * j; }
  std::array<double, 2> cell_center(std::int64_t flat) const;
  CellRange full_range() const;

  void save_binary(const std::string& path) const;
  static GridFunction load_binary(const std::string& path);
  void save_csv(const std::string& path) const;
  static GridFunction load_csv(const std::string& path);

 private:
  Box box_;
  int m_ = 0;
  std::int64_t cells_ = 1;
  std::vector<double> values_;
};

// Exact cell-sum integrals/means over cell-aligned ranges.
double integral(const GridFunction& f);
double integral(const GridFunction& f, const CellRange& r);
double mean(const GridFunction& f, const CellRange& r);

// Prefix-sum table for O(1) range sums on hot paths (1-D prefix or 2-D
// summed-area).  Sums are of raw cell values; multiply by cell volume for
// integrals.
class PrefixSums {
 public:
  explicit PrefixSums(const GridFunction& f);
  double cell_sum(const CellRange& r) const;
  double range_mean(const CellRange& r) const;

 private:
  std::int64_t nx_ = 0, ny_ = 0;
  std::vector<double> table_;
};

}  // namespace halab
