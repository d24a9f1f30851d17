#include "halab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "halab/util.hpp"

namespace halab {

namespace {

void check_box(const Box& box) {
  if (box.n != 1 && box.n != 2) throw ParameterError("box: n must be 1 or 2");
  if (!(box.side > 0.0) || !std::isfinite(box.side))
    throw ParameterError("box: side must be positive and finite");
  for (int a = 0; a < box.n; ++a)
    if (!std::isfinite(box.lo[static_cast<std::size_t>(a)]))
      throw ParameterError("box: corner must be finite");
}

}  // namespace

bool same_geometry(const Box& a, const Box& b) {
  if (a.n != b.n || a.side != b.side) return false;
  for (int ax = 0; ax < a.n; ++ax)
    if (a.lo[static_cast<std::size_t>(ax)] != b.lo[static_cast<std::size_t>(ax)]) return false;
  return true;
}

GridFunction::GridFunction(const Box& box, int m) : box_(box), m_(m) {
  check_box(box);
  if (m < 0 || m > 26) throw ParameterError("grid: refinement level out of range");
  cells_ = std::int64_t{1} << m;
  const std::int64_t total = box.n == 2 ? cells_ * cells_ : cells_;
  values_.assign(static_cast<std::size_t>(total), 0.0);
}

GridFunction GridFunction::sample(const Box& box, int m,
                                  const std::function<double(double, double)>& fn) {
  GridFunction g(box, m);
  const double h = g.cell_width();
  if (box.n == 1) {
    for (std::int64_t i = 0; i < g.cells_; ++i)
      g.values_[static_cast<std::size_t>(i)] = fn(box.lo[0] + (i + 0.5) * h, 0.0);
  } else {
    for (std::int64_t j = 0; j < g.cells_; ++j) {
      const double y = box.lo[1] + (j + 0.5) * h;
      for (std::int64_t i = 0; i < g.cells_; ++i)
        g.values_[static_cast<std::size_t>(g.flat_index(i, j))] = fn(box.lo[0] + (i + 0.5) * h, y);
    }
  }
  return g;
}

GridFunction GridFunction::cell_average_1d(
    const Box& box, int m, const std::function<double(double, double)>& mass) {
  if (box.n != 1) throw ParameterError("cell_average_1d: 1-D boxes only");
  GridFunction g(box, m);
  const double h = g.cell_width();
  for (std::int64_t i = 0; i < g.cells_; ++i) {
    const double a = box.lo[0] + i * h;
    g.values_[static_cast<std::size_t>(i)] = mass(a, a + h) / h;
  }
  return g;
}

GridFunction GridFunction::from_values(const Box& box, int m, std::vector<double> values) {
  GridFunction g(box, m);
  if (values.size() != g.values_.size())
    throw ParameterError("from_values: value count does not match grid");
  g.values_ = std::move(values);
  return g;
}

double GridFunction::cell_volume() const {
  const double h = cell_width();
  return box_.n == 2 ? h * h : h;
}

std::array<double, 2> GridFunction::cell_center(std::int64_t flat) const {
  const double h = cell_width();
  std::array<double, 2> c{0.0, 0.0};
  if (box_.n == 1) {
    c[0] = box_.lo[0] + (flat + 0.5) * h;
  } else {
    const std::int64_t i = flat % cells_;
    const std::int64_t j = flat / cells_;
    c[0] = box_.lo[0] + (i + 0.5) * h;
    c[1] = box_.lo[1] + (j + 0.5) * h;
  }
  return c;
}

CellRange GridFunction::full_range() const {
  CellRange r;
  r.n = box_.n;
  r.lo = {0, 0};
  r.hi = {cells_, box_.n == 2 ? cells_ : 1};
  if (box_.n == 1) r.hi[1] = 1;
  return r;
}

namespace {
constexpr char kMagic[8] = {'g', 'r', 'd', 'f', 'n', '1', '\n', '\0'};
}

void GridFunction::save_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("save_binary: cannot open " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::int32_t n32 = box_.n, m32 = m_;
  out.write(reinterpret_cast<const char*>(&n32), sizeof(n32));
  out.write(reinterpret_cast<const char*>(&m32), sizeof(m32));
  out.write(reinterpret_cast<const char*>(box_.lo.data()), sizeof(double) * 2);
  out.write(reinterpret_cast<const char*>(&box_.side), sizeof(double));
  out.write(reinterpret_cast<const char*>(values_.data()),
            static_cast<std::streamsize>(values_.size() * sizeof(double)));
  if (!out) throw ParameterError("save_binary: write failed for " + path);
}

GridFunction GridFunction::load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("load_binary: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ParameterError("load_binary: bad header in " + path);
  std::int32_t n32 = 0, m32 = 0;
  in.read(reinterpret_cast<char*>(&n32), sizeof(n32));
  in.read(reinterpret_cast<char*>(&m32), sizeof(m32));
  Box box;
  box.n = n32;
  in.read(reinterpret_cast<char*>(box.lo.data()), sizeof(double) * 2);
  in.read(reinterpret_cast<char*>(&box.side), sizeof(double));
  if (!in) throw ParameterError("load_binary: truncated header in " + path);
  GridFunction g(box, m32);
  in.read(reinterpret_cast<char*>(g.values_.data()),
          static_cast<std::streamsize>(g.values_.size() * sizeof(double)));
  if (!in) throw ParameterError("load_binary: truncated payload in " + path);
  return g;
}

void GridFunction::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParameterError("save_csv: cannot open " + path);
  out << "n,m,lo0,lo1,side\n";
  out << box_.n << ',' << m_ << ',' << format_double(box_.lo[0]) << ','
      << format_double(box_.lo[1]) << ',' << format_double(box_.side) << '\n';
  out << "flat,value\n";
  for (std::size_t k = 0; k < values_.size(); ++k)
    out << k << ',' << format_double(values_[k]) << '\n';
  if (!out) throw ParameterError("save_csv: write failed for " + path);
}

GridFunction GridFunction::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("load_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("load_csv: empty file " + path);
  if (!std::getline(in, line)) throw ParameterError("load_csv: missing header row");
  Box box;
  int m = 0;
  if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf", &box.n, &m, &box.lo[0], &box.lo[1],
                  &box.side) != 5)
    throw ParameterError("load_csv: malformed header row");
  if (!std::getline(in, line)) throw ParameterError("load_csv: missing column row");
  GridFunction g(box, m);
  for (std::size_t k = 0; k < g.values_.size(); ++k) {
    if (!std::getline(in, line)) throw ParameterError("load_csv: truncated payload");
    long long flat = 0;
    double v = 0.0;
    if (std::sscanf(line.c_str(), "%lld,%lf", &flat, &v) != 2 ||
        flat != static_cast<long long>(k))
      throw ParameterError("load_csv: malformed payload row");
    g.values_[k] = v;
  }
  return g;
}

double integral(const GridFunction& f) { return integral(f, f.full_range()); }

double integral(const GridFunction& f, const CellRange& r) {
  if (r.empty()) return 0.0;
  double s = 0.0;
  if (f.n() == 1) {
    for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i) s += f.value(i);
  } else {
    for (std::int64_t j = r.lo[1]; j < r.hi[1]; ++j)
      for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i) s += f.value(f.flat_index(i, j));
  }
  return s * f.cell_volume();
}

double mean(const GridFunction& f, const CellRange& r) {
  const std::int64_t c = r.count();
  if (c == 0) throw ParameterError("mean: empty cell range");
  return integral(f, r) / (static_cast<double>(c) * f.cell_volume());
}

PrefixSums::PrefixSums(const GridFunction& f) {
  nx_ = f.cells_per_axis();
  ny_ = f.n() == 2 ? nx_ : 1;
  table_.assign(static_cast<std::size_t>((nx_ + 1) * (ny_ + 1)), 0.0);
  const auto at = [this](std::int64_t i, std::int64_t j) -> double& {
    return table_[static_cast<std::size_t>(i + (nx_ + 1) * j)];
  };
  for (std::int64_t j = 0; j < ny_; ++j) {
    double row = 0.0;
    for (std::int64_t i = 0; i < nx_; ++i) {
      row += f.value(f.n() == 2 ? f.flat_index(i, j) : i);
      at(i + 1, j + 1) = at(i + 1, j) + row;
    }
  }
}

double PrefixSums::cell_sum(const CellRange& r) const {
  std::int64_t x0 = r.lo[0], x1 = r.hi[0];
  std::int64_t y0 = r.n == 2 ? r.lo[1] : 0, y1 = r.n == 2 ? r.hi[1] : 1;
  if (x0 < 0) x0 = 0;
  if (y0 < 0) y0 = 0;
  if (x1 > nx_) x1 = nx_;
  if (y1 > ny_) y1 = ny_;
  if (x0 >= x1 || y0 >= y1) return 0.0;
  const auto at = [this](std::int64_t i, std::int64_t j) {
    return table_[static_cast<std::size_t>(i + (nx_ + 1) * j)];
  };
  return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
}

double PrefixSums::range_mean(const CellRange& r) const {
  const std::int64_t c = r.count();
  if (c == 0) throw ParameterError("range_mean: empty cell range");
  return cell_sum(r) / static_cast<double>(c);
}

}  // namespace halab
