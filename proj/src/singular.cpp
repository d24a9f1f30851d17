#include "halab/singular.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>

#include "halab/common.hpp"

namespace halab {

namespace {

// Cell-center amplitude caches; every kernel evaluation reads these instead
// of re-evaluating the analytic closures.
struct AmplitudeCache {
  int n = 1;
  std::int64_t cells = 0;  // per axis
  double h = 0.0;
  double vol = 0.0;
  std::vector<double> a;   // A at centers
  std::vector<double> g0;  // gradient components at centers
  std::vector<double> g1;

  AmplitudeCache(const Amplitude& amp, const Box& box, int m) {
    n = box.n;
    cells = std::int64_t{1} << m;
    h = box.side / static_cast<double>(cells);
    vol = n == 2 ? h * h : h;
    const std::int64_t total = n == 2 ? cells * cells : cells;
    a.resize(static_cast<std::size_t>(total));
    g0.resize(static_cast<std::size_t>(total));
    g1.resize(static_cast<std::size_t>(total), 0.0);
    for (std::int64_t c = 0; c < total; ++c) {
      const std::int64_t i = n == 2 ? c % cells : c;
      const std::int64_t j = n == 2 ? c / cells : 0;
      const double x0 = box.lo[0] + (i + 0.5) * h;
      const double x1 = n == 2 ? box.lo[1] + (j + 0.5) * h : 0.0;
      a[static_cast<std::size_t>(c)] = amp.value(x0, x1);
      const std::array<double, 2> g = amp.gradient(x0, x1);
      g0[static_cast<std::size_t>(c)] = g[0];
      if (n == 2) g1[static_cast<std::size_t>(c)] = g[1];
    }
  }
};

int shell_of(std::int64_t di, std::int64_t dj) {
  const std::uint64_t rr = static_cast<std::uint64_t>(di * di + dj * dj);
  // floor(log2 sqrt(rr)) = floor(log2(rr))/2 for rr >= 1
  return (63 - std::countl_zero(rr)) >> 1;
}

void check_geometry(const SphericalKernel& k, const GridFunction& f, const char* what) {
  if (k.n != f.n()) throw ParameterError(std::string(what) + ": kernel dimension mismatch");
}

}  // namespace

GridFunction t_a_epsilon(const SphericalKernel& k, const Amplitude& a, const GridFunction& f,
                         double eps) {
  check_geometry(k, f, "t_a_epsilon");
  const double h = f.cell_width();
  if (!(eps >= h))
    throw ResolutionError("t_a_epsilon: eps below one cell width; refine the grid or raise eps");
  const AmplitudeCache ac(a, f.box(), f.m());
  const std::int64_t nc = f.cells_per_axis();
  GridFunction out(f.box(), f.m());
  const std::int64_t total = f.cell_count();
  for (std::int64_t x = 0; x < total; ++x) {
    const std::int64_t xi = f.n() == 2 ? x % nc : x;
    const std::int64_t xj = f.n() == 2 ? x / nc : 0;
    double s = 0.0;
    for (std::int64_t y = 0; y < total; ++y) {
      if (y == x || f.value(y) == 0.0) continue;
      const std::int64_t yi = f.n() == 2 ? y % nc : y;
      const std::int64_t yj = f.n() == 2 ? y / nc : 0;
      const double u0 = static_cast<double>(xi - yi) * h;
      const double u1 = static_cast<double>(xj - yj) * h;
      const double dist = f.n() == 2 ? std::hypot(u0, u1) : std::abs(u0);
      if (dist < eps) continue;
      const double num = ac.a[static_cast<std::size_t>(x)] - ac.a[static_cast<std::size_t>(y)] -
                         (ac.g0[static_cast<std::size_t>(y)] * u0 +
                          ac.g1[static_cast<std::size_t>(y)] * u1);
      const double dpow = f.n() == 2 ? dist * dist * dist : dist * dist;
      s += k.at_direction(u0, u1) / dpow * num * f.value(y);
    }
    out.value(x) = s * ac.vol;
  }
  return out;
}

LadderResult t_a_ladder(const SphericalKernel& k, const Amplitude& a, const GridFunction& f) {
  check_geometry(k, f, "t_a_ladder");
  const AmplitudeCache ac(a, f.box(), f.m());
  const double h = f.cell_width();
  const std::int64_t nc = f.cells_per_axis();
  const std::int64_t total = f.cell_count();
  const int shells = shell_of(nc - 1, f.n() == 2 ? nc - 1 : 0) + 1;
  LadderResult res{GridFunction(f.box(), f.m()), GridFunction(f.box(), f.m()),
                   std::vector<double>(static_cast<std::size_t>(shells), 0.0)};
  std::vector<double> bins(static_cast<std::size_t>(shells));
  for (std::int64_t x = 0; x < total; ++x) {
    const std::int64_t xi = f.n() == 2 ? x % nc : x;
    const std::int64_t xj = f.n() == 2 ? x / nc : 0;
    std::fill(bins.begin(), bins.end(), 0.0);
    for (std::int64_t y = 0; y < total; ++y) {
      if (y == x || f.value(y) == 0.0) continue;
      const std::int64_t yi = f.n() == 2 ? y % nc : y;
      const std::int64_t yj = f.n() == 2 ? y / nc : 0;
      const double u0 = static_cast<double>(xi - yi) * h;
      const double u1 = static_cast<double>(xj - yj) * h;
      const double num = ac.a[static_cast<std::size_t>(x)] - ac.a[static_cast<std::size_t>(y)] -
                         (ac.g0[static_cast<std::size_t>(y)] * u0 +
                          ac.g1[static_cast<std::size_t>(y)] * u1);
      double dpow;
      if (f.n() == 2) {
        const double dist = std::hypot(u0, u1);
        dpow = dist * dist * dist;
      } else {
        dpow = u0 * u0;
      }
      bins[static_cast<std::size_t>(shell_of(xi - yi, xj - yj))] +=
          k.at_direction(u0, u1) / dpow * num * f.value(y);
    }
    // suffix sums climb the ladder from the coarsest truncation down
    double run = 0.0, sup = 0.0;
    for (int j = shells - 1; j >= 0; --j) {
      const double piece = bins[static_cast<std::size_t>(j)] * ac.vol;
      run += piece;
      sup = std::max(sup, std::abs(run));
      std::size_t slot = static_cast<std::size_t>(shells - 1 - j);
      res.increments[slot] = std::max(res.increments[slot], std::abs(piece));
    }
    res.finest.value(x) = run;
    res.sup_abs.value(x) = sup;
  }
  return res;
}

PvResult t_a(const SphericalKernel& k, const Amplitude& a, const GridFunction& f) {
  LadderResult lad = t_a_ladder(k, a, f);
  PvResult res{std::move(lad.finest), std::move(lad.increments), true};
  const std::size_t s = res.increments.size();
  if (s >= 2) {
    double scale = 0.0;
    for (std::int64_t c = 0; c < res.value.cell_count(); ++c)
      scale = std::max(scale, std::abs(res.value.value(c)));
    res.cauchy_ok = res.increments[s - 1] <= res.increments[s - 2] + 1e-12 * scale;
  }
  return res;
}

GridFunction t_a_star(const SphericalKernel& k, const Amplitude& a, const GridFunction& f) {
  return t_a_ladder(k, a, f).sup_abs;
}

GridFunction t_a_magnitude_scale(const SphericalKernel& k, const Amplitude& a,
                                 const GridFunction& f) {
  check_geometry(k, f, "t_a_magnitude_scale");
  const AmplitudeCache ac(a, f.box(), f.m());
  const double h = f.cell_width();
  const std::int64_t nc = f.cells_per_axis();
  const std::int64_t total = f.cell_count();
  GridFunction out(f.box(), f.m());
  for (std::int64_t x = 0; x < total; ++x) {
    const std::int64_t xi = f.n() == 2 ? x % nc : x;
    const std::int64_t xj = f.n() == 2 ? x / nc : 0;
    double s = 0.0;
    for (std::int64_t y = 0; y < total; ++y) {
      if (y == x || f.value(y) == 0.0) continue;
      const std::int64_t yi = f.n() == 2 ? y % nc : y;
      const std::int64_t yj = f.n() == 2 ? y / nc : 0;
      const double u0 = static_cast<double>(xi - yi) * h;
      const double u1 = static_cast<double>(xj - yj) * h;
      const double dist = f.n() == 2 ? std::hypot(u0, u1) : std::abs(u0);
      const double mag =
          std::abs(ac.a[static_cast<std::size_t>(x)]) +
          std::abs(ac.a[static_cast<std::size_t>(y)]) +
          std::abs(ac.g0[static_cast<std::size_t>(y)] * u0) +
          std::abs(ac.g1[static_cast<std::size_t>(y)] * u1);
      const double dpow = f.n() == 2 ? dist * dist * dist : dist * dist;
      s += std::abs(k.at_direction(u0, u1)) / dpow * mag * std::abs(f.value(y));
    }
    out.value(x) = s * ac.vol;
  }
  return out;
}

SublinearOperatorHandle t_a_handle(const SphericalKernel& k, const Amplitude& a, const Box& box,
                                   int m) {
  if (k.n != box.n) throw ParameterError("t_a_handle: kernel dimension mismatch");
  auto cache = std::make_shared<AmplitudeCache>(a, box, m);
  SublinearOperatorHandle handle;
  handle.bounded_hint = true;
  handle.apply_at = [k, cache](const GridFunction& f, const CellSelector& sel,
                               const std::vector<std::int64_t>& cells) {
    const AmplitudeCache& ac = *cache;
    const std::int64_t nc = ac.cells;
    const std::int64_t total = f.cell_count();
    std::vector<double> out(cells.size(), 0.0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::int64_t x = cells[c];
      const std::int64_t xi = ac.n == 2 ? x % nc : x;
      const std::int64_t xj = ac.n == 2 ? x / nc : 0;
      double s = 0.0;
      for (std::int64_t y = 0; y < total; ++y) {
        if (y == x || f.value(y) == 0.0) continue;
        const std::int64_t yi = ac.n == 2 ? y % nc : y;
        const std::int64_t yj = ac.n == 2 ? y / nc : 0;
        if (!sel.contains(yi, yj)) continue;
        const double u0 = static_cast<double>(xi - yi) * ac.h;
        const double u1 = static_cast<double>(xj - yj) * ac.h;
        const double num = ac.a[static_cast<std::size_t>(x)] -
                           ac.a[static_cast<std::size_t>(y)] -
                           (ac.g0[static_cast<std::size_t>(y)] * u0 +
                            ac.g1[static_cast<std::size_t>(y)] * u1);
        double dpow;
        if (ac.n == 2) {
          const double dist = std::hypot(u0, u1);
          dpow = dist * dist * dist;
        } else {
          dpow = u0 * u0;
        }
        s += k.at_direction(u0, u1) / dpow * num * f.value(y);
      }
      out[c] = s * ac.vol;
    }
    return out;
  };
  return handle;
}

double bmo_seminorm(const ShiftedGridFamily& fam, const GridFunction& g, int depth) {
  if (!same_geometry(fam.box(), g.box()) || fam.m() != g.m())
    throw AlignmentError("bmo_seminorm: function and family disagree on geometry");
  if (depth < 0 || depth > fam.max_level())
    throw ParameterError("bmo_seminorm: depth outside grid levels");
  const PrefixSums ps(g);
  double best = 0.0;
  for (int gi = 0; gi < fam.grid_count(); ++gi)
    for (int level = 0; level <= depth; ++level)
      for (const DyadicCube& q : fam.level_cubes(gi, level)) {
        const CellRange r = fam.cell_range(q);
        if (r.empty()) continue;
        const double mu = ps.range_mean(r);
        double osc = 0.0;
        for (std::int64_t j = r.lo[1]; j < r.hi[1]; ++j)
          for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i)
            osc += std::abs(g.value(g.n() == 2 ? g.flat_index(i, j) : i) - mu);
        osc /= static_cast<double>(r.count());
        if (osc > best) best = osc;
      }
  return best;
}

}  // namespace halab
