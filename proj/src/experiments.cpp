#include "halab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "halab/amplitude.hpp"
#include "halab/kernel.hpp"
#include "halab/maximal.hpp"
#include "halab/orlicz.hpp"
#include "halab/powerlaw.hpp"
#include "halab/singular.hpp"
#include "halab/sparse.hpp"
#include "halab/util.hpp"
#include "halab/weights.hpp"

namespace halab {

namespace {

Box line_box() {
  Box b;
  b.n = 1;
  b.lo = {-2.0, 0.0};
  b.side = 4.0;
  return b;
}

int pick_depth(const ExperimentConfig& config, int fallback) {
  if (config.depth < 0) return fallback;
  return config.depth;
}

// Signed antiderivative of |x|^c vanishing at 0, valid for c > -1.
double abs_power_primitive(double t, double c) {
  const double mag = std::pow(std::abs(t), 1.0 + c) / (1.0 + c);
  return t >= 0.0 ? mag : -mag;
}

// Power weight |x|^c as exact cell averages (cells straddling 0 included).
GridFunction power_weight(const Box& box, int m, double c) {
  if (!(c > -1.0)) throw ParameterError("power_weight: exponent must exceed -1");
  return GridFunction::cell_average_1d(box, m, [c](double a, double b) {
    return abs_power_primitive(b, c) - abs_power_primitive(a, c);
  });
}

// Random signed piecewise-constant function built from 1..4 dyadic blocks,
// narrow spikes included so stopping-time constructions actually recurse.
// Block levels stay within the grid, so the same draw refines to the same
// real-valued function at any depth >= 8.
GridFunction random_blocks(const Box& box, int m, Rng& rng) {
  GridFunction f(box, m);
  const std::int64_t cells = f.cells_per_axis();
  const int blocks = static_cast<int>(rng.uniform_int(1, 4));
  for (int b = 0; b < blocks; ++b) {
    const int level = static_cast<int>(rng.uniform_int(2, std::min(8, m)));
    const std::int64_t w = cells >> level;
    const std::int64_t k = rng.uniform_int(0, (std::int64_t{1} << level) - 1);
    double v = rng.uniform(0.25, 4.0) * static_cast<double>(std::int64_t{1} << level) / 8.0;
    if (rng.uniform01() < 0.3) v = -v;
    for (std::int64_t i = k * w; i < (k + 1) * w; ++i) f.value(i) += v;
  }
  return f;
}

void require_deltas(const std::vector<double>& deltas) {
  if (deltas.empty()) throw ParameterError("delta list must not be empty");
  for (double d : deltas)
    if (!(d > 0.0) || !(d < 0.5))
      throw ParameterError("every delta must lie in (0, 1/2)");
}

// Slope of log(y) against log(x), excluding the drop_coarse largest deltas.
double fit_slope(const std::vector<double>& deltas, const std::vector<double>& xs,
                 const std::vector<double>& ys, int drop_coarse) {
  std::vector<std::size_t> order(deltas.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return deltas[a] > deltas[b]; });
  std::vector<double> lx, ly;
  for (std::size_t r = static_cast<std::size_t>(std::max(0, drop_coarse)); r < order.size(); ++r) {
    lx.push_back(std::log(xs[order[r]]));
    ly.push_back(std::log(ys[order[r]]));
  }
  if (lx.size() < 2) throw ParameterError("slope fit needs at least two retained deltas");
  return ols_slope(lx, ly);
}

std::string note_num(double v) { return format_double(v); }

double rel_change(double fine, double coarse) {
  if (coarse == 0.0) return 0.0;
  return std::abs(fine - coarse) / std::abs(coarse);
}

}  // namespace

TableResult run_sharpness(const ExperimentConfig& config) {
  if (!(config.p > 1.0)) throw ParameterError("sharpness: p must exceed 1");
  require_deltas(config.deltas);
  const int depth = pick_depth(config, 14);
  const Box box = line_box();
  const ShiftedGridFamily fam(box, depth);

  TableResult table;
  table.command = "sharpness";
  table.columns = {"delta", "ap", "f_lp", "ta_lp", "ratio", "slope"};
  table.plot_x = 0;
  table.plot_y = 4;

  std::vector<double> ratios, aps;
  double smallest = config.deltas.front();
  PowerSharpness at_smallest;
  for (double delta : config.deltas) {
    const double c = (config.p - 1.0) * (1.0 - delta);
    const GridFunction w = power_weight(box, depth, c);
    const GridFunction sigma = power_weight(box, depth, -(1.0 - delta));
    const double ap = ap_constant_pair(fam, w, sigma, config.p, depth);
    const PowerSharpness sp = power_sharpness(config.p, delta, depth);
    if (delta <= smallest) {
      smallest = delta;
      at_smallest = sp;
    }
    ratios.push_back(sp.ratio);
    aps.push_back(ap);
    table.rows.push_back({delta, ap, std::pow(sp.f_norm_p, 1.0 / config.p),
                          std::pow(sp.t_norm_p, 1.0 / config.p), sp.ratio, 0.0});
  }
  const double slope = fit_slope(config.deltas, config.deltas, ratios, config.drop_coarse);
  for (auto& row : table.rows) row.back() = slope;

  table.notes.emplace_back("slope", note_num(slope));
  table.notes.emplace_back("ap_slope",
                           note_num(fit_slope(config.deltas, config.deltas, aps,
                                              config.drop_coarse)));
  if (config.p > 2.0) table.notes.emplace_back("exploratory", "1");
  if (depth + 1 <= 24) {
    const PowerSharpness fine = power_sharpness(config.p, smallest, depth + 1);
    table.notes.emplace_back("ratio_refinement_delta",
                             note_num(rel_change(fine.ratio, at_smallest.ratio)));
    table.notes.emplace_back("fnormp_refinement_delta",
                             note_num(rel_change(fine.f_norm_p, at_smallest.f_norm_p)));
  }
  return table;
}

namespace {

struct DominationDraw {
  int functions = 0;
  SparseFamily family;
  SparsityReport report;
  double domination = 0.0;
};

DominationDraw domination_one(const ExperimentConfig& config, int depth, std::uint64_t seed) {
  const Box box = line_box();
  const ShiftedGridFamily fam(box, depth);
  const SphericalKernel kernel = SphericalKernel::preset(config.omega, 1);
  const Amplitude amp = Amplitude::preset(config.amplitude);
  const SublinearOperatorHandle handle = t_a_handle(kernel, amp, box, depth);

  Rng rng(seed);
  const int nf = config.functions > 0 ? config.functions
                                      : static_cast<int>(rng.uniform_int(1, 4));
  std::vector<GridFunction> fs;
  fs.reserve(static_cast<std::size_t>(nf));
  for (int k = 0; k < nf; ++k) fs.push_back(random_blocks(box, depth, rng));
  std::vector<const GridFunction*> fp;
  for (const GridFunction& f : fs) fp.push_back(&f);

  DyadicCube root;
  root.grid = 0;
  root.level = 0;
  root.idx = {0, 0};
  SparseBuildOptions options;
  options.q = config.q;
  options.beta = config.beta;

  DominationDraw draw;
  draw.functions = nf;
  draw.family = build_sparse_family(fam, handle, fp, root, options);
  draw.report = verify_sparsity(fam, draw.family, draw.family.eta);
  draw.domination = domination_ratio(fam, handle, fp, draw.family, config.q, config.beta);
  return draw;
}

}  // namespace

TableResult run_domination(const ExperimentConfig& config) {
  if (config.seeds < 1) throw ParameterError("domination: need at least one seed");
  const int depth = pick_depth(config, 10);

  TableResult table;
  table.command = "domination";
  table.columns = {"seed",    "functions", "c2",      "cubes",       "recursion",
                   "witness_share", "halving",   "sparsity_ok", "domination"};
  table.plot_x = 0;
  table.plot_y = 8;

  double worst = 0.0;
  double first_dom = 0.0;
  for (int s = 0; s < config.seeds; ++s) {
    const DominationDraw draw = domination_one(config, depth, config.seed + static_cast<std::uint64_t>(s));
    if (s == 0) first_dom = draw.domination;
    worst = std::max(worst, draw.domination);
    table.rows.push_back({static_cast<double>(config.seed + static_cast<std::uint64_t>(s)),
                          static_cast<double>(draw.functions), draw.family.c2_final,
                          static_cast<double>(draw.family.entries.size()),
                          static_cast<double>(draw.family.max_depth), draw.report.worst_ratio,
                          draw.family.measure_halving ? 1.0 : 0.0, draw.report.ok ? 1.0 : 0.0,
                          draw.domination});
  }
  table.notes.emplace_back("eta", note_num(0.5 / 3.0));
  table.notes.emplace_back("max_domination", note_num(worst));
  const DominationDraw fine = domination_one(config, depth + 1, config.seed);
  table.notes.emplace_back("domination_refinement_delta",
                           note_num(rel_change(fine.domination, first_dom)));
  return table;
}

TableResult run_weighted_bound(const ExperimentConfig& config) {
  if (!(config.p > 1.0)) throw ParameterError("weighted-bound: p must exceed 1");
  if (!(config.q > 1.0)) throw ParameterError("weighted-bound: q must exceed 1");
  require_deltas(config.deltas);
  const int depth = pick_depth(config, 12);
  const int nf = config.functions > 0 ? config.functions : 3;

  const auto evaluate = [&](int m, double delta_only,
                            bool single) -> std::vector<std::vector<double>> {
    const Box box = line_box();
    const ShiftedGridFamily fam(box, m);
    const SphericalKernel kernel = SphericalKernel::preset(config.omega, 1);
    const Amplitude amp = Amplitude::preset(config.amplitude);

    Rng rng(config.seed);
    std::vector<GridFunction> fs;
    for (int k = 0; k < nf; ++k) fs.push_back(random_blocks(box, m, rng));
    std::vector<const GridFunction*> fp;
    for (const GridFunction& f : fs) fp.push_back(&f);

    std::vector<GridFunction> tfs, tstars;
    for (const GridFunction& f : fs) {
      LadderResult ladder = t_a_ladder(kernel, amp, f);
      tfs.push_back(std::move(ladder.finest));
      tstars.push_back(std::move(ladder.sup_abs));
    }
    std::vector<const GridFunction*> tp, tsp;
    for (const GridFunction& t : tfs) tp.push_back(&t);
    for (const GridFunction& t : tstars) tsp.push_back(&t);

    const GridFunction grad0 = GridFunction::sample(
        box, m, [&](double x, double y) { return amp.gradient(x, y)[0]; });
    const double bmo = bmo_seminorm(fam, grad0, m);
    const double pprime = config.p / (config.p - 1.0);

    std::vector<std::vector<double>> rows;
    for (double delta : config.deltas) {
      if (single && delta != delta_only) continue;
      const double c = (config.p - 1.0) * (1.0 - delta);
      const GridFunction w = power_weight(box, m, c);
      const GridFunction sigma = power_weight(box, m, -(1.0 - delta));
      const double ap = ap_constant_pair(fam, w, sigma, config.p, m);
      const double ainf_w = ainf_constant(fam, w, m);
      const double ainf_s = ainf_constant(fam, sigma, m);
      const double fnorm = vector_lp_lq_norm(fp, w, config.p, config.q);
      const double tnorm = vector_lp_lq_norm(tp, w, config.p, config.q);
      const double tsnorm = vector_lp_lq_norm(tsp, w, config.p, config.q);
      const double rhs = bmo * std::pow(ap, 1.0 / config.p) *
                         (std::pow(ainf_s, 1.0 / config.p) + std::pow(ainf_w, 1.0 / pprime)) *
                         ainf_s * fnorm;
      rows.push_back({delta, ap, ainf_w, ainf_s, bmo, fnorm, tnorm, tsnorm,
                      tnorm / std::max(rhs, 1e-300), tsnorm / std::max(rhs, 1e-300)});
    }
    return rows;
  };

  TableResult table;
  table.command = "weighted-bound";
  table.columns = {"delta",  "ap",     "ainf_w",     "ainf_sigma", "bmo",
                   "f_norm", "t_norm", "tstar_norm", "ratio",      "ratio_star"};
  table.plot_x = 0;
  table.plot_y = 8;
  table.rows = evaluate(depth, 0.0, false);

  double worst = 0.0, smallest = config.deltas.front(), at_small = 0.0;
  for (const auto& row : table.rows) {
    worst = std::max({worst, row[8], row[9]});
    if (row[0] <= smallest) {
      smallest = row[0];
      at_small = row[8];
    }
  }
  table.notes.emplace_back("max_ratio", note_num(worst));
  const auto fine = evaluate(depth + 1, smallest, true);
  table.notes.emplace_back("ratio_refinement_delta",
                           note_num(rel_change(fine.front()[8], at_small)));
  return table;
}

TableResult run_endpoint(const ExperimentConfig& config) {
  if (!(config.q > 1.0)) throw ParameterError("endpoint: q must exceed 1");
  if (config.lambda_points < 2) throw ParameterError("endpoint: need at least two lambda points");
  const int depth = pick_depth(config, 10);
  const int nf = config.functions > 0 ? config.functions : 3;

  struct Suite {
    std::vector<std::vector<double>> rows;
    double a1 = 0.0, ainf = 0.0, max_w_ratio = 0.0;
  };

  const auto evaluate = [&](int m) -> Suite {
    const Box box = line_box();
    const ShiftedGridFamily fam(box, m);
    const SphericalKernel kernel = SphericalKernel::preset(config.omega, 1);
    const Amplitude amp = Amplitude::preset(config.amplitude);
    const double vol = std::pow(box.side / std::ldexp(1.0, m), box.n);

    Rng rng(config.seed);
    std::vector<GridFunction> fs;
    for (int k = 0; k < nf; ++k) fs.push_back(random_blocks(box, m, rng));
    std::vector<const GridFunction*> fp;
    for (const GridFunction& f : fs) fp.push_back(&f);
    const GridFunction g = lq_combine(fp, config.q);

    std::vector<GridFunction> tfs;
    for (const GridFunction& f : fs) tfs.push_back(t_a(kernel, amp, f).value);
    std::vector<const GridFunction*> tp;
    for (const GridFunction& t : tfs) tp.push_back(&t);
    const GridFunction tvec = lq_combine(tp, config.q);

    const GridFunction w = power_weight(box, m, -0.5);
    Suite suite;
    suite.a1 = a1_constant(fam, w, m);
    suite.ainf = ainf_constant(fam, w, m);

    const GridFunction m_g = orlicz_maximal(fam, g, 1.0);
    std::vector<GridFunction> mks;
    for (const GridFunction& f : fs) mks.push_back(orlicz_maximal(fam, f, 1.0));
    std::vector<const GridFunction*> mp;
    for (const GridFunction& t : mks) mp.push_back(&t);
    const GridFunction mvec = lq_combine(mp, config.q);

    const std::vector<double> eps = {0.25, 0.5, 1.0};
    std::vector<GridFunction> mw;
    for (double e : eps) mw.push_back(orlicz_maximal(fam, w, e));

    const GridFunction ones = GridFunction::sample(box, m, [](double, double) { return 1.0; });
    const double gmean = mean(g, g.full_range());
    const double scale = gmean > 0.0 ? gmean : 1.0;
    const std::vector<double> lambdas =
        logspace(0.05 * scale, 50.0 * scale, config.lambda_points);

    const auto entropy_sum = [&](double lam, double base, const GridFunction* density) {
      // integral of (g / lam) log^beta(base + g / lam) times density
      double acc = 0.0;
      for (std::int64_t c = 0; c < g.cell_count(); ++c) {
        const double t = g.value(c) / lam;
        if (t <= 0.0) continue;
        const double dens = density ? density->value(c) : 1.0;
        acc += t * std::log(base + t) * dens;
      }
      return acc * vol;
    };
    const auto ratio = [](double lhs, double rhs) {
      return lhs > 0.0 ? lhs / std::max(rhs, 1e-300) : 0.0;
    };

    const double psi2 = std::pow(std::log(std::exp(1.0) + suite.ainf), 2.0);
    for (double lam : lambdas) {
      const double rhs_plain = entropy_sum(lam, 1.0, nullptr);
      const double r31 = ratio(weighted_superlevel_measure(m_g, ones, lam), rhs_plain);
      const double r32 = ratio(weighted_superlevel_measure(mvec, ones, lam), rhs_plain);
      const double r310 = ratio(weighted_superlevel_measure(tvec, ones, lam), rhs_plain);
      const double lhs_w = weighted_superlevel_measure(tvec, w, lam);
      const double rw = ratio(lhs_w, suite.a1 * psi2 * entropy_sum(lam, std::exp(1.0), &w));
      std::vector<double> row = {lam, r31, r32, r310, rw};
      for (std::size_t e = 0; e < eps.size(); ++e) {
        const double rhs_e = std::pow(eps[e], -2.0) *
                             entropy_sum(lam, std::exp(1.0), &mw[e]);
        row.push_back(ratio(lhs_w, rhs_e));
      }
      suite.rows.push_back(std::move(row));
      suite.max_w_ratio = std::max(suite.max_w_ratio, rw);
    }
    return suite;
  };

  TableResult table;
  table.command = "endpoint";
  table.columns = {"lambda",     "m1_ratio",  "mvec_ratio", "ta_ratio",
                   "thm_ratio",  "eps25_ratio", "eps50_ratio", "eps100_ratio"};
  table.plot_x = 0;
  table.plot_y = 4;
  const Suite coarse = evaluate(depth);
  table.rows = coarse.rows;
  table.notes.emplace_back("a1", note_num(coarse.a1));
  table.notes.emplace_back("ainf", note_num(coarse.ainf));
  table.notes.emplace_back("max_thm_ratio", note_num(coarse.max_w_ratio));
  const Suite fine = evaluate(depth + 1);
  table.notes.emplace_back("thm_ratio_refinement_delta",
                           note_num(rel_change(fine.max_w_ratio, coarse.max_w_ratio)));
  return table;
}

TableResult run_buckley(const ExperimentConfig& config) {
  if (!(config.p > 1.0)) throw ParameterError("buckley: p must exceed 1");
  require_deltas(config.deltas);
  const int depth = pick_depth(config, 14);

  const auto norm_ratio = [&](int m, double delta) {
    const Box box = line_box();
    const ShiftedGridFamily fam(box, m);
    const std::int64_t cells = std::int64_t{1} << m;
    GridFunction f(box, m);
    for (std::int64_t i = cells / 2; i < (3 * cells) / 4; ++i) f.value(i) = 1.0;
    const GridFunction mf = hl_maximal(fam, f);
    const double c = (config.p - 1.0) * (1.0 - delta);
    const GridFunction w = power_weight(box, m, c);
    return weighted_lp_norm(mf, w, config.p) / weighted_lp_norm(f, w, config.p);
  };

  const Box box = line_box();
  const ShiftedGridFamily fam(box, depth);
  const std::int64_t cells = std::int64_t{1} << depth;
  GridFunction f(box, depth);
  for (std::int64_t i = cells / 2; i < (3 * cells) / 4; ++i) f.value(i) = 1.0;
  const GridFunction mf = hl_maximal(fam, f);

  TableResult table;
  table.command = "buckley";
  table.columns = {"delta", "ap", "norm_ratio", "slope"};
  table.plot_x = 1;
  table.plot_y = 2;

  std::vector<double> aps, ratios;
  double smallest = config.deltas.front(), at_small = 0.0;
  for (double delta : config.deltas) {
    const double c = (config.p - 1.0) * (1.0 - delta);
    const GridFunction w = power_weight(box, depth, c);
    const GridFunction sigma = power_weight(box, depth, -(1.0 - delta));
    const double ap = ap_constant_pair(fam, w, sigma, config.p, depth);
    const double ratio =
        weighted_lp_norm(mf, w, config.p) / weighted_lp_norm(f, w, config.p);
    aps.push_back(ap);
    ratios.push_back(ratio);
    if (delta <= smallest) {
      smallest = delta;
      at_small = ratio;
    }
    table.rows.push_back({delta, ap, ratio, 0.0});
  }
  const double slope = fit_slope(config.deltas, aps, ratios, config.drop_coarse);
  for (auto& row : table.rows) row.back() = slope;
  table.notes.emplace_back("slope", note_num(slope));
  table.notes.emplace_back("ratio_refinement_delta",
                           note_num(rel_change(norm_ratio(depth + 1, smallest), at_small)));
  return table;
}

void write_table(const TableResult& table, const ExperimentConfig& config) {
  std::string body;
  if (config.format == "json") {
    nlohmann::json doc;
    doc["command"] = table.command;
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    nlohmann::json notes = nlohmann::json::object();
    for (const auto& kv : table.notes) notes[kv.first] = kv.second;
    doc["notes"] = notes;
    body = doc.dump(2);
    body += "\n";
  } else if (config.format == "csv") {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) body += ",";
      body += table.columns[c];
    }
    body += "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) body += ",";
        body += format_double(row[c]);
      }
      body += "\n";
    }
  } else {
    throw ParameterError("write_table: format must be csv or json");
  }

  if (config.out.empty()) {
    std::fputs(body.c_str(), stdout);
  } else {
    std::FILE* out = std::fopen(config.out.c_str(), "wb");
    if (out == nullptr) throw ParameterError("write_table: cannot open " + config.out);
    std::fputs(body.c_str(), out);
    std::fclose(out);
  }

  if (config.format == "csv")
    for (const auto& kv : table.notes)
      std::fprintf(stderr, "%s=%s\n", kv.first.c_str(), kv.second.c_str());

  if (!config.plotdata.empty()) {
    std::FILE* plot = std::fopen(config.plotdata.c_str(), "wb");
    if (plot == nullptr) throw ParameterError("write_table: cannot open " + config.plotdata);
    for (const auto& row : table.rows)
      std::fprintf(plot, "%s %s\n",
                   format_double(row[static_cast<std::size_t>(table.plot_x)]).c_str(),
                   format_double(row[static_cast<std::size_t>(table.plot_y)]).c_str());
    std::fclose(plot);
  }
}

}  // namespace halab
