#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace halab {

// Shared knob set for the experiment commands.  depth = -1 picks the
// per-command default (sharpness/buckley 14, weighted-bound 12,
// domination/endpoint 10); all runs are 1-D on the box [-2, 2).
struct ExperimentConfig {
  double p = 1.5;
  double q = 2.0;
  double beta = 1.0;
  std::vector<double> deltas{0.4, 0.2, 0.1, 0.05};
  int depth = -1;
  std::uint64_t seed = 1;
  int seeds = 20;      // random draws in the domination command
  int functions = 0;   // sequence length; 0 = per-command default / random
  int lambda_points = 16;
  std::string omega = "const1";
  std::string amplitude = "xlogx";
  std::string out;       // empty: table to stdout
  std::string format = "csv";
  std::string plotdata;  // empty: no plot file
  int drop_coarse = 0;   // coarsest deltas excluded from slope fits
};

// A finished experiment: a rectangular table plus ordered note lines
// (headline numbers, refinement deltas, fitted slopes).
struct TableResult {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> notes;
  int plot_x = 0;  // plotdata column choices
  int plot_y = 1;
};

TableResult run_sharpness(const ExperimentConfig& config);
TableResult run_domination(const ExperimentConfig& config);
TableResult run_weighted_bound(const ExperimentConfig& config);
TableResult run_endpoint(const ExperimentConfig& config);
TableResult run_buckley(const ExperimentConfig& config);

// Table to config.out (or stdout) as CSV or JSON, notes to stderr for CSV,
// optional two-column plot file.  CSV bytes depend only on the table.
void write_table(const TableResult& table, const ExperimentConfig& config);

}  // namespace halab
