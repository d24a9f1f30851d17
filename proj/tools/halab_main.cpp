// Experiment driver: quantitative checks of weighted bounds, endpoint
// estimates, sparse domination, and the sharpness sweep on dyadic grids.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "halab/common.hpp"
#include "halab/experiments.hpp"

namespace {

int dispatch(const std::string& command, const halab::ExperimentConfig& config) {
  halab::TableResult table;
  if (command == "sharpness")
    table = halab::run_sharpness(config);
  else if (command == "domination")
    table = halab::run_domination(config);
  else if (command == "weighted-bound")
    table = halab::run_weighted_bound(config);
  else if (command == "endpoint")
    table = halab::run_endpoint(config);
  else
    table = halab::run_buckley(config);
  halab::write_table(table, config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"harmonic-analysis lab: grid experiments for rough singular integrals"};
  app.require_subcommand(1);

  halab::ExperimentConfig config;
  std::string command;
  for (const char* name :
       {"sharpness", "domination", "weighted-bound", "endpoint", "buckley"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->callback([&command, name]() { command = name; });
    sub->add_option("--p", config.p, "Lebesgue exponent p");
    sub->add_option("--q", config.q, "sequence exponent q");
    sub->add_option("--beta", config.beta, "Orlicz log exponent");
    sub->add_option("--deltas", config.deltas, "delta sweep values in (0, 1/2)")
        ->delimiter(',');
    sub->add_option("--depth", config.depth, "grid refinement depth (default per command)");
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--seeds", config.seeds, "number of random draws (domination)");
    sub->add_option("--functions", config.functions, "sequence length (0 = default)");
    sub->add_option("--lambda-points", config.lambda_points, "level-set grid size (endpoint)");
    sub->add_option("--omega", config.omega, "kernel preset name");
    sub->add_option("--amplitude", config.amplitude, "amplitude preset name");
    sub->add_option("--out", config.out, "output path (default stdout)");
    sub->add_option("--format", config.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--plotdata", config.plotdata, "two-column plot file path");
    sub->add_option("--drop-coarse", config.drop_coarse,
                    "coarsest deltas excluded from slope fits");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(command, config);
  } catch (const halab::ParameterError& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return 2;
  } catch (const halab::ResolutionError& e) {
    std::fprintf(stderr, "resolution error: %s\n", e.what());
    return 3;
  } catch (const halab::CoverageError& e) {
    std::fprintf(stderr, "coverage error: %s\n", e.what());
    return 3;
  } catch (const halab::ConstructionError& e) {
    std::fprintf(stderr, "construction error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
