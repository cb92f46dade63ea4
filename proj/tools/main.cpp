#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "streamkl/cli.hpp"

namespace {

void add_common_options(CLI::App* sub, streamkl::RunConfig& config, std::string& grid,
                        std::string& format) {
  sub->add_option("--n", config.n, "alphabet size N");
  sub->add_option("--q", config.q, "stream length q");
  sub->add_option("--memory", config.memory_spec,
                  "memory profile: 'const:<s>' or 's1,s2,...,sq'");
  sub->add_flag("--normalize", config.normalize,
                "apply width normalization to the profile before computing");
  sub->add_option("--seed", config.seed, "64-bit seed");
  sub->add_option("--samples", config.samples, "sample count for estimates");
  sub->add_option("--workers", config.workers, "worker threads for sampling");
  sub->add_option("--grid", grid, "sweep spec, e.g. 'q=2,4,8,16' or 'n=64,128;q=4,8'");
  sub->add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bound calculator and verifier for memory-bounded streaming distinguishers"};
  app.require_subcommand(1);

  streamkl::RunConfig config;
  std::string grid, format = "csv", algorithm = "collision";

  auto* bounds = app.add_subcommand("bounds", "tabulate the closed-form bounds");
  add_common_options(bounds, config, grid, format);
  double epsilon = 0;
  auto* eps_opt = bounds->add_option("--epsilon", epsilon,
                                     "also evaluate the q <= N^(1-eps) regime bound");

  auto* oracle = app.add_subcommand("oracle", "exact enumeration and bound verification");
  add_common_options(oracle, config, grid, format);
  oracle->add_option("--algorithm", algorithm, "collision, constant or random")
      ->check(CLI::IsMember({"collision", "constant", "random"}));
  oracle->add_option("--suite-count", config.suite_count,
                     "run this many seeded random algorithms");
  oracle->add_option("--cap", config.walk_cap, "enumeration walk budget (default 1e7)");
  oracle->add_option("--table-cap", config.table_cap,
                     "random-algorithm table entry budget (default 1e6)");

  auto* simulate = app.add_subcommand("simulate", "sampling estimates at scale");
  add_common_options(simulate, config, grid, format);
  simulate->add_option("--algorithm", algorithm, "collision, constant or random")
      ->check(CLI::IsMember({"collision", "constant", "random"}));
  simulate->add_option("--table-cap", config.table_cap,
                       "random-algorithm table entry budget (default 1e6)");

  auto* verify = app.add_subcommand("verify-functions",
                                    "grid checks of the scalar-function properties");
  add_common_options(verify, config, grid, format);
  verify->add_option("--grid-points", config.grid_points, "grid resolution (>= 10)");
  verify->add_option("--stirling-max", config.stirling_max_n,
                     "largest n for the log-binomial sandwich sweep");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds->parsed()) config.command = streamkl::Command::bounds;
    if (oracle->parsed()) config.command = streamkl::Command::oracle;
    if (simulate->parsed()) config.command = streamkl::Command::simulate;
    if (verify->parsed()) config.command = streamkl::Command::verify_functions;

    if (eps_opt->count() > 0) config.epsilon = epsilon;
    if (!grid.empty()) streamkl::parse_grid_spec(grid, config);
    config.format = format == "json" ? streamkl::OutputFormat::json : streamkl::OutputFormat::csv;
    if (algorithm == "constant") config.algorithm = streamkl::AlgorithmKind::constant;
    if (algorithm == "random") config.algorithm = streamkl::AlgorithmKind::random;

    streamkl::RunReport report = streamkl::run_command(config);
    std::fputs(streamkl::render(report, config.format).c_str(), stdout);
    return streamkl::exit_status(report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
