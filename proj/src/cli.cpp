#include "dasqa/cli.hpp"

#include "dasqa/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace dasqa {

namespace {

void print_table(const RoutingReport& generated, const RoutingReport& baseline) {
  std::printf("%-14s %10s %10s\n", "metric", "generated", "baseline");
  std::printf("%-14s %10zu %10zu\n", "swap_count", generated.swap_count,
              baseline.swap_count);
  std::printf("%-14s %10zu %10zu\n", "routed_depth", generated.routed_depth,
              baseline.routed_depth);
}

} // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Application-specific superconducting chip design flow", "dasqa"};
  std::string circuit_path;
  std::string config_path;
  std::string out_dir = "./out";
  std::string baseline_path;
  bool verbose = false;
  app.add_option("--file-path", circuit_path, "OpenQASM 2.0 circuit")
      ->required();
  app.add_option("--config-file-path", config_path, "YAML design configuration")
      ->required();
  app.add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  app.add_option("--baseline", baseline_path,
                 "Coupling graph JSON scored alongside the generated one");
  app.add_flag("--verbose", verbose, "Print stage progress");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  FlowOptions options;
  options.out_dir = out_dir;
  if (!baseline_path.empty()) {
    options.baseline_path = baseline_path;
  }
  if (verbose) {
    options.log = &std::cerr;
  }
  try {
    const auto result = run_flow(circuit_path, config_path, options);
    if (verbose) {
      std::cerr << "swap_count " << result.routing.swap_count << "\n";
    }
    if (result.baseline_routing) {
      print_table(result.routing, *result.baseline_routing);
    }
  } catch (const StageError& e) {
    std::cerr << "dasqa: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace dasqa
