#pragma once

#include "dasqa/architecture.hpp"
#include "dasqa/circuit.hpp"
#include "dasqa/config.hpp"
#include "dasqa/geometry_model.hpp"
#include "dasqa/layout.hpp"
#include "dasqa/router.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dasqa {

struct OptimizedLayout {
  LayoutDocument layout;
  OptimizationReport report;
};

using ArchitectureGenerator =
    std::function<Architecture(const QuantumCircuit&, const DesignConfig&)>;
using LayoutOptimizer = std::function<OptimizedLayout(
    LayoutDocument, const std::vector<double>&, const DesignConfig&)>;

/// Replaceable flow stages. Empty members fall back to the bundled ones.
struct StageInterfaces {
  ArchitectureGenerator architecture_generator;
  LayoutOptimizer layout_optimizer;
  QubitPlacer qubit_placer;
};

/// Surrogate fit on the configured dataset followed by optimize_layout.
OptimizedLayout default_layout_optimizer(LayoutDocument layout,
                                         const std::vector<double>& frequencies,
                                         const DesignConfig& config);

class StageError : public std::runtime_error {
public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}
  [[nodiscard]] const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

struct RoutingReport {
  std::size_t swap_count = 0;
  std::size_t routed_depth = 0;
  bool equivalence_checked = false;
  bool equivalence_ok = false;
};

struct FlowOptions {
  std::filesystem::path out_dir = "out";
  std::optional<std::filesystem::path> baseline_path;
  std::ostream* log = nullptr;
};

struct FlowResult {
  Architecture architecture;
  RoutingReport routing;
  std::optional<RoutingReport> baseline_routing;
  std::filesystem::path architecture_path;
  std::filesystem::path layout_path;
  std::filesystem::path svg_path;
  std::filesystem::path report_path;
};

/// parse -> generate -> validate -> route -> layout -> optimize -> emit.
/// Writes architecture.json, layout.json, layout.svg and report.json into
/// out_dir only after every stage succeeded. Throws StageError.
FlowResult run_flow(const std::filesystem::path& circuit_path,
                    const std::filesystem::path& config_path,
                    const FlowOptions& options = {},
                    const StageInterfaces& stages = {});

/// Metrics for one architecture, with an equivalence check when the
/// physical register fits the simulator.
RoutingReport routing_report(const QuantumCircuit& qc, const CouplingGraph& coupling);

} // namespace dasqa
