#include "dasqa/pipeline.hpp"

#include "dasqa/json_io.hpp"
#include "dasqa/svg.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

namespace dasqa {

using nlohmann::json;
namespace fs = std::filesystem;

OptimizedLayout default_layout_optimizer(LayoutDocument layout,
                                         const std::vector<double>& frequencies,
                                         const DesignConfig& config) {
  const auto model = fit_model(dataset_for(config), config.geometry.poly_degree);
  auto report = optimize_layout(layout, frequencies, config, model);
  return {std::move(layout), std::move(report)};
}

RoutingReport routing_report(const QuantumCircuit& qc, const CouplingGraph& coupling) {
  const auto mapping = initial_mapping(interaction_graph(qc), coupling);
  const auto routed = route(qc, coupling, mapping);
  RoutingReport out;
  out.swap_count = routed.swap_count;
  out.routed_depth = routed.depth;
  if (routed.num_physical <= kMaxSimulatedQubits) {
    out.equivalence_checked = true;
    out.equivalence_ok = check_equivalence(qc, routed);
  }
  return out;
}

namespace {

std::string read_text(const fs::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(std::string("cannot read ") + what + " '" +
                             path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

template <typename F>
auto stage(const char* name, std::ostream* log, F&& body) {
  if (log != nullptr) {
    *log << "[" << name << "]\n";
  }
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

json routing_json(const RoutingReport& r) {
  return json{{"swap_count", r.swap_count},
              {"routed_depth", r.routed_depth},
              {"equivalence_checked", r.equivalence_checked},
              {"equivalence_ok", r.equivalence_ok}};
}

json optional_number(const std::optional<double>& v) {
  return v ? json_number(*v) : json(nullptr);
}

json report_json(const QuantumCircuit& qc, const Architecture& arch,
                 const RoutingReport& routing,
                 const std::optional<RoutingReport>& baseline,
                 const OptimizationReport& geometry, const DesignConfig& config) {
  const auto stats = circuit_stats(qc);
  json interactions = json::array();
  for (const auto& [pair, weight] : interaction_graph(qc).edges) {
    interactions.push_back({pair.first, pair.second, weight});
  }
  json qubits = json::array();
  for (const auto& q : geometry.qubits) {
    json entry{{"qubit", q.qubit},
               {"component", q.component},
               {"target_ghz", json_number(q.target_ghz)},
               {"ok", q.ok}};
    if (q.ok) {
      entry["achieved_ghz"] = json_number(q.achieved_ghz);
      entry["pad_gap"] = json{{"value", json_number(q.pad_gap_um)}, {"unit", "um"}};
      entry["pad_height"] =
          json{{"value", json_number(q.pad_height_um)}, {"unit", "um"}};
      entry["out_of_range"] = q.out_of_range;
    } else {
      entry["error"] = q.error;
    }
    qubits.push_back(std::move(entry));
  }
  json out{
      {"circuit", json{{"num_qubits", qc.num_qubits()},
                       {"num_clbits", qc.num_clbits()},
                       {"gate_count", stats.gate_count},
                       {"two_qubit_count", stats.two_qubit_count},
                       {"depth", stats.depth},
                       {"interactions", interactions}}},
      {"architecture", architecture_to_json(arch)},
      {"routing", routing_json(routing)},
      {"geometry", json{{"qubits", qubits}, {"failures", geometry.failures()}}},
      {"targets", json{{"ej_ec_ratio", optional_number(config.targets.ej_ec_ratio)},
                       {"anharmonicity_mhz",
                        optional_number(config.targets.anharmonicity_mhz)},
                       {"t1_us", optional_number(config.targets.t1_us)},
                       {"t2_us", optional_number(config.targets.t2_us)}}},
  };
  if (baseline) {
    out["baseline"] = routing_json(*baseline);
  }
  return out;
}

void emit(const fs::path& dir,
          const std::vector<std::pair<std::string, std::string>>& files) {
  fs::create_directories(dir);
  std::vector<fs::path> temps;
  try {
    for (const auto& [name, content] : files) {
      const auto tmp = dir / ("." + name + ".tmp");
      temps.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << content;
      if (!out.flush()) {
        throw std::runtime_error("cannot write '" + tmp.string() + "'");
      }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      fs::rename(temps[i], dir / files[i].first);
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& t : temps) {
      fs::remove(t, ec);
    }
    throw;
  }
}

} // namespace

FlowResult run_flow(const fs::path& circuit_path, const fs::path& config_path,
                    const FlowOptions& options, const StageInterfaces& stages) {
  std::ostream* log = options.log;

  const auto config = stage("config", log, [&] { return load_config(config_path); });
  const auto qc = stage("parse", log, [&] {
    return parse_qasm(read_text(circuit_path, "circuit"));
  });

  const auto arch = stage("generate", log, [&] {
    if (stages.architecture_generator) {
      return stages.architecture_generator(qc, config);
    }
    return generate_architecture(
        qc, config, stages.qubit_placer ? stages.qubit_placer : QubitPlacer(place_qubits));
  });
  stage("validate", log, [&] {
    validate_architecture(arch, config);
    if (arch.num_qubits() < qc.num_qubits()) {
      throw ArchitectureError("architecture has fewer qubits than the circuit");
    }
    return 0;
  });

  const auto routing = stage("route", log, [&] {
    auto r = routing_report(qc, arch.coupling);
    if (r.equivalence_checked && !r.equivalence_ok) {
      throw RoutingError("routed circuit is not equivalent to the input");
    }
    return r;
  });
  std::optional<RoutingReport> baseline;
  if (options.baseline_path) {
    baseline = stage("baseline", log, [&] {
      const auto graph =
          parse_coupling_json(read_text(*options.baseline_path, "baseline"));
      return routing_report(qc, graph);
    });
  }

  auto layout = stage("layout", log, [&] { return build_layout(arch, config); });
  auto optimized = stage("optimize", log, [&] {
    if (stages.layout_optimizer) {
      return stages.layout_optimizer(std::move(layout), arch.frequencies, config);
    }
    return default_layout_optimizer(std::move(layout), arch.frequencies, config);
  });
  stage("optimize", log, [&] {
    optimized.layout.check_invariants();
    return 0;
  });

  FlowResult result;
  result.architecture = arch;
  result.routing = routing;
  result.baseline_routing = baseline;
  result.architecture_path = options.out_dir / "architecture.json";
  result.layout_path = options.out_dir / "layout.json";
  result.svg_path = options.out_dir / "layout.svg";
  result.report_path = options.out_dir / "report.json";

  stage("emit", log, [&] {
    emit(options.out_dir,
         {{"architecture.json", dump_json(architecture_to_json(arch))},
          {"layout.json", dump_json(layout_to_json(optimized.layout))},
          {"layout.svg", render_svg(optimized.layout)},
          {"report.json", dump_json(report_json(qc, arch, routing, baseline,
                                                optimized.report, config))}});
    return 0;
  });
  return result;
}

} // namespace dasqa
