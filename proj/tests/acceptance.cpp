// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include "support.hpp"

#include "dasqa/geometry_model.hpp"
#include "dasqa/json_io.hpp"
#include "dasqa/layout.hpp"
#include "dasqa/pipeline.hpp"
#include "dasqa/router.hpp"

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

using namespace dasqa;
namespace fs = std::filesystem;

namespace {

constexpr double kResonatorTargetMm = 8.432;
constexpr double kResonatorTolMm = 1e-3;
constexpr double kLengthRelTol = 1e-6;
constexpr double kCoefficientTol = 1e-6;
constexpr double kFrequencyTolGhz = 1e-3;
constexpr double kAmplitudeTol = 1e-9;
constexpr double kAdjacentDetuning = 0.09;
constexpr double kNextDetuning = 0.02;
constexpr int kRandomRoutingInstances = 500;
const std::vector<double> kPublishedFrequencies = {5.06, 5.24, 5.08, 5.27, 5.17};

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

const LayoutMatrix kPublishedMatrix =
    LayoutMatrix::from_rows({{-1, 2, -1}, {3, 4, 0}, {-1, 1, -1}});

LayoutMatrix rotate(const LayoutMatrix& m) {
  LayoutMatrix out(m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      out.set(c, m.rows() - 1 - r, m.at(r, c));
    }
  }
  return out;
}

// Equal up to a rotation and a permutation of the non-hub labels.
bool matches_published(const LayoutMatrix& m, int hub) {
  LayoutMatrix r = m;
  for (int turn = 0; turn < 4; ++turn, r = rotate(r)) {
    if (r.rows() != 3 || r.cols() != 3) {
      continue;
    }
    bool same = true;
    for (int i = 0; i < 3 && same; ++i) {
      for (int j = 0; j < 3 && same; ++j) {
        const int want = kPublishedMatrix.at(i, j);
        const int got = r.at(i, j);
        if (want == kNoQubit || want == 4) {
          same = got == (want == 4 ? hub : kNoQubit);
        } else {
          same = got != kNoQubit && got != hub;
        }
      }
    }
    if (same) {
      return true;
    }
  }
  return false;
}

Outcome swap_comparison() {
  const auto t0 = Clock::now();
  const auto qc = test::worked_example();
  const auto lima = route(qc, test::lima(), Mapping::identity(5));
  const auto star = route(qc, test::star(), Mapping::identity(5));
  const bool sound = respects_coupling(lima, test::lima()) &&
                     respects_coupling(star, test::star()) &&
                     check_equivalence(qc, lima) && check_equivalence(qc, star);
  const double t = seconds_since(t0);
  return {sound && lima.swap_count <= 5 && star.swap_count <= 2 &&
              star.swap_count < lima.swap_count && t < 1.0,
          fmt("lima=%zu star=%zu sound=%d (%.3fs)", lima.swap_count, star.swap_count,
              sound, t)};
}

Outcome architecture_reproduction() {
  const auto t0 = Clock::now();
  const auto arch = generate_architecture(test::worked_example(), DesignConfig{});
  const auto hub_cell = arch.layout.find(4);
  const int hub = hub_cell ? arch.layout.at(hub_cell->row, hub_cell->col) : -1;
  int leaves = 0;
  for (int q = 0; q < arch.num_qubits(); ++q) {
    leaves += q != hub && arch.coupling.degree(q) == 1 && arch.coupling.has_edge(q, hub);
  }
  const bool star = arch.coupling.edges().size() == 4 && hub >= 0 &&
                    arch.coupling.degree(hub) == 4 && leaves == 4;
  const bool matrix = matches_published(arch.layout, hub);
  const double t = seconds_since(t0);
  return {star && matrix && t < 1.0,
          fmt("hub=Q%d star=%d matrix=%d (%.3fs)", hub, star, matrix, t)};
}

Outcome frequency_feasibility() {
  const DesignConfig cfg;
  const bool defaults = cfg.frequency.min_adjacent_detuning_ghz == kAdjacentDetuning &&
                        cfg.frequency.min_next_detuning_ghz == kNextDetuning;
  std::string published = "ok";
  try {
    validate_architecture(test::star_architecture(kPublishedFrequencies), cfg);
  } catch (const ArchitectureError& e) {
    published = e.what();
  }
  std::string own = "ok";
  try {
    validate_architecture(generate_architecture(test::worked_example(), cfg), cfg);
  } catch (const ArchitectureError& e) {
    own = e.what();
  }
  return {defaults && published == "ok" && own == "ok",
          "published vector: " + published + "; allocator output: " + own};
}

Outcome routing_correctness() {
  const auto t0 = Clock::now();
  std::mt19937 rng(2024);
  int sound = 0, equivalent = 0, oracle_checked = 0, above_optimum = 0, optimal = 0;
  for (int i = 0; i < kRandomRoutingInstances; ++i) {
    const int logical = 1 + static_cast<int>(rng() % 6);
    const int physical = logical + static_cast<int>(rng() % (kMaxOraclePhysical - logical + 1));
    const auto coupling = test::random_connected(rng, physical, 0.2);
    const auto qc = test::random_circuit(rng, logical, 12);
    const auto mapping = initial_mapping(interaction_graph(qc), coupling);
    const auto routed = route(qc, coupling, mapping);
    sound += respects_coupling(routed, coupling);
    equivalent += check_equivalence(qc, routed, kAmplitudeTol);
    if (circuit_stats(qc).two_qubit_count <= kMaxOracleTwoQubitGates) {
      const auto optimum = optimal_swap_count(qc, coupling, mapping);
      ++oracle_checked;
      above_optimum += routed.swap_count >= optimum;
      optimal += routed.swap_count == optimum;
    }
  }
  const double t = seconds_since(t0);
  const int n = kRandomRoutingInstances;
  return {sound == n && equivalent == n && above_optimum == oracle_checked && t < 120.0,
          fmt("sound %d/%d equivalent %d/%d oracle-bound %d/%d (optimal %d) (%.1fs)",
              sound, n, equivalent, n, above_optimum, oracle_checked, optimal, t)};
}

Outcome resonator_sizing() {
  const auto t0 = Clock::now();
  const double len = resonator_length(7.0, 6.45, ResonatorMode::Half);
  const DesignConfig cfg;
  const auto doc = build_layout(generate_architecture(test::worked_example(), cfg), cfg);
  double worst = 0.0;
  int resonators = 0;
  for (const auto& c : doc.components()) {
    if (c.kind != ComponentKind::CouplingResonator) {
      continue;
    }
    ++resonators;
    const double target =
        resonator_length(c.options.at("frequency").gigahertz(), cfg.layout.epsilon_eff,
                         cfg.layout.resonator_mode) * 1000.0;
    for (const auto& p : c.shapes.polylines) {
      worst = std::max(worst, std::abs(p.length() - target) / target);
    }
  }
  const double t = seconds_since(t0);
  return {std::abs(len - kResonatorTargetMm) <= kResonatorTolMm && resonators == 4 &&
              worst <= kLengthRelTol && t < 1.0,
          fmt("length(7 GHz)=%.6f mm, %d couplers, worst rel err %.2e (%.3fs)", len,
              resonators, worst, t)};
}

Outcome layout_structure() {
  const DesignConfig cfg;
  const auto doc = build_layout(generate_architecture(test::worked_example(), cfg), cfg);
  const std::array<std::size_t, 5> census = {
      doc.count(ComponentKind::Transmon), doc.count(ComponentKind::CouplingResonator),
      doc.count(ComponentKind::ReadoutResonator), doc.count(ComponentKind::Capacitor),
      doc.count(ComponentKind::ControlLine)};
  const bool counts = census == std::array<std::size_t, 5>{5, 4, 5, 5, 5};
  const auto* hub = doc.find("Q_4");
  const bool centred = hub != nullptr && hub->position == Point{0.0, 0.0};

  const double hw = doc.chip_width_um / 2, hh = doc.chip_height_um / 2;
  bool inside = true;
  std::vector<Rect> pads;
  for (const auto& c : doc.components()) {
    for (const auto& r : c.shapes.rects) {
      inside = inside && r.x >= -hw && r.x + r.width <= hw && r.y >= -hh &&
               r.y + r.height <= hh;
      if (r.role == "pad") {
        pads.push_back(r);
      }
    }
    for (const auto& p : c.shapes.polylines) {
      for (const auto& pt : p.points) {
        inside = inside && std::abs(pt.x) <= hw && std::abs(pt.y) <= hh;
      }
    }
  }
  bool disjoint = true;
  for (std::size_t i = 0; i < pads.size(); ++i) {
    for (std::size_t j = i + 1; j < pads.size(); ++j) {
      disjoint = disjoint && !pads[i].overlaps(pads[j]);
    }
  }
  return {counts && centred && inside && disjoint,
          fmt("census (%zu,%zu,%zu,%zu,%zu) hub-centred=%d inside=%d pads-disjoint=%d",
              census[0], census[1], census[2], census[3], census[4], centred, inside,
              disjoint)};
}

Outcome optimizer_round_trip() {
  const auto model = fit_model(parse_geometry_csv(bundled_geometry_dataset_csv()), 2);
  // 1, gap, height, gap^2, gap*height, height^2
  const std::vector<double> truth = {7.2, -0.004, -0.012, 0.0, 0.0, 1.5e-5};
  double coef_err = 0.0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    coef_err = std::max(coef_err, std::abs(model.coefficients[k] - truth[k]));
  }

  const DesignConfig cfg;
  auto doc = build_layout(test::star_architecture(kPublishedFrequencies), cfg);
  const auto report = optimize_layout(doc, kPublishedFrequencies, cfg, model);
  double freq_err = 0.0;
  bool all_ok = report.qubits.size() == kPublishedFrequencies.size();
  for (const auto& q : report.qubits) {
    all_ok = all_ok && q.ok;
    const auto& opts = doc.find(q.component)->options;
    const double predicted = predict_frequency(model, opts.at("pad_gap").micrometers(),
                                               opts.at("pad_height").micrometers())
                                 .frequency_ghz;
    freq_err = std::max(freq_err, std::abs(predicted - q.target_ghz));
  }

  doc.update_component("Q_0", "pad_gap", "10um");
  const auto text = dump_json(layout_to_json(doc));
  const auto parsed = nlohmann::json::parse(text);
  const auto& gap = parsed["components"][0]["options"]["pad_gap"];
  const bool exact = parsed["components"][0]["name"] == "Q_0" &&
                     gap["value"].get<double>() == 10.0 && gap["unit"] == "um";

  return {coef_err <= kCoefficientTol && all_ok && freq_err <= kFrequencyTolGhz && exact,
          fmt("max coef err %.2e, max freq err %.2e GHz, updates ok=%d, pad_gap exact=%d",
              coef_err, freq_err, all_ok, exact)};
}

Outcome push_button_flow() {
  const auto base = fs::temp_directory_path() / "dasqa_acceptance";
  fs::remove_all(base);
  const auto golden = test::data_dir() / "golden";
  const char* files[] = {"architecture.json", "layout.json", "layout.svg", "report.json"};
  int status_ok = 0;
  bool repeat_identical = true;
  bool golden_identical = true;
  for (int run = 0; run < 2; ++run) {
    const auto out = base / ("run" + std::to_string(run));
    const std::string cmd = std::string(DASQA_CLI) + " --file-path " +
                            (test::data_dir() / "worked_example.qasm").string() +
                            " --config-file-path " +
                            (test::data_dir() / "default.yml").string() + " --out-dir " +
                            out.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    status_ok += WIFEXITED(status) && WEXITSTATUS(status) == 0;
    for (const char* f : files) {
      const auto produced = test::read_file(out / f);
      golden_identical = golden_identical && !produced.empty() &&
                         produced == test::read_file(golden / f);
      if (run == 1) {
        repeat_identical =
            repeat_identical && produced == test::read_file(base / "run0" / f);
      }
    }
  }
  return {status_ok == 2 && repeat_identical && golden_identical,
          fmt("exit-0 runs %d/2, repeat identical=%d, golden identical=%d", status_ok,
              repeat_identical, golden_identical)};
}

} // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"worked-example SWAP comparison", swap_comparison},
      {"architecture reproduction", architecture_reproduction},
      {"frequency-constraint feasibility", frequency_feasibility},
      {"routing correctness", routing_correctness},
      {"resonator sizing", resonator_sizing},
      {"layout structure", layout_structure},
      {"optimizer round trip", optimizer_round_trip},
      {"push-button flow", push_button_flow},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %d  %-34s %s\n", o.pass ? "PASS" : "FAIL", index, name,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
