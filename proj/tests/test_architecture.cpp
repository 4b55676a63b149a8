#include "support.hpp"

#include "dasqa/router.hpp"

#include <gtest/gtest.h>

using namespace dasqa;

namespace {

DesignConfig grid_config(int rows, int cols) {
  DesignConfig cfg;
  cfg.grid.rows = rows;
  cfg.grid.cols = cols;
  return cfg;
}

bool is_cross_with_hub(const LayoutMatrix& m, int hub) {
  if (m.rows() != 3 || m.cols() != 3 || m.at(1, 1) != hub) {
    return false;
  }
  for (auto [r, c] : {std::pair{0, 0}, {0, 2}, {2, 0}, {2, 2}}) {
    if (m.at(r, c) != kNoQubit) {
      return false;
    }
  }
  std::set<int> leaves = {m.at(0, 1), m.at(1, 0), m.at(1, 2), m.at(2, 1)};
  return leaves == std::set<int>{0, 1, 2, 3};
}

} // namespace

TEST(Placement, WorkedExampleIsCross) {
  const auto layout = place_qubits(interaction_graph(test::worked_example()), DesignConfig{});
  EXPECT_TRUE(is_cross_with_hub(layout, 4));
}

TEST(Placement, SingleQubit) {
  const auto layout = place_qubits(interaction_graph(QuantumCircuit(1)), DesignConfig{});
  EXPECT_EQ(layout.to_rows(), (std::vector<std::vector<int>>{{0}}));
}

TEST(Placement, PathOnTwoByThree) {
  const auto qc = parse_qasm("qreg q[3]; cx q[0],q[1]; cx q[1],q[2];");
  const auto ig = interaction_graph(qc);
  const auto layout = place_qubits(ig, grid_config(2, 3));
  EXPECT_EQ(realized_weight(layout, ig), 2);
}

TEST(Placement, GridTooSmall) {
  EXPECT_THROW(place_qubits(interaction_graph(QuantumCircuit(5)), grid_config(2, 2)),
               ArchitectureError);
}

TEST(Placement, DefaultGridIsSmallestSquare) {
  EXPECT_EQ(grid_shape(5, GridConfig{}), (std::pair{3, 3}));
  EXPECT_EQ(grid_shape(9, GridConfig{}), (std::pair{3, 3}));
  EXPECT_EQ(grid_shape(10, GridConfig{}), (std::pair{4, 4}));
  GridConfig rows_only;
  rows_only.rows = 1;
  EXPECT_EQ(grid_shape(4, rows_only), (std::pair{1, 4}));
}

TEST(Couplings, CrossGivesStar) {
  const auto ig = interaction_graph(test::worked_example());
  const auto layout = LayoutMatrix::from_rows({{-1, 2, -1}, {3, 4, 0}, {-1, 1, -1}});
  const auto coupling = derive_couplings(layout, ig, DesignConfig{});
  EXPECT_EQ(coupling, test::star());
  EXPECT_EQ(coupling.degree(4), 4);
}

TEST(Couplings, SingleCellEmpty) {
  const auto coupling = derive_couplings(LayoutMatrix::from_rows({{0}}),
                                         interaction_graph(QuantumCircuit(1)), DesignConfig{});
  EXPECT_TRUE(coupling.edges().empty());
}

TEST(Couplings, IdleEdgesOnlyWhenEnabled) {
  const auto layout = LayoutMatrix::from_rows({{0, 1}, {2, 3}});
  const auto ig = interaction_graph(QuantumCircuit(4));
  DesignConfig cfg;
  EXPECT_TRUE(derive_couplings(layout, ig, cfg).edges().empty());
  cfg.grid.include_idle_edges = true;
  EXPECT_EQ(derive_couplings(layout, ig, cfg).edges().size(), 4u);
}

TEST(Couplings, DegreeCapKeepsHeaviest) {
  const auto qc = parse_qasm(
      "qreg q[5]; cx q[4],q[0]; cx q[4],q[0]; cx q[4],q[0]; cx q[4],q[1]; cx q[4],q[1];"
      "cx q[4],q[2]; cx q[4],q[3];");
  const auto layout = LayoutMatrix::from_rows({{-1, 2, -1}, {3, 4, 0}, {-1, 1, -1}});
  DesignConfig cfg;
  cfg.grid.max_degree = 2;
  const auto coupling = derive_couplings(layout, interaction_graph(qc), cfg);
  EXPECT_EQ(coupling.edges(), (std::set<CouplingGraph::Edge>{{0, 4}, {1, 4}}));
}

TEST(Frequencies, StarAllocation) {
  const auto freqs = allocate_frequencies(test::star(), DesignConfig{});
  ASSERT_EQ(freqs.size(), 5u);
  EXPECT_TRUE(detuning_violations(test::star(), freqs, 0.09, 0.02).empty());
  for (int leaf = 0; leaf < 4; ++leaf) {
    EXPECT_GE(std::abs(freqs[4] - freqs[static_cast<std::size_t>(leaf)]), 0.09 - 1e-9);
  }
  EXPECT_EQ(freqs[4], 5.0);
}

TEST(Frequencies, PublishedVectorNeedsSmallerAdjacentDetuning) {
  const std::vector<double> published = {5.06, 5.24, 5.08, 5.27, 5.17};
  const auto violations = detuning_violations(test::star(), published, 0.09, 0.02);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].a, 1);
  EXPECT_EQ(violations[0].b, 4);
  EXPECT_NEAR(violations[0].detuning_ghz, 0.07, 1e-12);
  EXPECT_TRUE(detuning_violations(test::star(), published, 0.07, 0.02).empty());
}

TEST(Frequencies, SingleQubitLowestBand) {
  EXPECT_EQ(allocate_frequencies(CouplingGraph(1), DesignConfig{}),
            std::vector<double>{5.0});
}

TEST(Frequencies, InfeasibleNamesQubit) {
  DesignConfig cfg;
  cfg.frequency.band_hi_ghz = 5.05;
  try {
    allocate_frequencies(CouplingGraph(2, {{0, 1}}), cfg);
    FAIL();
  } catch (const ArchitectureError& e) {
    EXPECT_NE(std::string(e.what()).find("qubit 1"), std::string::npos);
  }
}

TEST(Generate, WorkedExampleStar) {
  const auto arch = generate_architecture(test::worked_example(), DesignConfig{});
  EXPECT_EQ(arch.coupling, test::star());
  EXPECT_TRUE(is_cross_with_hub(arch.layout, 4));
  EXPECT_NO_THROW(validate_architecture(arch, DesignConfig{}));
}

TEST(Generate, EmptyCircuitIsolatedQubits) {
  const auto arch = generate_architecture(QuantumCircuit(4), DesignConfig{});
  EXPECT_EQ(arch.num_qubits(), 4);
  EXPECT_TRUE(arch.coupling.edges().empty());
  EXPECT_EQ(arch.frequencies, std::vector<double>(4, 5.0));
}

TEST(Generate, ChainCircuitRoutesWithoutSwaps) {
  const auto qc = parse_qasm(
      "qreg q[5]; cx q[0],q[1]; cx q[1],q[2]; cx q[2],q[3]; cx q[3],q[4];");
  const auto arch = generate_architecture(qc, DesignConfig{});
  for (int q = 0; q < 4; ++q) {
    EXPECT_TRUE(arch.coupling.has_edge(q, q + 1));
  }
  EXPECT_EQ(score_architecture(qc, arch.coupling).swap_count, 0u);
}

TEST(Generate, CustomPlacerIsUsed) {
  const QubitPlacer row = [](const InteractionGraph& ig, const DesignConfig&) {
    LayoutMatrix m(1, ig.num_qubits);
    for (int q = 0; q < ig.num_qubits; ++q) {
      m.set(0, q, q);
    }
    return m;
  };
  const auto arch = generate_architecture(test::worked_example(), DesignConfig{}, row);
  EXPECT_EQ(arch.layout.rows(), 1);
  EXPECT_EQ(arch.coupling.edges(),
            (std::set<CouplingGraph::Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
}

TEST(Validate, RejectsBrokenArchitectures) {
  DesignConfig cfg;
  auto arch = test::star_architecture({5.09, 5.11, 5.13, 5.15, 5.0});
  EXPECT_NO_THROW(validate_architecture(arch, cfg));

  auto non_adjacent = arch;
  non_adjacent.coupling.add_edge(0, 3);
  EXPECT_THROW(validate_architecture(non_adjacent, cfg), ArchitectureError);

  auto out_of_band = arch;
  out_of_band.frequencies[0] = 5.5;
  EXPECT_THROW(validate_architecture(out_of_band, cfg), ArchitectureError);

  auto short_vector = arch;
  short_vector.frequencies.pop_back();
  EXPECT_THROW(validate_architecture(short_vector, cfg), ArchitectureError);

  auto collision = arch;
  collision.frequencies[1] = 5.10;
  EXPECT_THROW(validate_architecture(collision, cfg), ArchitectureError);

  cfg.grid.max_degree = 3;
  EXPECT_THROW(validate_architecture(arch, cfg), ArchitectureError);
}

TEST(LayoutMatrixType, Validation) {
  EXPECT_THROW(LayoutMatrix::from_rows({{0, 0}}).validate(2), ArchitectureError);
  EXPECT_THROW(LayoutMatrix::from_rows({{0, 2}}).validate(2), ArchitectureError);
  EXPECT_THROW(LayoutMatrix::from_rows({{0, -1}, {1}}), ArchitectureError);
  EXPECT_NO_THROW(LayoutMatrix::from_rows({{1, -1}, {-1, 0}}).validate(2));
}

TEST(ChainArchitecture, Shape) {
  const auto arch = chain_architecture(4, DesignConfig{});
  EXPECT_EQ(arch.coupling.edges().size(), 3u);
  EXPECT_NO_THROW(validate_architecture(arch, DesignConfig{}));
}
