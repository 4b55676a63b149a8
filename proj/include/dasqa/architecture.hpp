#pragma once

#include "dasqa/circuit.hpp"
#include "dasqa/config.hpp"

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dasqa {

inline constexpr int kNoQubit = -1;

/// Tolerance for detuning comparisons on decimal GHz values.
inline constexpr double kFrequencyEps = 1e-9;

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

/// rows x cols grid of physical-qubit indices, kNoQubit where empty.
class LayoutMatrix {
public:
  LayoutMatrix() = default;
  LayoutMatrix(int rows, int cols);
  static LayoutMatrix from_rows(const std::vector<std::vector<int>>& rows);

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] int at(int r, int c) const { return cells_[index(r, c)]; }
  void set(int r, int c, int q) { cells_[index(r, c)] = q; }

  /// Number of occupied cells.
  [[nodiscard]] int num_qubits() const;
  [[nodiscard]] std::optional<Cell> find(int q) const;
  [[nodiscard]] std::vector<std::vector<int>> to_rows() const;

  /// Throws ArchitectureError unless every index 0..n-1 appears exactly once.
  void validate(int expected_qubits) const;

  bool operator==(const LayoutMatrix&) const = default;

private:
  [[nodiscard]] std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> cells_;
};

/// Undirected coupling graph over physical qubits.
class CouplingGraph {
public:
  using Edge = std::pair<int, int>;  // first < second

  CouplingGraph() = default;
  explicit CouplingGraph(int num_qubits, const std::vector<Edge>& edges = {});

  void add_edge(int a, int b);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] const std::set<Edge>& edges() const { return edges_; }
  [[nodiscard]] bool has_edge(int a, int b) const;
  [[nodiscard]] int degree(int q) const;
  /// Sorted ascending.
  [[nodiscard]] const std::vector<int>& neighbors(int q) const;
  [[nodiscard]] int max_degree() const;

  /// All-pairs hop distances; kUnreachable when disconnected.
  [[nodiscard]] std::vector<std::vector<int>> distances() const;
  [[nodiscard]] bool connected() const;

  static constexpr int kUnreachable = 1 << 20;

  bool operator==(const CouplingGraph& o) const {
    return num_qubits_ == o.num_qubits_ && edges_ == o.edges_;
  }

private:
  int num_qubits_ = 0;
  std::set<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

struct Architecture {
  LayoutMatrix layout;
  CouplingGraph coupling;
  std::vector<double> frequencies;  // GHz, indexed by physical qubit

  [[nodiscard]] int num_qubits() const { return coupling.num_qubits(); }
  bool operator==(const Architecture&) const = default;
};

class ArchitectureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct DetuningViolation {
  int a = 0;
  int b = 0;
  int distance = 0;  // 1 = coupled, 2 = next-nearest
  double detuning_ghz = 0.0;
  double required_ghz = 0.0;
};

/// Pairs violating the adjacent / next-nearest detuning thresholds.
std::vector<DetuningViolation>
detuning_violations(const CouplingGraph& coupling,
                    const std::vector<double>& frequencies,
                    double min_adjacent_ghz, double min_next_ghz);

/// Checks the layout, coupling, band and detuning invariants; throws
/// ArchitectureError describing the first violation.
void validate_architecture(const Architecture& arch, const DesignConfig& config);

/// Grid dimensions from config, defaulting to the smallest square grid.
std::pair<int, int> grid_shape(int num_qubits, const GridConfig& grid);

/// Sum of interaction weights over grid-adjacent occupied pairs.
int realized_weight(const LayoutMatrix& layout, const InteractionGraph& ig);

using QubitPlacer =
    std::function<LayoutMatrix(const InteractionGraph&, const DesignConfig&)>;

LayoutMatrix place_qubits(const InteractionGraph& ig, const DesignConfig& config);

CouplingGraph derive_couplings(const LayoutMatrix& layout,
                               const InteractionGraph& ig,
                               const DesignConfig& config);

std::vector<double> allocate_frequencies(const CouplingGraph& coupling,
                                         const DesignConfig& config);

Architecture generate_architecture(const QuantumCircuit& qc,
                                   const DesignConfig& config,
                                   const QubitPlacer& placer = place_qubits);

/// Architecture on a 1 x n grid coupled as a chain.
Architecture chain_architecture(int n, const DesignConfig& config);

} // namespace dasqa
