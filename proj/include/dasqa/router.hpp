#pragma once

#include "dasqa/architecture.hpp"
#include "dasqa/circuit.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dasqa {

/// Injective logical -> physical assignment.
struct Mapping {
  std::vector<int> physical;  // physical[logical]

  [[nodiscard]] int num_logical() const {
    return static_cast<int>(physical.size());
  }
  /// Throws RoutingError unless injective into [0, num_physical).
  void validate(int num_physical) const;

  static Mapping identity(int n);
  bool operator==(const Mapping&) const = default;
};

struct RoutedGate {
  Gate gate;              // operands are physical qubits
  bool inserted = false;  // SWAP added by the router
  bool operator==(const RoutedGate&) const = default;
};

struct RoutedCircuit {
  int num_physical = 0;
  std::vector<RoutedGate> gates;
  Mapping initial_mapping;
  Mapping final_mapping;
  std::size_t swap_count = 0;
  std::size_t depth = 0;
};

class RoutingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RouterOptions {
  /// Upcoming two-qubit gates scored when choosing how to split a SWAP chain.
  std::size_t lookahead = 8;
};

/// Interacting logical qubits (weighted degree desc) onto physical qubits
/// (coupling degree desc), then one pass of pairwise exchanges that reduce
/// the weighted mapped distance. Idle logical qubits take the remaining
/// physical qubits in index order.
Mapping initial_mapping(const InteractionGraph& ig, const CouplingGraph& coupling);

/// Inserts SWAPs along shortest coupling paths so every two-qubit gate acts
/// on an edge. The chain for a distant pair is split between both endpoints
/// by lookahead cost; ties move the lower-indexed logical qubit.
RoutedCircuit route(const QuantumCircuit& qc, const CouplingGraph& coupling,
                    const Mapping& mapping, const RouterOptions& options = {});

/// Exact minimum SWAP count by 0-1 BFS over (placement, gate index). With no
/// mapping the minimum also ranges over initial placements. Limited to
/// <= 6 logical qubits, <= 8 physical qubits and <= 10 two-qubit gates.
std::size_t optimal_swap_count(const QuantumCircuit& qc,
                               const CouplingGraph& coupling,
                               const std::optional<Mapping>& mapping);

inline constexpr int kMaxOracleLogical = 6;
inline constexpr int kMaxOraclePhysical = 8;
inline constexpr std::size_t kMaxOracleTwoQubitGates = 10;
inline constexpr int kMaxSimulatedQubits = 10;

/// Statevector comparison of the routed circuit against the original over
/// every basis input, undoing the initial placement and the final
/// permutation. Global phase is ignored; measure/barrier are skipped.
bool check_equivalence(const QuantumCircuit& original, const RoutedCircuit& routed,
                       double tolerance = 1e-9);

/// True when every two-qubit gate of the routed circuit sits on an edge.
bool respects_coupling(const RoutedCircuit& routed, const CouplingGraph& coupling);

struct ArchitectureScore {
  std::size_t swap_count = 0;
  std::size_t routed_depth = 0;
  bool operator==(const ArchitectureScore&) const = default;
};

ArchitectureScore score_architecture(const QuantumCircuit& qc,
                                     const CouplingGraph& coupling,
                                     const RouterOptions& options = {});

} // namespace dasqa
