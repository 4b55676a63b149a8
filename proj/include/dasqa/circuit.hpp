#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dasqa {

enum class GateKind { X, Y, Z, H, S, T, RZ, CX, CZ, SWAP, MEASURE, BARRIER };

/// Lower-case OpenQASM mnemonic for a gate kind.
std::string_view gate_name(GateKind kind);

/// Number of qubit operands a kind requires; BARRIER is variadic and returns 0.
std::size_t gate_arity(GateKind kind);

bool is_two_qubit_kind(GateKind kind);

struct Gate {
  GateKind kind = GateKind::X;
  std::vector<int> qubits;
  double angle = 0.0;  // radians, RZ only
  int clbit = -1;      // MEASURE target bit

  [[nodiscard]] bool is_two_qubit() const { return is_two_qubit_kind(kind); }

  bool operator==(const Gate&) const = default;

  static Gate single(GateKind kind, int q) { return {kind, {q}}; }
  static Gate rz(double angle, int q) { return {GateKind::RZ, {q}, angle}; }
  static Gate two(GateKind kind, int a, int b) { return {kind, {a, b}}; }
  static Gate measure(int q, int c) { return {GateKind::MEASURE, {q}, 0.0, c}; }
};

class CircuitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class QuantumCircuit {
public:
  QuantumCircuit() = default;
  explicit QuantumCircuit(int num_qubits, int num_clbits = 0,
                          std::string name = {});

  /// Appends a gate after checking operand arity and range.
  QuantumCircuit& add(Gate gate);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] int num_clbits() const { return num_clbits_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  [[nodiscard]] bool empty() const { return gates_.empty(); }

private:
  int num_qubits_ = 0;
  int num_clbits_ = 0;
  std::string name_;
  std::vector<Gate> gates_;
};

/// Checks a gate against a register size; throws CircuitError.
void validate_gate(const Gate& gate, int num_qubits, int num_clbits);

/// Unordered pair weights: number of two-qubit gates acting on each pair.
struct InteractionGraph {
  using Pair = std::pair<int, int>;  // first < second

  int num_qubits = 0;
  std::map<Pair, int> edges;

  [[nodiscard]] int weight(int a, int b) const;
  [[nodiscard]] int weighted_degree(int q) const;
  [[nodiscard]] int total_weight() const;
};

InteractionGraph interaction_graph(const QuantumCircuit& qc);

struct CircuitStats {
  std::size_t gate_count = 0;
  std::size_t two_qubit_count = 0;
  std::size_t depth = 0;

  bool operator==(const CircuitStats&) const = default;
};

/// Gate count excludes barriers. Depth uses greedy layering: a gate occupies
/// the layer after the latest layer of any of its qubits; barriers only
/// synchronize their operands.
CircuitStats circuit_stats(const QuantumCircuit& qc);

/// Depth of an arbitrary gate list over `num_qubits` wires.
std::size_t gate_depth(const std::vector<Gate>& gates, int num_qubits);

class QasmError : public std::runtime_error {
public:
  QasmError(const std::string& message, int line, int column);

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Parses the supported OpenQASM 2.0 subset. Registers are flattened in
/// declaration order.
QuantumCircuit parse_qasm(std::string_view source);

/// Emits a single-register program that parse_qasm reads back to the same
/// gate list.
std::string to_qasm(const QuantumCircuit& qc);

} // namespace dasqa
