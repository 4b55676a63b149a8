#include "dasqa/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace dasqa {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
  case GateKind::X: return "x";
  case GateKind::Y: return "y";
  case GateKind::Z: return "z";
  case GateKind::H: return "h";
  case GateKind::S: return "s";
  case GateKind::T: return "t";
  case GateKind::RZ: return "rz";
  case GateKind::CX: return "cx";
  case GateKind::CZ: return "cz";
  case GateKind::SWAP: return "swap";
  case GateKind::MEASURE: return "measure";
  case GateKind::BARRIER: return "barrier";
  }
  return "?";
}

std::size_t gate_arity(GateKind kind) {
  if (kind == GateKind::BARRIER) {
    return 0;
  }
  return is_two_qubit_kind(kind) ? 2 : 1;
}

bool is_two_qubit_kind(GateKind kind) {
  return kind == GateKind::CX || kind == GateKind::CZ || kind == GateKind::SWAP;
}

void validate_gate(const Gate& gate, int num_qubits, int num_clbits) {
  const auto arity = gate_arity(gate.kind);
  if (arity != 0 && gate.qubits.size() != arity) {
    throw CircuitError(std::string(gate_name(gate.kind)) + " expects " +
                       std::to_string(arity) + " operand(s), got " +
                       std::to_string(gate.qubits.size()));
  }
  if (gate.kind == GateKind::BARRIER && gate.qubits.empty()) {
    throw CircuitError("barrier without operands");
  }
  for (int q : gate.qubits) {
    if (q < 0 || q >= num_qubits) {
      throw CircuitError("qubit index " + std::to_string(q) +
                         " out of range [0, " + std::to_string(num_qubits) +
                         ")");
    }
  }
  std::vector<int> sorted = gate.qubits;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw CircuitError(std::string(gate_name(gate.kind)) +
                       ": duplicate operand q[" +
                       std::to_string(*std::adjacent_find(sorted.begin(),
                                                          sorted.end())) +
                       "]");
  }
  if (gate.kind == GateKind::MEASURE &&
      (gate.clbit < 0 || gate.clbit >= num_clbits)) {
    throw CircuitError("measure target bit " + std::to_string(gate.clbit) +
                       " out of range");
  }
}

QuantumCircuit::QuantumCircuit(int num_qubits, int num_clbits, std::string name)
    : num_qubits_(num_qubits), num_clbits_(num_clbits), name_(std::move(name)) {
  if (num_qubits < 0 || num_clbits < 0) {
    throw CircuitError("negative register size");
  }
}

QuantumCircuit& QuantumCircuit::add(Gate gate) {
  validate_gate(gate, num_qubits_, num_clbits_);
  gates_.push_back(std::move(gate));
  return *this;
}

int InteractionGraph::weight(int a, int b) const {
  const auto it = edges.find(std::minmax(a, b));
  return it == edges.end() ? 0 : it->second;
}

int InteractionGraph::weighted_degree(int q) const {
  int total = 0;
  for (const auto& [pair, w] : edges) {
    if (pair.first == q || pair.second == q) {
      total += w;
    }
  }
  return total;
}

int InteractionGraph::total_weight() const {
  int total = 0;
  for (const auto& [pair, w] : edges) {
    total += w;
  }
  return total;
}

InteractionGraph interaction_graph(const QuantumCircuit& qc) {
  InteractionGraph ig;
  ig.num_qubits = qc.num_qubits();
  for (const auto& g : qc.gates()) {
    if (g.is_two_qubit()) {
      ++ig.edges[std::minmax(g.qubits[0], g.qubits[1])];
    }
  }
  return ig;
}

std::size_t gate_depth(const std::vector<Gate>& gates, int num_qubits) {
  std::vector<std::size_t> level(static_cast<std::size_t>(num_qubits), 0);
  std::size_t depth = 0;
  for (const auto& g : gates) {
    std::size_t top = 0;
    for (int q : g.qubits) {
      top = std::max(top, level[static_cast<std::size_t>(q)]);
    }
    if (g.kind != GateKind::BARRIER) {
      ++top;
    }
    for (int q : g.qubits) {
      level[static_cast<std::size_t>(q)] = top;
    }
    depth = std::max(depth, top);
  }
  return depth;
}

CircuitStats circuit_stats(const QuantumCircuit& qc) {
  CircuitStats stats;
  for (const auto& g : qc.gates()) {
    if (g.kind == GateKind::BARRIER) {
      continue;
    }
    ++stats.gate_count;
    if (g.is_two_qubit()) {
      ++stats.two_qubit_count;
    }
  }
  stats.depth = gate_depth(qc.gates(), qc.num_qubits());
  return stats;
}

std::string to_qasm(const QuantumCircuit& qc) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  if (qc.num_qubits() > 0) {
    out << "qreg q[" << qc.num_qubits() << "];\n";
  }
  if (qc.num_clbits() > 0) {
    out << "creg c[" << qc.num_clbits() << "];\n";
  }
  for (const auto& g : qc.gates()) {
    out << gate_name(g.kind);
    if (g.kind == GateKind::RZ) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", g.angle);
      out << '(' << buf << ')';
    }
    out << ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      out << (i ? "," : "") << "q[" << g.qubits[i] << ']';
    }
    if (g.kind == GateKind::MEASURE) {
      out << " -> c[" << g.clbit << ']';
    }
    out << ";\n";
  }
  return out.str();
}

} // namespace dasqa
