#pragma once

#include "dasqa/architecture.hpp"
#include "dasqa/circuit.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace dasqa::test {

inline std::filesystem::path data_dir() { return DASQA_TEST_DATA; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline QuantumCircuit worked_example() { return parse_qasm(read_file(data_dir() / "worked_example.qasm")); }

inline CouplingGraph lima() { return CouplingGraph(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}}); }

inline CouplingGraph star() { return CouplingGraph(5, {{0, 4}, {1, 4}, {2, 4}, {3, 4}}); }

inline Architecture star_architecture(const std::vector<double>& freqs) {
  Architecture arch;
  arch.layout = LayoutMatrix::from_rows({{-1, 2, -1}, {3, 4, 0}, {-1, 1, -1}});
  arch.coupling = star();
  arch.frequencies = freqs;
  return arch;
}

/// Up to `max_gates` gates over n qubits, mixing every routable kind.
inline QuantumCircuit random_circuit(std::mt19937& rng, int n, int max_gates) {
  QuantumCircuit qc(n);
  std::uniform_int_distribution<int> count(0, max_gates);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const int gates = count(rng);
  for (int i = 0; i < gates; ++i) {
    const int k = kind(rng);
    const int a = qubit(rng);
    if (k < 4 && n >= 2) {
      int b = qubit(rng);
      while (b == a) {
        b = qubit(rng);
      }
      const GateKind two[] = {GateKind::CX, GateKind::CX, GateKind::CZ, GateKind::SWAP};
      qc.add(Gate::two(two[k], a, b));
    } else if (k == 4) {
      qc.add(Gate::rz(angle(rng), a));
    } else {
      const GateKind one[] = {GateKind::H, GateKind::X, GateKind::Y,
                              GateKind::S, GateKind::T, GateKind::Z};
      qc.add(Gate::single(one[(k + a) % 6], a));
    }
  }
  return qc;
}

/// Random connected graph: a random spanning tree plus extra edges.
inline CouplingGraph random_connected(std::mt19937& rng, int n, double extra_p) {
  CouplingGraph g(n);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    order[static_cast<std::size_t>(i)] = i;
  }
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    g.add_edge(order[static_cast<std::size_t>(i)],
               order[static_cast<std::size_t>(parent(rng))]);
  }
  std::bernoulli_distribution extra(extra_p);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (extra(rng)) {
        g.add_edge(a, b);
      }
    }
  }
  return g;
}

} // namespace dasqa::test
