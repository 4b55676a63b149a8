#include "dasqa/router.hpp"

#include "dasqa/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace dasqa {

void Mapping::validate(int num_physical) const {
  std::vector<bool> used(static_cast<std::size_t>(std::max(num_physical, 0)),
                         false);
  for (std::size_t l = 0; l < physical.size(); ++l) {
    const int p = physical[l];
    if (p < 0 || p >= num_physical) {
      throw RoutingError("logical qubit " + std::to_string(l) +
                         " mapped outside the architecture");
    }
    if (used[static_cast<std::size_t>(p)]) {
      throw RoutingError("mapping is not injective at physical qubit " +
                         std::to_string(p));
    }
    used[static_cast<std::size_t>(p)] = true;
  }
}

Mapping Mapping::identity(int n) {
  Mapping m;
  m.physical.resize(static_cast<std::size_t>(n));
  std::iota(m.physical.begin(), m.physical.end(), 0);
  return m;
}

namespace {

using DistanceTable = std::vector<std::vector<int>>;

std::int64_t mapped_cost(const InteractionGraph& ig, const DistanceTable& dist,
                         const std::vector<int>& l2p) {
  std::int64_t cost = 0;
  for (const auto& [pair, w] : ig.edges) {
    cost += static_cast<std::int64_t>(w) *
            dist[static_cast<std::size_t>(l2p[static_cast<std::size_t>(pair.first)])]
                [static_cast<std::size_t>(l2p[static_cast<std::size_t>(pair.second)])];
  }
  return cost;
}

// Shortest path with the smallest-index next hop at every step.
std::vector<int> shortest_path(const CouplingGraph& coupling,
                               const DistanceTable& dist, int from, int to) {
  std::vector<int> path{from};
  int cur = from;
  while (cur != to) {
    const int here = dist[static_cast<std::size_t>(cur)][static_cast<std::size_t>(to)];
    for (int v : coupling.neighbors(cur)) {
      if (dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(to)] == here - 1) {
        cur = v;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

struct Placement {
  std::vector<int> l2p;
  std::vector<int> p2l;

  void swap_physical(int u, int v) {
    const int lu = p2l[static_cast<std::size_t>(u)];
    const int lv = p2l[static_cast<std::size_t>(v)];
    std::swap(p2l[static_cast<std::size_t>(u)], p2l[static_cast<std::size_t>(v)]);
    if (lu >= 0) {
      l2p[static_cast<std::size_t>(lu)] = v;
    }
    if (lv >= 0) {
      l2p[static_cast<std::size_t>(lv)] = u;
    }
  }
};

// SWAPs that move path[0]'s occupant `k` hops forward and path.back()'s
// occupant the remaining hops backward, leaving the two adjacent.
std::vector<std::pair<int, int>> split_swaps(const std::vector<int>& path,
                                             std::size_t k) {
  std::vector<std::pair<int, int>> swaps;
  const std::size_t last = path.size() - 1;
  for (std::size_t i = 0; i < k; ++i) {
    swaps.emplace_back(path[i], path[i + 1]);
  }
  for (std::size_t j = last; j > k + 1; --j) {
    swaps.emplace_back(path[j], path[j - 1]);
  }
  return swaps;
}

} // namespace

Mapping initial_mapping(const InteractionGraph& ig, const CouplingGraph& coupling) {
  const int n = ig.num_qubits;
  const int p = coupling.num_qubits();
  if (n > p) {
    throw RoutingError("architecture has " + std::to_string(p) +
                       " qubits, circuit needs " + std::to_string(n));
  }
  std::vector<int> logical(static_cast<std::size_t>(n));
  std::iota(logical.begin(), logical.end(), 0);
  std::vector<int> wdeg(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    wdeg[static_cast<std::size_t>(q)] = ig.weighted_degree(q);
  }
  std::stable_sort(logical.begin(), logical.end(), [&](int a, int b) {
    return wdeg[static_cast<std::size_t>(a)] > wdeg[static_cast<std::size_t>(b)];
  });
  std::vector<int> physical(static_cast<std::size_t>(p));
  std::iota(physical.begin(), physical.end(), 0);
  std::stable_sort(physical.begin(), physical.end(), [&](int a, int b) {
    return coupling.degree(a) > coupling.degree(b);
  });

  std::vector<int> l2p(static_cast<std::size_t>(n), -1);
  std::vector<bool> taken(static_cast<std::size_t>(p), false);
  std::size_t next = 0;
  for (int l : logical) {
    if (wdeg[static_cast<std::size_t>(l)] == 0) {
      continue;
    }
    const int ph = physical[next++];
    l2p[static_cast<std::size_t>(l)] = ph;
    taken[static_cast<std::size_t>(ph)] = true;
  }
  int free_phys = 0;
  for (int l = 0; l < n; ++l) {
    if (l2p[static_cast<std::size_t>(l)] >= 0) {
      continue;
    }
    while (taken[static_cast<std::size_t>(free_phys)]) {
      ++free_phys;
    }
    l2p[static_cast<std::size_t>(l)] = free_phys;
    taken[static_cast<std::size_t>(free_phys)] = true;
  }

  const auto dist = coupling.distances();
  std::int64_t cost = mapped_cost(ig, dist, l2p);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      std::swap(l2p[static_cast<std::size_t>(a)], l2p[static_cast<std::size_t>(b)]);
      const std::int64_t candidate = mapped_cost(ig, dist, l2p);
      if (candidate < cost) {
        cost = candidate;
      } else {
        std::swap(l2p[static_cast<std::size_t>(a)], l2p[static_cast<std::size_t>(b)]);
      }
    }
  }
  return Mapping{std::move(l2p)};
}

RoutedCircuit route(const QuantumCircuit& qc, const CouplingGraph& coupling,
                    const Mapping& mapping, const RouterOptions& options) {
  const int p = coupling.num_qubits();
  if (mapping.num_logical() != qc.num_qubits()) {
    throw RoutingError("mapping covers " + std::to_string(mapping.num_logical()) +
                       " qubits, circuit has " + std::to_string(qc.num_qubits()));
  }
  mapping.validate(p);
  const auto dist = coupling.distances();

  Placement place{mapping.physical, std::vector<int>(static_cast<std::size_t>(p), -1)};
  for (std::size_t l = 0; l < place.l2p.size(); ++l) {
    place.p2l[static_cast<std::size_t>(place.l2p[l])] = static_cast<int>(l);
  }

  std::vector<std::size_t> two_qubit_at;
  for (std::size_t i = 0; i < qc.gates().size(); ++i) {
    if (qc.gates()[i].is_two_qubit()) {
      two_qubit_at.push_back(i);
    }
  }

  auto phys_dist = [&](const Placement& pl, int a, int b) {
    return dist[static_cast<std::size_t>(pl.l2p[static_cast<std::size_t>(a)])]
               [static_cast<std::size_t>(pl.l2p[static_cast<std::size_t>(b)])];
  };

  RoutedCircuit out;
  out.num_physical = p;
  out.initial_mapping = mapping;
  std::size_t seen_two_qubit = 0;

  for (const auto& g : qc.gates()) {
    if (g.is_two_qubit()) {
      ++seen_two_qubit;
      const int a = g.qubits[0];
      const int b = g.qubits[1];
      const int d = phys_dist(place, a, b);
      if (d >= CouplingGraph::kUnreachable) {
        throw RoutingError("qubits " + std::to_string(a) + " and " +
                           std::to_string(b) +
                           " are mapped to disconnected parts of the coupling graph");
      }
      if (d > 1) {
        const int lower = std::min(a, b);
        const int upper = std::max(a, b);
        const auto path =
            shortest_path(coupling, dist, place.l2p[static_cast<std::size_t>(lower)],
                          place.l2p[static_cast<std::size_t>(upper)]);
        const std::size_t hops = path.size() - 1;

        std::vector<std::pair<int, int>> best;
        std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
        // k = hops-1 moves only the lower-indexed qubit and is tried first.
        for (std::size_t k = hops; k-- > 0;) {
          auto swaps = split_swaps(path, k);
          Placement trial = place;
          for (const auto& [u, v] : swaps) {
            trial.swap_physical(u, v);
          }
          std::int64_t cost = 0;
          const std::size_t end =
              std::min(two_qubit_at.size(), seen_two_qubit + options.lookahead);
          for (std::size_t j = seen_two_qubit; j < end; ++j) {
            const auto& ahead = qc.gates()[two_qubit_at[j]];
            cost += std::min(phys_dist(trial, ahead.qubits[0], ahead.qubits[1]),
                             static_cast<int>(p) + 1);
          }
          if (cost < best_cost) {
            best_cost = cost;
            best = std::move(swaps);
          }
        }
        for (const auto& [u, v] : best) {
          place.swap_physical(u, v);
          out.gates.push_back({Gate::two(GateKind::SWAP, u, v), true});
          ++out.swap_count;
        }
      }
    }
    Gate mapped = g;
    for (int& q : mapped.qubits) {
      q = place.l2p[static_cast<std::size_t>(q)];
    }
    out.gates.push_back({std::move(mapped), false});
  }

  out.final_mapping = Mapping{place.l2p};
  std::vector<Gate> flat;
  flat.reserve(out.gates.size());
  for (const auto& rg : out.gates) {
    flat.push_back(rg.gate);
  }
  out.depth = gate_depth(flat, p);
  return out;
}

bool respects_coupling(const RoutedCircuit& routed, const CouplingGraph& coupling) {
  return std::all_of(routed.gates.begin(), routed.gates.end(),
                     [&](const RoutedGate& rg) {
                       return !rg.gate.is_two_qubit() ||
                              coupling.has_edge(rg.gate.qubits[0],
                                                rg.gate.qubits[1]);
                     });
}

std::size_t optimal_swap_count(const QuantumCircuit& qc,
                               const CouplingGraph& coupling,
                               const std::optional<Mapping>& mapping) {
  const int n = qc.num_qubits();
  const int p = coupling.num_qubits();
  std::vector<std::pair<int, int>> pairs;
  for (const auto& g : qc.gates()) {
    if (g.is_two_qubit()) {
      pairs.emplace_back(g.qubits[0], g.qubits[1]);
    }
  }
  if (n > kMaxOracleLogical || p > kMaxOraclePhysical ||
      pairs.size() > kMaxOracleTwoQubitGates) {
    throw RoutingError("instance exceeds oracle limits (" + std::to_string(n) +
                       " logical, " + std::to_string(p) + " physical, " +
                       std::to_string(pairs.size()) + " two-qubit gates)");
  }
  if (n > p) {
    throw RoutingError("architecture too small for circuit");
  }
  if (mapping) {
    if (mapping->num_logical() != n) {
      throw RoutingError("mapping size does not match circuit");
    }
    mapping->validate(p);
  }
  const auto dist = coupling.distances();
  const auto edges = std::vector<std::pair<int, int>>(coupling.edges().begin(),
                                                      coupling.edges().end());

  // key = gate index in the top bits, 3 bits per logical qubit below
  auto encode = [&](const std::vector<int>& l2p, std::size_t gate) {
    std::uint32_t key = static_cast<std::uint32_t>(gate);
    for (int l = 0; l < n; ++l) {
      key = (key << 3) | static_cast<std::uint32_t>(l2p[static_cast<std::size_t>(l)]);
    }
    return key;
  };

  struct Node {
    std::vector<int> l2p;
    std::size_t gate;
    std::size_t cost;
  };
  std::unordered_map<std::uint32_t, std::size_t> best;
  std::deque<Node> queue;
  auto push = [&](Node node, bool front) {
    const auto key = encode(node.l2p, node.gate);
    const auto it = best.find(key);
    if (it != best.end() && it->second <= node.cost) {
      return;
    }
    best[key] = node.cost;
    if (front) {
      queue.push_front(std::move(node));
    } else {
      queue.push_back(std::move(node));
    }
  };

  if (mapping) {
    push({mapping->physical, 0, 0}, false);
  } else {
    // every injective placement of n logical qubits onto p physical qubits
    std::vector<int> l2p(static_cast<std::size_t>(n), 0);
    std::vector<bool> used(static_cast<std::size_t>(p), false);
    auto enumerate = [&](auto&& self, int l) -> void {
      if (l == n) {
        push({l2p, 0, 0}, false);
        return;
      }
      for (int ph = 0; ph < p; ++ph) {
        if (!used[static_cast<std::size_t>(ph)]) {
          used[static_cast<std::size_t>(ph)] = true;
          l2p[static_cast<std::size_t>(l)] = ph;
          self(self, l + 1);
          used[static_cast<std::size_t>(ph)] = false;
        }
      }
    };
    enumerate(enumerate, 0);
  }

  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (best[encode(node.l2p, node.gate)] < node.cost) {
      continue;
    }
    if (node.gate == pairs.size()) {
      return node.cost;
    }
    const auto [a, b] = pairs[node.gate];
    if (dist[static_cast<std::size_t>(node.l2p[static_cast<std::size_t>(a)])]
            [static_cast<std::size_t>(node.l2p[static_cast<std::size_t>(b)])] == 1) {
      push({node.l2p, node.gate + 1, node.cost}, true);
      continue;
    }
    std::vector<int> p2l(static_cast<std::size_t>(p), -1);
    for (int l = 0; l < n; ++l) {
      p2l[static_cast<std::size_t>(node.l2p[static_cast<std::size_t>(l)])] = l;
    }
    for (const auto& [u, v] : edges) {
      const int lu = p2l[static_cast<std::size_t>(u)];
      const int lv = p2l[static_cast<std::size_t>(v)];
      if (lu < 0 && lv < 0) {
        continue;
      }
      auto next = node.l2p;
      if (lu >= 0) {
        next[static_cast<std::size_t>(lu)] = v;
      }
      if (lv >= 0) {
        next[static_cast<std::size_t>(lv)] = u;
      }
      push({std::move(next), node.gate, node.cost + 1}, false);
    }
  }
  throw RoutingError("circuit cannot be routed on this coupling graph");
}

bool check_equivalence(const QuantumCircuit& original, const RoutedCircuit& routed,
                       double tolerance) {
  const int n = original.num_qubits();
  const int p = routed.num_physical;
  if (n > kMaxSimulatedQubits || p > kMaxSimulatedQubits) {
    throw RoutingError("equivalence check limited to " +
                       std::to_string(kMaxSimulatedQubits) + " qubits");
  }
  if (routed.initial_mapping.num_logical() != n ||
      routed.final_mapping.num_logical() != n) {
    return false;
  }

  auto to_physical = [&](std::uint64_t x, const Mapping& m) {
    std::uint64_t z = 0;
    for (int l = 0; l < n; ++l) {
      if ((x >> l) & 1U) {
        z |= std::uint64_t{1} << m.physical[static_cast<std::size_t>(l)];
      }
    }
    return z;
  };

  std::complex<double> phase{0.0, 0.0};
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < dim; ++x) {
    StateVector expected(n, x);
    for (const auto& g : original.gates()) {
      expected.apply(g);
    }
    StateVector actual(p, to_physical(x, routed.initial_mapping));
    for (const auto& rg : routed.gates) {
      actual.apply(rg.gate);
    }
    if (phase == std::complex<double>{0.0, 0.0}) {
      std::uint64_t pivot = 0;
      for (std::uint64_t y = 1; y < dim; ++y) {
        if (std::abs(expected[y]) > std::abs(expected[pivot])) {
          pivot = y;
        }
      }
      const auto got = actual[to_physical(pivot, routed.final_mapping)];
      if (std::abs(got) < 0.5 * std::abs(expected[pivot])) {
        return false;
      }
      phase = got / expected[pivot];
      phase /= std::abs(phase);
    }
    for (std::uint64_t y = 0; y < dim; ++y) {
      const auto got = actual[to_physical(y, routed.final_mapping)];
      if (std::abs(got - phase * expected[y]) > tolerance) {
        return false;
      }
    }
  }
  return true;
}

ArchitectureScore score_architecture(const QuantumCircuit& qc,
                                     const CouplingGraph& coupling,
                                     const RouterOptions& options) {
  const auto mapping = initial_mapping(interaction_graph(qc), coupling);
  const auto routed = route(qc, coupling, mapping, options);
  return {routed.swap_count, routed.depth};
}

} // namespace dasqa
