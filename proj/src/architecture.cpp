#include "dasqa/architecture.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

namespace dasqa {

// --- LayoutMatrix -----------------------------------------------------------

LayoutMatrix::LayoutMatrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
             kNoQubit) {
  if (rows < 0 || cols < 0) {
    throw ArchitectureError("negative layout dimensions");
  }
}

LayoutMatrix LayoutMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  LayoutMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) {
      throw ArchitectureError("ragged layout matrix");
    }
    for (int j = 0; j < c; ++j) {
      m.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }
  return m;
}

int LayoutMatrix::num_qubits() const {
  return static_cast<int>(
      std::count_if(cells_.begin(), cells_.end(),
                    [](int q) { return q != kNoQubit; }));
}

std::optional<Cell> LayoutMatrix::find(int q) const {
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (at(r, c) == q) {
        return Cell{r, c};
      }
    }
  }
  return std::nullopt;
}

std::vector<std::vector<int>> LayoutMatrix::to_rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      out[static_cast<std::size_t>(r)].push_back(at(r, c));
    }
  }
  return out;
}

void LayoutMatrix::validate(int expected_qubits) const {
  std::vector<int> seen(static_cast<std::size_t>(std::max(expected_qubits, 0)),
                        0);
  for (int q : cells_) {
    if (q == kNoQubit) {
      continue;
    }
    if (q < 0 || q >= expected_qubits) {
      throw ArchitectureError("layout holds invalid qubit index " +
                              std::to_string(q));
    }
    if (++seen[static_cast<std::size_t>(q)] > 1) {
      throw ArchitectureError("qubit " + std::to_string(q) +
                              " appears more than once in the layout");
    }
  }
  for (int q = 0; q < expected_qubits; ++q) {
    if (seen[static_cast<std::size_t>(q)] == 0) {
      throw ArchitectureError("qubit " + std::to_string(q) +
                              " missing from the layout");
    }
  }
}

// --- CouplingGraph ----------------------------------------------------------

CouplingGraph::CouplingGraph(int num_qubits, const std::vector<Edge>& edges)
    : num_qubits_(num_qubits),
      adjacency_(static_cast<std::size_t>(std::max(num_qubits, 0))) {
  for (const auto& [a, b] : edges) {
    add_edge(a, b);
  }
}

void CouplingGraph::add_edge(int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= num_qubits_ || b >= num_qubits_) {
    throw ArchitectureError("invalid coupling edge (" + std::to_string(a) +
                            ", " + std::to_string(b) + ")");
  }
  if (!edges_.insert(std::minmax(a, b)).second) {
    return;
  }
  for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
    auto& adj = adjacency_[static_cast<std::size_t>(u)];
    adj.insert(std::lower_bound(adj.begin(), adj.end(), v), v);
  }
}

bool CouplingGraph::has_edge(int a, int b) const {
  return edges_.contains(std::minmax(a, b));
}

int CouplingGraph::degree(int q) const {
  return static_cast<int>(neighbors(q).size());
}

const std::vector<int>& CouplingGraph::neighbors(int q) const {
  return adjacency_.at(static_cast<std::size_t>(q));
}

int CouplingGraph::max_degree() const {
  int best = 0;
  for (int q = 0; q < num_qubits_; ++q) {
    best = std::max(best, degree(q));
  }
  return best;
}

std::vector<std::vector<int>> CouplingGraph::distances() const {
  const auto n = static_cast<std::size_t>(num_qubits_);
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreachable));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<int> queue{static_cast<int>(s)};
    dist[s][s] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adjacency_[static_cast<std::size_t>(u)]) {
        auto& d = dist[s][static_cast<std::size_t>(v)];
        if (d == kUnreachable) {
          d = dist[s][static_cast<std::size_t>(u)] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

bool CouplingGraph::connected() const {
  if (num_qubits_ <= 1) {
    return true;
  }
  const auto d = distances();
  return std::none_of(d[0].begin(), d[0].end(),
                      [](int x) { return x == kUnreachable; });
}

// --- invariants ---------------------------------------------------------------

std::vector<DetuningViolation>
detuning_violations(const CouplingGraph& coupling,
                    const std::vector<double>& frequencies,
                    double min_adjacent_ghz, double min_next_ghz) {
  std::vector<DetuningViolation> out;
  const auto dist = coupling.distances();
  const int n = coupling.num_qubits();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int d = dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (d != 1 && d != 2) {
        continue;
      }
      const double required = d == 1 ? min_adjacent_ghz : min_next_ghz;
      const double detuning = std::abs(frequencies[static_cast<std::size_t>(a)] -
                                       frequencies[static_cast<std::size_t>(b)]);
      if (detuning < required - kFrequencyEps) {
        out.push_back({a, b, d, detuning, required});
      }
    }
  }
  return out;
}

void validate_architecture(const Architecture& arch, const DesignConfig& config) {
  const int n = arch.coupling.num_qubits();
  arch.layout.validate(n);
  for (const auto& [a, b] : arch.coupling.edges()) {
    const auto ca = arch.layout.find(a);
    const auto cb = arch.layout.find(b);
    if (std::abs(ca->row - cb->row) + std::abs(ca->col - cb->col) != 1) {
      throw ArchitectureError("coupling edge (" + std::to_string(a) + ", " +
                              std::to_string(b) +
                              ") joins non-adjacent grid cells");
    }
  }
  if (arch.coupling.max_degree() > config.grid.max_degree) {
    throw ArchitectureError("coupling degree exceeds max_degree " +
                            std::to_string(config.grid.max_degree));
  }
  if (static_cast<int>(arch.frequencies.size()) != n) {
    throw ArchitectureError("frequency vector has " +
                            std::to_string(arch.frequencies.size()) +
                            " entries for " + std::to_string(n) + " qubits");
  }
  const auto& fc = config.frequency;
  for (int q = 0; q < n; ++q) {
    const double f = arch.frequencies[static_cast<std::size_t>(q)];
    if (!(f >= fc.band_lo_ghz - kFrequencyEps &&
          f <= fc.band_hi_ghz + kFrequencyEps)) {
      throw ArchitectureError("frequency of qubit " + std::to_string(q) +
                              " outside the configured band");
    }
  }
  const auto violations =
      detuning_violations(arch.coupling, arch.frequencies,
                          fc.min_adjacent_detuning_ghz, fc.min_next_detuning_ghz);
  if (!violations.empty()) {
    const auto& v = violations.front();
    std::ostringstream msg;
    msg << "qubits " << v.a << " and " << v.b << " (distance " << v.distance
        << ") detuned by " << v.detuning_ghz << " GHz, need " << v.required_ghz;
    throw ArchitectureError(msg.str());
  }
}

// --- generation ---------------------------------------------------------------

std::pair<int, int> grid_shape(int num_qubits, const GridConfig& grid) {
  if (grid.rows && grid.cols) {
    return {*grid.rows, *grid.cols};
  }
  const int n = std::max(num_qubits, 1);
  if (grid.rows) {
    return {*grid.rows, (n + *grid.rows - 1) / *grid.rows};
  }
  if (grid.cols) {
    return {(n + *grid.cols - 1) / *grid.cols, *grid.cols};
  }
  int side = 1;
  while (side * side < n) {
    ++side;
  }
  return {side, side};
}

namespace {

constexpr int kDr[] = {-1, 0, 0, 1};
constexpr int kDc[] = {0, -1, 1, 0};

int cell_score(const LayoutMatrix& layout, const InteractionGraph& ig, int q,
               int r, int c) {
  int score = 0;
  for (int k = 0; k < 4; ++k) {
    const int rr = r + kDr[k];
    const int cc = c + kDc[k];
    if (rr < 0 || cc < 0 || rr >= layout.rows() || cc >= layout.cols()) {
      continue;
    }
    const int other = layout.at(rr, cc);
    if (other != kNoQubit && other != q) {
      score += ig.weight(q, other);
    }
  }
  return score;
}

// Pairwise cell exchanges (occupied or empty) accepted on strict gain, in
// row-major pair order, until a full pass makes no change.
void improve_by_exchange(LayoutMatrix& layout, const InteractionGraph& ig) {
  const int cells = layout.rows() * layout.cols();
  int current = realized_weight(layout, ig);
  for (bool improved = true; improved;) {
    improved = false;
    for (int i = 0; i < cells; ++i) {
      for (int j = i + 1; j < cells; ++j) {
        const int ri = i / layout.cols(), ci = i % layout.cols();
        const int rj = j / layout.cols(), cj = j % layout.cols();
        const int qi = layout.at(ri, ci);
        const int qj = layout.at(rj, cj);
        if (qi == kNoQubit && qj == kNoQubit) {
          continue;
        }
        layout.set(ri, ci, qj);
        layout.set(rj, cj, qi);
        const int candidate = realized_weight(layout, ig);
        if (candidate > current) {
          current = candidate;
          improved = true;
        } else {
          layout.set(ri, ci, qi);
          layout.set(rj, cj, qj);
        }
      }
    }
  }
}

} // namespace

int realized_weight(const LayoutMatrix& layout, const InteractionGraph& ig) {
  int total = 0;
  for (int r = 0; r < layout.rows(); ++r) {
    for (int c = 0; c < layout.cols(); ++c) {
      const int q = layout.at(r, c);
      if (q == kNoQubit) {
        continue;
      }
      if (c + 1 < layout.cols() && layout.at(r, c + 1) != kNoQubit) {
        total += ig.weight(q, layout.at(r, c + 1));
      }
      if (r + 1 < layout.rows() && layout.at(r + 1, c) != kNoQubit) {
        total += ig.weight(q, layout.at(r + 1, c));
      }
    }
  }
  return total;
}

LayoutMatrix place_qubits(const InteractionGraph& ig, const DesignConfig& config) {
  const int n = ig.num_qubits;
  const auto [rows, cols] = grid_shape(n, config.grid);
  if (rows * cols < n) {
    throw ArchitectureError("grid " + std::to_string(rows) + "x" +
                            std::to_string(cols) + " too small for " +
                            std::to_string(n) + " qubits");
  }
  if (n == 0) {
    return LayoutMatrix(rows, cols);
  }

  std::vector<int> wdeg(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    wdeg[static_cast<std::size_t>(q)] = ig.weighted_degree(q);
  }
  // rank[q]: position in (weighted degree desc, index asc) order
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return wdeg[static_cast<std::size_t>(a)] > wdeg[static_cast<std::size_t>(b)];
  });
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  }

  const int center_r = rows / 2;
  const int center_c = cols / 2;
  auto grow_from = [&](int seed) {
    LayoutMatrix layout(rows, cols);
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    std::vector<int> to_placed(static_cast<std::size_t>(n), 0);

    auto put = [&](int q, int r, int c) {
      layout.set(r, c, q);
      placed[static_cast<std::size_t>(q)] = true;
      for (int other = 0; other < n; ++other) {
        to_placed[static_cast<std::size_t>(other)] += ig.weight(q, other);
      }
    };

    put(seed, center_r, center_c);
    for (int step = 1; step < n; ++step) {
      int next = -1;
      for (int q = 0; q < n; ++q) {
        if (placed[static_cast<std::size_t>(q)]) {
          continue;
        }
        if (next < 0 ||
            to_placed[static_cast<std::size_t>(q)] >
                to_placed[static_cast<std::size_t>(next)] ||
            (to_placed[static_cast<std::size_t>(q)] ==
                 to_placed[static_cast<std::size_t>(next)] &&
             rank[static_cast<std::size_t>(q)] < rank[static_cast<std::size_t>(next)])) {
          next = q;
        }
      }
      // best free cell: score desc, distance to centre asc, row-major
      int best_r = -1, best_c = -1, best_score = -1, best_dist = 0;
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          if (layout.at(r, c) != kNoQubit) {
            continue;
          }
          const int score = cell_score(layout, ig, next, r, c);
          const int dist = std::abs(r - center_r) + std::abs(c - center_c);
          if (score > best_score || (score == best_score && dist < best_dist)) {
            best_r = r;
            best_c = c;
            best_score = score;
            best_dist = dist;
          }
        }
      }
      put(next, best_r, best_c);
    }
    improve_by_exchange(layout, ig);
    return layout;
  };

  // Greedy growth from the heaviest qubit, then from every other seed in
  // rank order; a later seed wins only on strictly larger realized weight.
  LayoutMatrix best = grow_from(order.front());
  int best_weight = realized_weight(best, ig);
  for (std::size_t i = 1; i < order.size(); ++i) {
    auto candidate = grow_from(order[i]);
    const int w = realized_weight(candidate, ig);
    if (w > best_weight) {
      best = std::move(candidate);
      best_weight = w;
    }
  }
  return best;
}

CouplingGraph derive_couplings(const LayoutMatrix& layout,
                               const InteractionGraph& ig,
                               const DesignConfig& config) {
  const int n = layout.num_qubits();
  CouplingGraph coupling(n);
  struct Candidate {
    int a, b, weight;
  };
  std::vector<Candidate> candidates;
  for (int r = 0; r < layout.rows(); ++r) {
    for (int c = 0; c < layout.cols(); ++c) {
      const int q = layout.at(r, c);
      if (q == kNoQubit) {
        continue;
      }
      for (auto [rr, cc] : {std::pair{r, c + 1}, std::pair{r + 1, c}}) {
        if (rr < layout.rows() && cc < layout.cols() &&
            layout.at(rr, cc) != kNoQubit) {
          const auto [a, b] = std::minmax({q, layout.at(rr, cc)});
          candidates.push_back({a, b, ig.weight(a, b)});
        }
      }
    }
  }
  // Active pairs by weight; idle pairs keep row-major discovery order.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) {
                     if ((x.weight > 0) != (y.weight > 0)) {
                       return x.weight > 0;
                     }
                     if (x.weight > 0 && x.weight != y.weight) {
                       return x.weight > y.weight;
                     }
                     if (x.weight > 0) {
                       return std::pair{x.a, x.b} < std::pair{y.a, y.b};
                     }
                     return false;
                   });
  const int cap = config.grid.max_degree;
  for (const auto& cand : candidates) {
    if (cand.weight == 0 && !config.grid.include_idle_edges) {
      continue;
    }
    if (coupling.degree(cand.a) < cap && coupling.degree(cand.b) < cap) {
      coupling.add_edge(cand.a, cand.b);
    }
  }

  // Interacting qubits left in different components would be unroutable:
  // join components with idle adjacent pairs until none is split.
  auto split_pair = [&] {
    const auto dist = coupling.distances();
    for (const auto& [pair, w] : ig.edges) {
      if (dist[static_cast<std::size_t>(pair.first)][static_cast<std::size_t>(pair.second)] ==
          CouplingGraph::kUnreachable) {
        return true;
      }
    }
    return false;
  };
  while (split_pair()) {
    const auto dist = coupling.distances();
    bool joined = false;
    for (const auto& cand : candidates) {
      if (dist[static_cast<std::size_t>(cand.a)][static_cast<std::size_t>(cand.b)] ==
              CouplingGraph::kUnreachable &&
          coupling.degree(cand.a) < cap && coupling.degree(cand.b) < cap) {
        coupling.add_edge(cand.a, cand.b);
        joined = true;
        break;
      }
    }
    if (!joined) {
      break;
    }
  }
  return coupling;
}

std::vector<double> allocate_frequencies(const CouplingGraph& coupling,
                                         const DesignConfig& config) {
  const auto& fc = config.frequency;
  const int n = coupling.num_qubits();
  const auto dist = coupling.distances();
  const int lattice_size =
      static_cast<int>(std::floor((fc.band_hi_ghz - fc.band_lo_ghz) / fc.step_ghz +
                                  1e-9)) +
      1;

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return coupling.degree(a) > coupling.degree(b);
  });

  std::vector<double> freq(static_cast<std::size_t>(n), 0.0);
  std::vector<bool> assigned(static_cast<std::size_t>(n), false);
  for (int q : order) {
    bool found = false;
    for (int k = 0; k < lattice_size && !found; ++k) {
      const double f =
          std::round((fc.band_lo_ghz + k * fc.step_ghz) * 1e9) / 1e9;
      bool ok = true;
      for (int other = 0; other < n && ok; ++other) {
        if (!assigned[static_cast<std::size_t>(other)]) {
          continue;
        }
        const int d = dist[static_cast<std::size_t>(q)][static_cast<std::size_t>(other)];
        const double need = d == 1   ? fc.min_adjacent_detuning_ghz
                            : d == 2 ? fc.min_next_detuning_ghz
                                     : 0.0;
        ok = std::abs(f - freq[static_cast<std::size_t>(other)]) >=
             need - kFrequencyEps;
      }
      if (ok) {
        freq[static_cast<std::size_t>(q)] = f;
        assigned[static_cast<std::size_t>(q)] = true;
        found = true;
      }
    }
    if (!found) {
      std::ostringstream msg;
      msg << "frequency allocation infeasible for qubit " << q << ": no value in ["
          << fc.band_lo_ghz << ", " << fc.band_hi_ghz
          << "] GHz satisfies the detuning constraints";
      throw ArchitectureError(msg.str());
    }
  }
  return freq;
}

Architecture generate_architecture(const QuantumCircuit& qc,
                                   const DesignConfig& config,
                                   const QubitPlacer& placer) {
  const auto ig = interaction_graph(qc);
  Architecture arch;
  arch.layout = placer(ig, config);
  arch.layout.validate(qc.num_qubits());
  arch.coupling = derive_couplings(arch.layout, ig, config);
  arch.frequencies = allocate_frequencies(arch.coupling, config);
  return arch;
}

Architecture chain_architecture(int n, const DesignConfig& config) {
  Architecture arch;
  arch.layout = LayoutMatrix(1, std::max(n, 1));
  arch.coupling = CouplingGraph(n);
  for (int q = 0; q < n; ++q) {
    arch.layout.set(0, q, q);
    if (q + 1 < n) {
      arch.coupling.add_edge(q, q + 1);
    }
  }
  arch.frequencies = allocate_frequencies(arch.coupling, config);
  return arch;
}

} // namespace dasqa
