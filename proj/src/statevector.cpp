#include "dasqa/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace dasqa {

StateVector::StateVector(int num_qubits, std::uint64_t basis_state)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {
  if (num_qubits < 0 || num_qubits > 24) {
    throw std::invalid_argument("statevector size out of range");
  }
  amps_.at(basis_state) = 1.0;
}

void StateVector::apply_single(int q, const Amplitude (&m)[2][2]) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) {
      continue;
    }
    const Amplitude a0 = amps_[i];
    const Amplitude a1 = amps_[i | bit];
    amps_[i] = m[0][0] * a0 + m[0][1] * a1;
    amps_[i | bit] = m[1][0] * a0 + m[1][1] * a1;
  }
}

void StateVector::apply(const Gate& gate) {
  using namespace std::complex_literals;
  constexpr double r = std::numbers::sqrt2 / 2;
  const auto& qs = gate.qubits;
  switch (gate.kind) {
  case GateKind::X: {
    const Amplitude m[2][2] = {{0, 1}, {1, 0}};
    apply_single(qs[0], m);
    break;
  }
  case GateKind::Y: {
    const Amplitude m[2][2] = {{0, -1i}, {1i, 0}};
    apply_single(qs[0], m);
    break;
  }
  case GateKind::Z: {
    const Amplitude m[2][2] = {{1, 0}, {0, -1}};
    apply_single(qs[0], m);
    break;
  }
  case GateKind::H: {
    const Amplitude m[2][2] = {{r, r}, {r, -r}};
    apply_single(qs[0], m);
    break;
  }
  case GateKind::S: {
    const Amplitude m[2][2] = {{1, 0}, {0, 1i}};
    apply_single(qs[0], m);
    break;
  }
  case GateKind::T: {
    const Amplitude m[2][2] = {{1, 0}, {0, std::polar(1.0, std::numbers::pi / 4)}};
    apply_single(qs[0], m);
    break;
  }
  case GateKind::RZ: {
    const Amplitude m[2][2] = {{std::polar(1.0, -gate.angle / 2), 0},
                               {0, std::polar(1.0, gate.angle / 2)}};
    apply_single(qs[0], m);
    break;
  }
  case GateKind::CX: {
    const std::uint64_t c = std::uint64_t{1} << qs[0];
    const std::uint64_t t = std::uint64_t{1} << qs[1];
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if ((i & c) && !(i & t)) {
        std::swap(amps_[i], amps_[i | t]);
      }
    }
    break;
  }
  case GateKind::CZ: {
    const std::uint64_t mask =
        (std::uint64_t{1} << qs[0]) | (std::uint64_t{1} << qs[1]);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if ((i & mask) == mask) {
        amps_[i] = -amps_[i];
      }
    }
    break;
  }
  case GateKind::SWAP: {
    const std::uint64_t a = std::uint64_t{1} << qs[0];
    const std::uint64_t b = std::uint64_t{1} << qs[1];
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if ((i & a) && !(i & b)) {
        std::swap(amps_[i], amps_[(i & ~a) | b]);
      }
    }
    break;
  }
  case GateKind::MEASURE:
  case GateKind::BARRIER:
    break;
  }
}

} // namespace dasqa
