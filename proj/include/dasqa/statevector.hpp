#pragma once

#include "dasqa/circuit.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace dasqa {

/// Dense statevector; basis index bit q holds qubit q.
class StateVector {
public:
  using Amplitude = std::complex<double>;

  explicit StateVector(int num_qubits, std::uint64_t basis_state = 0);

  /// Applies a unitary gate; MEASURE and BARRIER are ignored.
  void apply(const Gate& gate);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] const std::vector<Amplitude>& amplitudes() const { return amps_; }
  [[nodiscard]] Amplitude operator[](std::uint64_t i) const { return amps_[i]; }

private:
  void apply_single(int q, const Amplitude (&m)[2][2]);

  int num_qubits_;
  std::vector<Amplitude> amps_;
};

} // namespace dasqa
