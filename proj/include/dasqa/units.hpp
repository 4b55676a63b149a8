#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dasqa {

enum class Dimension { Length, Frequency };

/// A magnitude with its unit as written ("10um", "8.432mm", "7GHz").
struct Quantity {
  double value = 0.0;
  std::string unit;

  [[nodiscard]] Dimension dimension() const;
  /// Length in micrometres; throws UnitError for non-length units.
  [[nodiscard]] double micrometers() const;
  /// Frequency in GHz; throws UnitError for non-frequency units.
  [[nodiscard]] double gigahertz() const;
  /// Value rendered with 9 significant digits followed by the unit.
  [[nodiscard]] std::string str() const;

  bool operator==(const Quantity&) const = default;

  static Quantity um(double v) { return {v, "um"}; }
  static Quantity mm(double v) { return {v, "mm"}; }
  static Quantity ghz(double v) { return {v, "GHz"}; }
};

class UnitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses "<number><unit>" with unit in {um, mm, GHz, MHz}; optional space
/// between. Non-positive or non-finite magnitudes are rejected.
Quantity parse_quantity(std::string_view text);

/// Rounds to 9 significant digits, the precision of all emitted numbers.
double round_sig9(double value);

} // namespace dasqa
