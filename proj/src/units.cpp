#include "dasqa/units.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace dasqa {

Dimension Quantity::dimension() const {
  if (unit == "um" || unit == "mm") {
    return Dimension::Length;
  }
  if (unit == "GHz" || unit == "MHz") {
    return Dimension::Frequency;
  }
  throw UnitError("unknown unit '" + unit + "'");
}

double Quantity::micrometers() const {
  if (unit == "um") {
    return value;
  }
  if (unit == "mm") {
    return value * 1000.0;
  }
  throw UnitError("'" + str() + "' is not a length");
}

double Quantity::gigahertz() const {
  if (unit == "GHz") {
    return value;
  }
  if (unit == "MHz") {
    return value / 1000.0;
  }
  throw UnitError("'" + str() + "' is not a frequency");
}

std::string Quantity::str() const {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return std::string(buf) + unit;
}

Quantity parse_quantity(std::string_view text) {
  const auto trimmed_begin = text.find_first_not_of(" \t");
  const auto trimmed_end = text.find_last_not_of(" \t");
  if (trimmed_begin == std::string_view::npos) {
    throw UnitError("empty quantity");
  }
  text = text.substr(trimmed_begin, trimmed_end - trimmed_begin + 1);

  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr == text.data()) {
    throw UnitError("malformed quantity '" + std::string(text) + "'");
  }
  std::string_view rest(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr));
  while (!rest.empty() && rest.front() == ' ') {
    rest.remove_prefix(1);
  }
  Quantity q{value, std::string(rest)};
  if (q.unit != "um" && q.unit != "mm" && q.unit != "GHz" && q.unit != "MHz") {
    throw UnitError("malformed quantity '" + std::string(text) +
                    "': expected a unit in {um, mm, GHz, MHz}");
  }
  if (!std::isfinite(value) || value <= 0.0) {
    throw UnitError("quantity '" + std::string(text) + "' must be positive");
  }
  return q;
}

double round_sig9(double value) {
  if (value == 0.0 || !std::isfinite(value)) {
    return value;
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return std::strtod(buf, nullptr);
}

} // namespace dasqa
