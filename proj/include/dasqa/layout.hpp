#pragma once

#include "dasqa/architecture.hpp"
#include "dasqa/config.hpp"
#include "dasqa/units.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dasqa {

/// Speed of light used for resonator sizing, m/s.
inline constexpr double kSpeedOfLight = 2.998e8;

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

/// Axis-aligned rectangle, (x, y) is the lower-left corner. Micrometres,
/// y pointing up.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
  std::string role;

  [[nodiscard]] bool overlaps(const Rect& o) const;
  bool operator==(const Rect&) const = default;
};

struct Polyline {
  std::vector<Point> points;
  std::string role;

  [[nodiscard]] double length() const;
  bool operator==(const Polyline&) const = default;
};

struct Shapes {
  std::vector<Rect> rects;
  std::vector<Polyline> polylines;
  bool operator==(const Shapes&) const = default;
};

enum class ComponentKind {
  Transmon,
  CouplingResonator,
  ReadoutResonator,
  Capacitor,
  ControlLine,
  Connection,
};

std::string_view to_string(ComponentKind kind);

struct Component {
  std::string name;
  ComponentKind kind = ComponentKind::Transmon;
  Point position;
  std::map<std::string, Quantity> options;
  // Fixed routing anchors for path-like components (resonator ends, control
  // line edge point and inner end).
  std::vector<Point> anchors;
  // Components this one attaches to (resonator and connection ends).
  std::vector<std::string> terminals;
  Shapes shapes;

  bool operator==(const Component&) const = default;
};

struct Net {
  std::string from;
  std::string to;
  std::string kind;  // coupling | qubit_capacitor | capacitor_readout | capacitor_control
  bool operator==(const Net&) const = default;
};

class LayoutError : public std::runtime_error {
public:
  enum class Code {
    UnknownComponent,
    UnknownOption,
    ReadOnlyOption,
    MalformedValue,
    OutOfRange,
    InvariantViolation,
    InvalidInput,
  };

  LayoutError(Code code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  [[nodiscard]] Code code() const { return code_; }

private:
  Code code_;
};

/// Placed chip components. Chip spans [-width/2, width/2] x [-height/2,
/// height/2] micrometres.
class LayoutDocument {
public:
  double chip_width_um = 0.0;
  double chip_height_um = 0.0;
  // Resonator sizing parameters shared by all resonators on the chip.
  double epsilon_eff = 6.45;
  ResonatorMode coupling_mode = ResonatorMode::Half;

  [[nodiscard]] const std::vector<Component>& components() const {
    return components_;
  }
  [[nodiscard]] const std::vector<Net>& nets() const { return nets_; }
  [[nodiscard]] const Component* find(std::string_view name) const;
  [[nodiscard]] std::size_t count(ComponentKind kind) const;

  void add_component(Component c);
  void add_net(Net n);

  /// Replaces one geometry option, re-synthesizes all dependent shapes and
  /// re-checks the invariants. The document is unchanged when this throws.
  void update_component(std::string_view name, std::string_view option,
                        std::string_view value);

  /// Recomputes every component's shapes from its options and anchors.
  void regenerate();

  /// Throws LayoutError(InvariantViolation) on the first broken invariant.
  void check_invariants() const;

  bool operator==(const LayoutDocument& o) const {
    return chip_width_um == o.chip_width_um &&
           chip_height_um == o.chip_height_um &&
           components_ == o.components_ && nets_ == o.nets_;
  }

private:
  Component& mutable_find(std::string_view name);

  std::vector<Component> components_;
  std::vector<Net> nets_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Allowed range and dimension of a geometry option.
struct OptionSpec {
  Dimension dimension;
  double min;  // um or GHz
  double max;
  bool read_only = false;
};

/// Known options for a component kind.
const std::map<std::string, OptionSpec>& option_specs(ComponentKind kind);

/// Half- or quarter-wavelength of a CPW mode at `frequency_ghz`, in mm.
double resonator_length(double frequency_ghz, double epsilon_eff,
                        ResonatorMode mode);

/// Serpentine from start to end, axis-aligned in the frame of the start-end
/// direction, whose length equals target_length. Lengths share the unit of
/// the points.
std::vector<Point> synthesize_meander(Point start, Point end,
                                      double target_length, double amplitude);

double polyline_length(const std::vector<Point>& points);

/// Initial physical layout of an architecture: transmons on the grid,
/// coupling resonators per edge, and a readout resonator, capacitor and
/// control line per qubit, connected by nets.
LayoutDocument build_layout(const Architecture& arch, const DesignConfig& config);

inline std::string transmon_name(int q) { return "Q_" + std::to_string(q); }

} // namespace dasqa
