#include "dasqa/layout.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace dasqa {

namespace {

// Build constants not exposed through the config.
constexpr double kPadWidthUm = 455.0;
constexpr double kPadHeightUm = 90.0;
constexpr double kPadGapUm = 30.0;
constexpr double kCapWidthUm = 120.0;
constexpr double kCapGapUm = 20.0;
constexpr double kPlateThicknessUm = 20.0;
constexpr double kControlLengthUm = 400.0;
constexpr double kTraceWidthUm = 10.0;
constexpr double kReadoutLeadUm = 100.0;
constexpr double kStubSpacingUm = 600.0;
constexpr double kContainmentSlackUm = 1e-6;

double opt_um(const Component& c, const char* key) {
  return c.options.at(key).micrometers();
}

double opt_ghz(const Component& c, const char* key) {
  return c.options.at(key).gigahertz();
}

Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }

Point midpoint(Point a, Point b) { return {(a.x + b.x) / 2, (a.y + b.y) / 2}; }

} // namespace

std::string_view to_string(ComponentKind kind) {
  switch (kind) {
  case ComponentKind::Transmon: return "transmon";
  case ComponentKind::CouplingResonator: return "coupling_resonator";
  case ComponentKind::ReadoutResonator: return "readout_resonator";
  case ComponentKind::Capacitor: return "capacitor";
  case ComponentKind::ControlLine: return "control_line";
  case ComponentKind::Connection: return "connection";
  }
  return "?";
}

bool Rect::overlaps(const Rect& o) const {
  return x < o.x + o.width && o.x < x + width && y < o.y + o.height &&
         o.y < y + height;
}

double polyline_length(const std::vector<Point>& points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    total += std::hypot(points[i].x - points[i - 1].x,
                        points[i].y - points[i - 1].y);
  }
  return total;
}

double Polyline::length() const { return polyline_length(points); }

const std::map<std::string, OptionSpec>& option_specs(ComponentKind kind) {
  using D = Dimension;
  static const std::map<std::string, OptionSpec> transmon = {
      {"pad_width", {D::Length, 10.0, 1500.0}},
      {"pad_height", {D::Length, 5.0, 1000.0}},
      {"pad_gap", {D::Length, 1.0, 500.0}},
  };
  static const std::map<std::string, OptionSpec> resonator = {
      {"frequency", {D::Frequency, 1.0, 20.0}},
      {"meander_amplitude", {D::Length, 10.0, 1000.0}},
      {"total_length", {D::Length, 0.0, 1e9, true}},
  };
  static const std::map<std::string, OptionSpec> capacitor = {
      {"cap_width", {D::Length, 5.0, 1000.0}},
      {"cap_gap", {D::Length, 1.0, 500.0}},
  };
  static const std::map<std::string, OptionSpec> control = {
      {"line_length", {D::Length, 10.0, 2000.0}},
      {"line_width", {D::Length, 1.0, 100.0}},
  };
  static const std::map<std::string, OptionSpec> connection = {
      {"trace_width", {D::Length, 1.0, 100.0}},
  };
  switch (kind) {
  case ComponentKind::Transmon: return transmon;
  case ComponentKind::CouplingResonator:
  case ComponentKind::ReadoutResonator: return resonator;
  case ComponentKind::Capacitor: return capacitor;
  case ComponentKind::ControlLine: return control;
  case ComponentKind::Connection: return connection;
  }
  return connection;
}

double resonator_length(double frequency_ghz, double epsilon_eff,
                        ResonatorMode mode) {
  if (!(frequency_ghz > 0.0) || !(epsilon_eff >= 1.0)) {
    throw LayoutError(LayoutError::Code::InvalidInput,
                      "resonator sizing needs f > 0 and epsilon_eff >= 1");
  }
  const double wavelength_m =
      kSpeedOfLight / (frequency_ghz * 1e9 * std::sqrt(epsilon_eff));
  const double wavelength_mm = wavelength_m * 1e3;
  return mode == ResonatorMode::Half ? wavelength_mm / 2.0 : wavelength_mm / 4.0;
}

std::vector<Point> synthesize_meander(Point start, Point end,
                                      double target_length, double amplitude) {
  const double d = std::hypot(end.x - start.x, end.y - start.y);
  if (!(amplitude > 0.0)) {
    throw LayoutError(LayoutError::Code::InvalidInput,
                      "meander amplitude must be positive");
  }
  if (d == 0.0) {
    throw LayoutError(LayoutError::Code::InvalidInput,
                      "meander endpoints coincide");
  }
  const double extra = target_length - d;
  if (extra < -1e-12 * d) {
    throw LayoutError(LayoutError::Code::InvalidInput,
                      "target length shorter than the endpoint distance");
  }
  if (extra <= 0.0) {
    return {start, end};
  }

  const Point u = (1.0 / d) * (end - start);
  const Point v{-u.y, u.x};
  auto at = [&](double along, double across) {
    return start + along * u + across * v;
  };

  const auto lobes =
      static_cast<int>(std::max(1.0, std::ceil(extra / (2.0 * amplitude) - 1e-9)));
  const double pitch = d / (lobes + 1);
  const double half_width = pitch / 4.0;
  const double last_height = (extra - 2.0 * amplitude * (lobes - 1)) / 2.0;

  std::vector<Point> points{start};
  for (int k = 1; k <= lobes; ++k) {
    const double centre = k * pitch;
    const double height = (k == lobes ? last_height : amplitude) *
                          (k % 2 == 1 ? 1.0 : -1.0);
    points.push_back(at(centre - half_width, 0.0));
    points.push_back(at(centre - half_width, height));
    points.push_back(at(centre + half_width, height));
    points.push_back(at(centre + half_width, 0.0));
  }
  points.push_back(end);
  return points;
}

// --- LayoutDocument -----------------------------------------------------------

const Component* LayoutDocument::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &components_[it->second];
}

Component& LayoutDocument::mutable_find(std::string_view name) {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    throw LayoutError(LayoutError::Code::UnknownComponent,
                      "unknown component '" + std::string(name) + "'");
  }
  return components_[it->second];
}

std::size_t LayoutDocument::count(ComponentKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(components_.begin(), components_.end(),
                    [kind](const Component& c) { return c.kind == kind; }));
}

void LayoutDocument::add_component(Component c) {
  if (index_.contains(c.name)) {
    throw LayoutError(LayoutError::Code::InvariantViolation,
                      "duplicate component name '" + c.name + "'");
  }
  index_[c.name] = components_.size();
  components_.push_back(std::move(c));
}

void LayoutDocument::add_net(Net n) { nets_.push_back(std::move(n)); }

namespace {

// Where a connection attaches to a component.
Point port_of(const Component& c) {
  switch (c.kind) {
  case ComponentKind::Transmon:
    return {c.position.x + opt_um(c, "pad_width") / 2.0,
            c.position.y + opt_um(c, "pad_gap") / 2.0 +
                opt_um(c, "pad_height") / 2.0};
  case ComponentKind::ReadoutResonator:
    return c.anchors.front();
  case ComponentKind::ControlLine: {
    const Point dir = c.anchors[1] - c.anchors[0];
    return c.anchors[0] + opt_um(c, "line_length") * dir;
  }
  default:
    return c.position;
  }
}

void synthesize_shapes(Component& c, const LayoutDocument& doc,
                       double epsilon_eff, ResonatorMode coupling_mode) {
  c.shapes = {};
  switch (c.kind) {
  case ComponentKind::Transmon: {
    const double w = opt_um(c, "pad_width");
    const double h = opt_um(c, "pad_height");
    const double g = opt_um(c, "pad_gap");
    const Point p = c.position;
    c.shapes.rects.push_back({p.x - w / 2, p.y + g / 2, w, h, "pad"});
    c.shapes.rects.push_back({p.x - w / 2, p.y - g / 2 - h, w, h, "pad"});
    c.shapes.polylines.push_back(
        {{{p.x, p.y - g / 2}, {p.x, p.y + g / 2}}, "junction"});
    break;
  }
  case ComponentKind::CouplingResonator:
  case ComponentKind::ReadoutResonator: {
    const bool coupling = c.kind == ComponentKind::CouplingResonator;
    const double length_mm =
        resonator_length(opt_ghz(c, "frequency"), epsilon_eff,
                         coupling ? coupling_mode : ResonatorMode::Quarter);
    c.options["total_length"] = Quantity::mm(length_mm);
    c.shapes.polylines.push_back(
        {synthesize_meander(c.anchors[0], c.anchors[1], length_mm * 1000.0,
                            opt_um(c, "meander_amplitude")),
         coupling ? "meander" : "readout"});
    break;
  }
  case ComponentKind::Capacitor: {
    const double w = opt_um(c, "cap_width");
    const double g = opt_um(c, "cap_gap");
    const Point p = c.position;
    c.shapes.rects.push_back({p.x - w / 2, p.y + g / 2, w, kPlateThicknessUm, "plate"});
    c.shapes.rects.push_back(
        {p.x - w / 2, p.y - g / 2 - kPlateThicknessUm, w, kPlateThicknessUm, "plate"});
    break;
  }
  case ComponentKind::ControlLine:
    c.shapes.polylines.push_back({{c.anchors[0], port_of(c)}, "control"});
    break;
  case ComponentKind::Connection: {
    const Point a = port_of(*doc.find(c.terminals.at(0)));
    const Point b = port_of(*doc.find(c.terminals.at(1)));
    c.shapes.polylines.push_back({{a, b}, "connection"});
    c.position = midpoint(c.shapes.polylines.front().points.front(),
                          c.shapes.polylines.front().points.back());
    break;
  }
  }
}

} // namespace

void LayoutDocument::regenerate() {
  for (auto& c : components_) {
    if (c.kind != ComponentKind::Connection) {
      synthesize_shapes(c, *this, epsilon_eff, coupling_mode);
    }
  }
  for (auto& c : components_) {
    if (c.kind == ComponentKind::Connection) {
      synthesize_shapes(c, *this, epsilon_eff, coupling_mode);
    }
  }
}

void LayoutDocument::update_component(std::string_view name,
                                      std::string_view option,
                                      std::string_view value) {
  const Component& current = mutable_find(name);
  const auto& specs = option_specs(current.kind);
  const auto spec = specs.find(std::string(option));
  if (spec == specs.end()) {
    throw LayoutError(LayoutError::Code::UnknownOption,
                      "unknown option '" + std::string(option) + "' for " +
                          std::string(to_string(current.kind)) + " '" +
                          std::string(name) + "'");
  }
  if (spec->second.read_only) {
    throw LayoutError(LayoutError::Code::ReadOnlyOption,
                      "option '" + std::string(option) + "' of '" +
                          std::string(name) + "' is derived");
  }
  Quantity q;
  double canonical = 0.0;
  try {
    q = parse_quantity(value);
    canonical = spec->second.dimension == Dimension::Length ? q.micrometers()
                                                            : q.gigahertz();
  } catch (const UnitError& e) {
    throw LayoutError(LayoutError::Code::MalformedValue,
                      "option '" + std::string(option) + "': " + e.what());
  }
  if (canonical < spec->second.min || canonical > spec->second.max) {
    throw LayoutError(LayoutError::Code::OutOfRange,
                      "option '" + std::string(option) + "' value " + q.str() +
                          " outside the allowed range");
  }

  LayoutDocument next = *this;
  next.mutable_find(name).options[std::string(option)] = q;
  try {
    next.regenerate();
  } catch (const LayoutError& e) {
    throw LayoutError(LayoutError::Code::InvariantViolation, e.what());
  }
  next.check_invariants();
  *this = std::move(next);
}

void LayoutDocument::check_invariants() const {
  auto fail = [](const std::string& msg) {
    throw LayoutError(LayoutError::Code::InvariantViolation, msg);
  };
  std::set<std::string> names;
  for (const auto& c : components_) {
    if (!names.insert(c.name).second) {
      fail("duplicate component name '" + c.name + "'");
    }
    for (const auto& [key, q] : c.options) {
      if (!(q.value > 0.0) || !std::isfinite(q.value)) {
        fail("option '" + key + "' of '" + c.name + "' is not positive");
      }
    }
  }
  for (const auto& n : nets_) {
    if (!names.contains(n.from) || !names.contains(n.to)) {
      fail("net " + n.from + " -> " + n.to + " references a missing component");
    }
  }

  const double hx = chip_width_um / 2 + kContainmentSlackUm;
  const double hy = chip_height_um / 2 + kContainmentSlackUm;
  auto inside = [&](Point p) {
    return p.x >= -hx && p.x <= hx && p.y >= -hy && p.y <= hy;
  };
  std::vector<std::pair<const Component*, const Rect*>> pads;
  for (const auto& c : components_) {
    for (const auto& r : c.shapes.rects) {
      if (!inside({r.x, r.y}) || !inside({r.x + r.width, r.y + r.height})) {
        fail("component '" + c.name + "' extends beyond the chip bounds");
      }
      if (r.role == "pad") {
        pads.emplace_back(&c, &r);
      }
    }
    for (const auto& pl : c.shapes.polylines) {
      if (!std::all_of(pl.points.begin(), pl.points.end(), inside)) {
        fail("component '" + c.name + "' extends beyond the chip bounds");
      }
    }
  }
  for (std::size_t i = 0; i < pads.size(); ++i) {
    for (std::size_t j = i + 1; j < pads.size(); ++j) {
      if (pads[i].second->overlaps(*pads[j].second)) {
        fail("pads of '" + pads[i].first->name + "' and '" +
             pads[j].first->name + "' overlap");
      }
    }
  }
}

// --- build --------------------------------------------------------------------

namespace {

// Chooses the chip edge nearest to `p` and a free slot on it for a control
// line. Returns {edge point, inward unit normal}.
class EdgeSlots {
public:
  EdgeSlots(double half_w, double half_h) : half_w_(half_w), half_h_(half_h) {}

  std::pair<Point, Point> claim(Point p) {
    const std::array<double, 4> dist = {half_h_ - p.y, p.y + half_h_,
                                        p.x + half_w_, half_w_ - p.x};
    const auto edge = static_cast<std::size_t>(
        std::min_element(dist.begin(), dist.end()) - dist.begin());
    const bool horizontal = edge < 2;
    const double limit = (horizontal ? half_w_ : half_h_) - kStubSpacingUm / 2;
    const double start = horizontal ? p.x : p.y;
    auto& used = used_[edge];
    auto free = [&](double s) {
      return std::none_of(used.begin(), used.end(), [&](double u) {
        return std::abs(u - s) < kStubSpacingUm * 2 / 3;
      });
    };
    double s = start;
    for (int k = 1; k < 200 && !(free(s) && std::abs(s) <= limit); ++k) {
      // alternate outward: +1, -1, +2, -2, ...
      const double step = ((k + 1) / 2) * kStubSpacingUm;
      s = start + (k % 2 == 1 ? step : -step);
    }
    used.push_back(s);
    switch (edge) {
    case 0: return {{s, half_h_}, {0, -1}};
    case 1: return {{s, -half_h_}, {0, 1}};
    case 2: return {{-half_w_, s}, {1, 0}};
    default: return {{half_w_, s}, {-1, 0}};
    }
  }

private:
  double half_w_;
  double half_h_;
  std::array<std::vector<double>, 4> used_;
};

Component connection(const std::string& from, const std::string& to) {
  Component w;
  w.name = "W_" + from + "_" + to;
  w.kind = ComponentKind::Connection;
  w.options["trace_width"] = Quantity::um(kTraceWidthUm);
  w.terminals = {from, to};
  return w;
}

} // namespace

LayoutDocument build_layout(const Architecture& arch, const DesignConfig& config) {
  const auto& lc = config.layout;
  const int n = arch.num_qubits();
  const int rows = std::max(arch.layout.rows(), 1);
  const int cols = std::max(arch.layout.cols(), 1);
  arch.layout.validate(n);
  if (static_cast<int>(arch.frequencies.size()) != n) {
    throw LayoutError(LayoutError::Code::InvalidInput,
                      "architecture frequency vector does not match qubit count");
  }

  LayoutDocument doc;
  doc.epsilon_eff = lc.epsilon_eff;
  doc.coupling_mode = lc.resonator_mode;
  doc.chip_width_um = (cols - 1) * lc.pitch_um + 2 * lc.margin_um;
  doc.chip_height_um = (rows - 1) * lc.pitch_um + 2 * lc.margin_um;

  std::vector<Point> pos(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    const auto cell = *arch.layout.find(q);
    pos[static_cast<std::size_t>(q)] = {(cell.col - (cols - 1) / 2.0) * lc.pitch_um,
                                        ((rows - 1) / 2.0 - cell.row) * lc.pitch_um};
  }

  for (int q = 0; q < n; ++q) {
    Component t;
    t.name = transmon_name(q);
    t.kind = ComponentKind::Transmon;
    t.position = pos[static_cast<std::size_t>(q)];
    t.options = {{"pad_width", Quantity::um(kPadWidthUm)},
                 {"pad_height", Quantity::um(kPadHeightUm)},
                 {"pad_gap", Quantity::um(kPadGapUm)}};
    doc.add_component(std::move(t));
  }

  const double clearance = 0.25 * lc.pitch_um;
  std::size_t edge_index = 0;
  for (const auto& [a, b] : arch.coupling.edges()) {
    const Point pa = pos[static_cast<std::size_t>(a)];
    const Point pb = pos[static_cast<std::size_t>(b)];
    const double d = std::hypot(pb.x - pa.x, pb.y - pa.y);
    const Point u = (1.0 / d) * (pb - pa);
    Component cr;
    cr.name = "CR_" + std::to_string(a) + "_" + std::to_string(b);
    cr.kind = ComponentKind::CouplingResonator;
    cr.anchors = {pa + clearance * u, pb - clearance * u};
    cr.position = midpoint(cr.anchors[0], cr.anchors[1]);
    cr.terminals = {transmon_name(a), transmon_name(b)};
    cr.options = {
        {"frequency",
         Quantity::ghz(lc.coupling_freq_lattice_ghz[edge_index %
                                                    lc.coupling_freq_lattice_ghz.size()])},
        {"meander_amplitude", Quantity::um(lc.meander_amplitude_um)}};
    doc.add_net({transmon_name(a), cr.name, "coupling"});
    doc.add_net({cr.name, transmon_name(b), "coupling"});
    doc.add_component(std::move(cr));
    ++edge_index;
  }

  const double cap_offset = 0.25 * lc.pitch_um;
  for (int q = 0; q < n; ++q) {
    Component cap;
    cap.name = "CAP_" + std::to_string(q);
    cap.kind = ComponentKind::Capacitor;
    cap.position = pos[static_cast<std::size_t>(q)] + Point{cap_offset, cap_offset};
    cap.options = {{"cap_width", Quantity::um(kCapWidthUm)},
                   {"cap_gap", Quantity::um(kCapGapUm)}};
    doc.add_component(std::move(cap));
  }
  for (int q = 0; q < n; ++q) {
    const Point cap = pos[static_cast<std::size_t>(q)] + Point{cap_offset, cap_offset};
    Component rd;
    rd.name = "RD_" + std::to_string(q);
    rd.kind = ComponentKind::ReadoutResonator;
    rd.anchors = {cap + Point{kReadoutLeadUm, 0},
                  cap + Point{kReadoutLeadUm + 0.5 * lc.pitch_um, 0}};
    rd.position = midpoint(rd.anchors[0], rd.anchors[1]);
    rd.terminals = {"CAP_" + std::to_string(q)};
    rd.options = {
        {"frequency",
         Quantity::ghz(arch.frequencies[static_cast<std::size_t>(q)] +
                       lc.readout_detuning_ghz)},
        {"meander_amplitude", Quantity::um(lc.readout_meander_amplitude_um)}};
    doc.add_component(std::move(rd));
  }
  EdgeSlots slots(doc.chip_width_um / 2, doc.chip_height_um / 2);
  for (int q = 0; q < n; ++q) {
    const auto [edge, normal] = slots.claim(pos[static_cast<std::size_t>(q)]);
    Component ctl;
    ctl.name = "CTL_" + std::to_string(q);
    ctl.kind = ComponentKind::ControlLine;
    ctl.position = edge;
    ctl.anchors = {edge, edge + normal};
    ctl.options = {{"line_length", Quantity::um(kControlLengthUm)},
                   {"line_width", Quantity::um(kTraceWidthUm)}};
    doc.add_component(std::move(ctl));
  }
  for (int q = 0; q < n; ++q) {
    const auto qn = transmon_name(q);
    const auto cap = "CAP_" + std::to_string(q);
    const auto rd = "RD_" + std::to_string(q);
    const auto ctl = "CTL_" + std::to_string(q);
    doc.add_component(connection(qn, cap));
    doc.add_component(connection(cap, rd));
    doc.add_component(connection(cap, ctl));
    doc.add_net({qn, cap, "qubit_capacitor"});
    doc.add_net({cap, rd, "capacitor_readout"});
    doc.add_net({cap, ctl, "capacitor_control"});
  }

  try {
    doc.regenerate();
  } catch (const LayoutError& e) {
    throw LayoutError(LayoutError::Code::InvalidInput,
                      std::string("cannot synthesize layout: ") + e.what());
  }
  try {
    doc.check_invariants();
  } catch (const LayoutError& e) {
    throw LayoutError(LayoutError::Code::InvalidInput,
                      std::string("chip bounds too small for the grid: ") + e.what());
  }
  return doc;
}

} // namespace dasqa
