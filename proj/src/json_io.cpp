#include "dasqa/json_io.hpp"

#include "dasqa/units.hpp"

namespace dasqa {

using nlohmann::json;

json json_number(double value) { return round_sig9(value); }

namespace {

json length_um(double value) {
  return json{{"value", json_number(value)}, {"unit", "um"}};
}

json quantity_json(const Quantity& q) {
  return json{{"value", json_number(q.value)}, {"unit", q.unit}};
}

json point_json(const Point& p) {
  return json::array({json_number(p.x), json_number(p.y)});
}

json points_json(const std::vector<Point>& points) {
  json out = json::array();
  for (const auto& p : points) {
    out.push_back(point_json(p));
  }
  return out;
}

} // namespace

json architecture_to_json(const Architecture& arch) {
  json edges = json::array();
  for (const auto& [a, b] : arch.coupling.edges()) {
    edges.push_back({a, b});
  }
  json freqs = json::array();
  for (double f : arch.frequencies) {
    freqs.push_back(json_number(f));
  }
  return json{
      {"num_qubits", arch.num_qubits()},
      {"layout_matrix", arch.layout.to_rows()},
      {"edges", edges},
      {"frequencies", json{{"unit", "GHz"}, {"values", freqs}}},
  };
}

json layout_to_json(const LayoutDocument& layout) {
  json components = json::array();
  for (const auto& c : layout.components()) {
    json options = json::object();
    for (const auto& [key, q] : c.options) {
      options[key] = quantity_json(q);
    }
    json rects = json::array();
    for (const auto& r : c.shapes.rects) {
      rects.push_back(json{{"role", r.role},
                           {"x", json_number(r.x)},
                           {"y", json_number(r.y)},
                           {"width", json_number(r.width)},
                           {"height", json_number(r.height)},
                           {"unit", "um"}});
    }
    json polylines = json::array();
    for (const auto& p : c.shapes.polylines) {
      polylines.push_back(json{{"role", p.role},
                               {"points", points_json(p.points)},
                               {"length", length_um(p.length())},
                               {"unit", "um"}});
    }
    components.push_back(json{
        {"name", c.name},
        {"kind", std::string(to_string(c.kind))},
        {"position", json{{"x", json_number(c.position.x)},
                          {"y", json_number(c.position.y)},
                          {"unit", "um"}}},
        {"options", options},
        {"anchors", json{{"points", points_json(c.anchors)}, {"unit", "um"}}},
        {"terminals", c.terminals},
        {"shapes", json{{"rects", rects}, {"polylines", polylines}}},
    });
  }
  json nets = json::array();
  for (const auto& n : layout.nets()) {
    nets.push_back(json{{"from", n.from}, {"to", n.to}, {"kind", n.kind}});
  }
  return json{
      {"chip", json{{"width", length_um(layout.chip_width_um)},
                    {"height", length_um(layout.chip_height_um)},
                    {"epsilon_eff", json_number(layout.epsilon_eff)},
                    {"coupling_resonator_mode",
                     std::string(to_string(layout.coupling_mode))}}},
      {"components", components},
      {"nets", nets},
  };
}

CouplingGraph parse_coupling_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ArchitectureError(std::string("coupling JSON: ") + e.what());
  }
  try {
    const int n = doc.at("num_qubits").get<int>();
    if (n <= 0) {
      throw ArchitectureError("coupling JSON: num_qubits must be positive");
    }
    CouplingGraph graph(n);
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw ArchitectureError("coupling JSON: each edge must be a pair");
      }
      graph.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    return graph;
  } catch (const json::exception& e) {
    throw ArchitectureError(std::string("coupling JSON: ") + e.what());
  }
}

std::string dump_json(const json& value) { return value.dump(2) + "\n"; }

} // namespace dasqa
