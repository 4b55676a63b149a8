#include "dasqa/svg.hpp"

#include <cstdio>
#include <sstream>

namespace dasqa {

namespace {

constexpr double kUnitUm = 10.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v / kUnitUm);
  return buf;
}

const char* stroke_for(const std::string& role) {
  if (role == "meander") return "#1f77b4";
  if (role == "readout") return "#2ca02c";
  if (role == "control") return "#d62728";
  if (role == "junction") return "#000000";
  return "#7f7f7f";
}

} // namespace

std::string render_svg(const LayoutDocument& layout) {
  const double w = layout.chip_width_um;
  const double h = layout.chip_height_um;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << num(w) << "\" height=\"" << num(h) << "\" viewBox=\"" << num(-w / 2)
      << ' ' << num(-h / 2) << ' ' << num(w) << ' ' << num(h) << "\">\n"
      << "<rect class=\"chip\" x=\"" << num(-w / 2) << "\" y=\"" << num(-h / 2)
      << "\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" fill=\"#f4f1e8\" stroke=\"#333333\"/>\n";

  for (const auto& c : layout.components()) {
    out << "<g id=\"" << c.name << "\">\n";
    for (const auto& r : c.shapes.rects) {
      out << "<rect class=\"" << r.role << "\" x=\"" << num(r.x) << "\" y=\""
          << num(-(r.y + r.height)) << "\" width=\"" << num(r.width)
          << "\" height=\"" << num(r.height) << "\" fill=\""
          << (r.role == "pad" ? "#e8a33d" : "#8c564b") << "\"/>\n";
    }
    for (const auto& p : c.shapes.polylines) {
      out << "<polyline class=\"" << p.role << "\" points=\"";
      for (std::size_t i = 0; i < p.points.size(); ++i) {
        out << (i ? " " : "") << num(p.points[i].x) << ',' << num(-p.points[i].y);
      }
      out << "\" fill=\"none\" stroke=\"" << stroke_for(p.role)
          << "\" stroke-width=\"1\"/>\n";
    }
    if (c.kind == ComponentKind::Transmon || c.kind == ComponentKind::Capacitor) {
      out << "<text x=\"" << num(c.position.x) << "\" y=\"" << num(-c.position.y)
          << "\" font-size=\"8\" text-anchor=\"middle\">" << c.name << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace dasqa
