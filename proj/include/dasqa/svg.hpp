#pragma once

#include "dasqa/layout.hpp"

#include <string>

namespace dasqa {

/// SVG 1.1 drawing of the layout, 1 user unit = 10 um, y pointing down.
/// Shapes carry their role as the class attribute.
std::string render_svg(const LayoutDocument& layout);

} // namespace dasqa
