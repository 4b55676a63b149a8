#pragma once

#include "dasqa/architecture.hpp"
#include "dasqa/layout.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace dasqa {

/// Sorted keys, floats rounded to 9 significant digits.
nlohmann::json architecture_to_json(const Architecture& arch);
nlohmann::json layout_to_json(const LayoutDocument& layout);

/// `{"num_qubits": n, "edges": [[a, b], ...]}`.
CouplingGraph parse_coupling_json(std::string_view text);

/// Two-space indented text with a trailing newline.
std::string dump_json(const nlohmann::json& value);

/// Number rounded to 9 significant digits.
nlohmann::json json_number(double value);

} // namespace dasqa
