#pragma once

#include "olab/linalg.hpp"
#include "olab/origami.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace olab {

using json = nlohmann::json;

/// Text format:
///
///     # name
///     n = 6
///     h = (1)(2,3)(4,5,6)
///     v = (1,4,2)(3,5)(6)
///
/// The name and "n =" lines are optional; cycle lists may continue on
/// following lines.
Origami parse_origami(std::string_view text);
Origami read_origami(const std::filesystem::path& path);
std::string format_origami(const Origami& o);

json to_json(const Origami& o);
Origami origami_from_json(const json& j);

json to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const json& j);
json to_json(const Rational& q); // {num, den}

std::string read_file(const std::filesystem::path& path);

} // namespace olab
