#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "resest/common/linalg.hpp"

namespace resest {

using Json = nlohmann::json;

/// Serializes `value` with every floating-point number printed at 17
/// significant digits, which round-trips IEEE doubles exactly. Object keys
/// come out sorted, so equal documents give identical bytes.
std::string dump_json(const Json& value, int indent = 2);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& rows);

/// Parses text, mapping parse errors to InvalidInput.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace resest
