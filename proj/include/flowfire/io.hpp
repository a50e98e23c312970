// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flowfire/explore.hpp"
#include "flowfire/firing.hpp"
#include "flowfire/grid.hpp"
#include "flowfire/pathfire.hpp"
#include "flowfire/strategies.hpp"

namespace flowfire {

using Json = nlohmann::ordered_json;

// {"n": int, "faces": [[x, y, w], ...]}, faces sorted, no zeros, no (0,0).
Json to_json(const MarkedConfig& c);
// Throws parse errors on malformed input, duplicates, zeros or negatives.
MarkedConfig config_from_json(const Json& j);

Json to_json(const FireMove& m);  // {"from": [x, y], "to": [x, y]}
FireMove move_from_json(const Json& j);
Json to_json(const std::vector<FireMove>& trace);
std::vector<FireMove> trace_from_json(const Json& j);

Json to_json(const PathWeights& w);
Json to_json(const RegimeReport& r);
Json to_json(const std::vector<TableRow>& rows);
Json to_json(const ExploreResult& r);

// Parses text, mapping syntax errors to ErrorCode::parse.
Json parse_json_text(const std::string& text);

enum class RenderStyle : std::uint8_t { ascii, svg, json };
RenderStyle render_style_from_string(const std::string& s);

// Rows top to bottom, blank cells for zero, marked face in brackets.
std::string render_ascii(const MarkedConfig& c);
std::string render_svg(const MarkedConfig& c);
std::string render(const MarkedConfig& c, RenderStyle style);

}  // namespace flowfire
