// SPDX-License-Identifier: Apache-2.0
#include "flowfire/io.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "flowfire/error.hpp"

namespace flowfire {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::parse, what); }

int as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
    const auto v = j.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        parse_fail(std::string(what) + " is out of range");
    }
    return static_cast<int>(v);
}

FaceCoord face_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) parse_fail(std::string(what) + " must be [x, y]");
    return {as_int(j[0], what), as_int(j[1], what)};
}

Json face_json(FaceCoord f) { return Json::array({f.x, f.y}); }

}  // namespace

Json to_json(const MarkedConfig& c) {
    Json faces = Json::array();
    for (const auto& [f, w] : c.faces()) faces.push_back(Json::array({f.x, f.y, w}));
    return Json{{"n", c.marked_weight()}, {"faces", std::move(faces)}};
}

MarkedConfig config_from_json(const Json& j) {
    if (!j.is_object()) parse_fail("configuration must be a JSON object");
    if (!j.contains("n")) parse_fail("configuration needs \"n\"");
    const int n = as_int(j.at("n"), "n");
    if (n < 0) parse_fail("n must be non-negative");
    MarkedConfig::FaceMap faces;
    if (j.contains("faces")) {
        const Json& arr = j.at("faces");
        if (!arr.is_array()) parse_fail("\"faces\" must be an array");
        for (const Json& e : arr) {
            if (!e.is_array() || e.size() != 3) parse_fail("each face must be [x, y, w]");
            const FaceCoord f{as_int(e[0], "x"), as_int(e[1], "y")};
            const int w = as_int(e[2], "w");
            if (f == kMarkedFace) parse_fail("face (0,0) is the marked face; use \"n\"");
            if (w <= 0) parse_fail("face weights must be positive");
            if (!faces.emplace(f, w).second) parse_fail("duplicate face entry");
        }
    }
    return MarkedConfig(n, faces);
}

Json to_json(const FireMove& m) {
    return Json{{"from", face_json(m.from)}, {"to", face_json(m.to)}};
}

FireMove move_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("from") || !j.contains("to")) {
        parse_fail("move must be {\"from\": [x, y], \"to\": [x, y]}");
    }
    return {face_from_json(j.at("from"), "from"), face_from_json(j.at("to"), "to")};
}

Json to_json(const std::vector<FireMove>& trace) {
    Json arr = Json::array();
    for (const FireMove& m : trace) arr.push_back(to_json(m));
    return arr;
}

std::vector<FireMove> trace_from_json(const Json& j) {
    if (!j.is_array()) parse_fail("trace must be an array of moves");
    std::vector<FireMove> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            out.push_back(move_from_json(j[i]));
        } catch (Error& e) {
            e.at_index(i);
            throw;
        }
    }
    return out;
}

Json to_json(const PathWeights& w) { return Json(w); }

Json to_json(const RegimeReport& r) {
    Json j{{"n", r.n},
           {"r", r.r},
           {"regime", to_string(r.regime)},
           {"pulse_weight", r.pulse_weight},
           {"aztec_weight", r.aztec_weight}};
    j["min_r_exceeding"] = r.min_r_exceeding ? Json(*r.min_r_exceeding) : Json(nullptr);
    j["weight_excludes_aztec"] = r.weight_excludes_aztec;
    return j;
}

Json to_json(const std::vector<TableRow>& rows) {
    Json arr = Json::array();
    for (const TableRow& row : rows) {
        Json j{{"n", row.n},
               {"ceil_half", row.ceil_half},
               {"min_r", row.min_r},
               {"ceil_n_over_sqrt3_plus_1", row.threshold}};
        j["reference_min_r"] = row.reference_min_r ? Json(*row.reference_min_r) : Json(nullptr);
        j["matches_reference"] = row.matches_reference();
        arr.push_back(std::move(j));
    }
    return arr;
}

Json to_json(const ExploreResult& r) {
    Json terminals = Json::array();
    for (const TerminalWitness& t : r.terminals) {
        terminals.push_back(Json{{"config", to_json(t.terminal)},
                                 {"stable", is_stable(t.terminal)},
                                 {"witness", to_json(t.trace)}});
    }
    return Json{{"terminal_count", r.terminals.size()},
                {"states_visited", r.states_visited},
                {"truncated", r.truncated},
                {"cap_exceeded", r.cap_exceeded},
                {"state_limit_hit", r.state_limit_hit},
                {"depth_limit_hit", r.depth_limit_hit},
                {"confluent", to_string(is_confluent(r))},
                {"terminals", std::move(terminals)}};
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_fail(std::string("malformed JSON: ") + e.what());
    }
}

RenderStyle render_style_from_string(const std::string& s) {
    if (s == "ascii") return RenderStyle::ascii;
    if (s == "svg") return RenderStyle::svg;
    if (s == "json") return RenderStyle::json;
    throw Error(ErrorCode::invalid_argument, "unknown render style '" + s + "'");
}

namespace {

struct Box {
    int x0 = 0, x1 = 0, y0 = 0, y1 = 0;
};

Box bounding_box(const MarkedConfig& c) {
    Box b;
    for (const auto& [f, w] : c.faces()) {
        b.x0 = std::min(b.x0, f.x);
        b.x1 = std::max(b.x1, f.x);
        b.y0 = std::min(b.y0, f.y);
        b.y1 = std::max(b.y1, f.y);
    }
    return b;
}

}  // namespace

std::string render_ascii(const MarkedConfig& c) {
    const Box b = bounding_box(c);
    std::size_t digits = std::to_string(c.marked_weight()).size();
    for (const auto& [f, w] : c.faces()) digits = std::max(digits, std::to_string(w).size());
    std::ostringstream out;
    for (int y = b.y1; y >= b.y0; --y) {
        std::string line;
        for (int x = b.x0; x <= b.x1; ++x) {
            const FaceCoord f{x, y};
            const int w = c.weight(f);
            std::string v = (w == 0 && f != kMarkedFace) ? "" : std::to_string(w);
            v.insert(0, digits - v.size(), ' ');
            line += f == kMarkedFace ? "[" + v + "]" : " " + v + " ";
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
    return out.str();
}

std::string render_svg(const MarkedConfig& c) {
    constexpr int kCell = 32;
    const Box b = bounding_box(c);
    const int width = (b.x1 - b.x0 + 1) * kCell;
    const int height = (b.y1 - b.y0 + 1) * kCell;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    for (int y = b.y1; y >= b.y0; --y) {
        for (int x = b.x0; x <= b.x1; ++x) {
            const FaceCoord f{x, y};
            const int w = c.weight(f);
            if (w == 0 && f != kMarkedFace) continue;
            const int px = (x - b.x0) * kCell;
            const int py = (b.y1 - y) * kCell;
            out << "  <rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << kCell
                << "\" height=\"" << kCell << "\" fill=\""
                << (f == kMarkedFace ? "#9ad0c2" : "#ffffff")
                << "\" stroke=\"#000000\"/>\n";
            out << "  <text x=\"" << px + kCell / 2 << "\" y=\"" << py + kCell / 2 + 5
                << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"14\">" << w
                << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string render(const MarkedConfig& c, RenderStyle style) {
    switch (style) {
        case RenderStyle::ascii: return render_ascii(c);
        case RenderStyle::svg: return render_svg(c);
        case RenderStyle::json: return to_json(c).dump() + "\n";
    }
    return {};
}

}  // namespace flowfire
