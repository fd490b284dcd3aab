#pragma once

// Readers and writers for the MovingAI benchmark formats (.map and .scen).

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtsearch/grid.hpp"

namespace rtsearch {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

inline std::int32_t parse_dimension(const std::string& line, const std::string& key, std::size_t lineno) {
    std::istringstream ss(line);
    std::string word;
    long long value = 0;
    if (!(ss >> word) || word != key || !(ss >> value))
        throw ParseError(lineno, "expected '" + key + " <n>', got '" + line + "'");
    std::string rest;
    if (ss >> rest) throw ParseError(lineno, "trailing text after " + key);
    if (value <= 0 || value > (1 << 20)) throw ParseError(lineno, key + " out of range");
    return static_cast<std::int32_t>(value);
}

}  // namespace detail

/// Parses a MovingAI octile map. Passable: '.', 'G'. Blocked: '@', 'O', 'T'.
/// Swamp ('S') and water ('W') terrain is rejected.
inline GridMap parse_map(std::istream& in, Connectivity connectivity = Connectivity::Eight) {
    std::string line;
    std::size_t lineno = 0;
    auto next = [&](const char* what) {
        if (!detail::read_line(in, line)) throw ParseError(lineno + 1, std::string("unexpected end of input, expected ") + what);
        ++lineno;
    };

    next("type line");
    {
        std::istringstream ss(line);
        std::string key, type;
        if (!(ss >> key >> type) || key != "type" || type != "octile")
            throw ParseError(lineno, "expected 'type octile'");
    }
    next("height line");
    const auto height = detail::parse_dimension(line, "height", lineno);
    next("width line");
    const auto width = detail::parse_dimension(line, "width", lineno);
    next("map line");
    if (line != "map") throw ParseError(lineno, "expected 'map'");

    GridMap map(width, height, connectivity);
    for (std::int32_t y = 0; y < height; ++y) {
        next("map row");
        if (line.size() != static_cast<std::size_t>(width))
            throw ParseError(lineno, "row has " + std::to_string(line.size()) + " cells, expected " + std::to_string(width));
        for (std::int32_t x = 0; x < width; ++x) {
            switch (line[static_cast<std::size_t>(x)]) {
                case '.':
                case 'G':
                    break;
                case '@':
                case 'O':
                case 'T':
                    map.set_blocked({x, y});
                    break;
                case 'S':
                case 'W':
                    throw ParseError(lineno, "swamp/water terrain is not supported");
                default:
                    throw ParseError(lineno, std::string("unknown terrain character '") + line[static_cast<std::size_t>(x)] + "'");
            }
        }
    }
    // Trailing blank lines are tolerated; extra rows are not.
    while (detail::read_line(in, line)) {
        ++lineno;
        if (!line.empty()) throw ParseError(lineno, "more rows than declared height");
    }
    return map;
}

inline GridMap parse_map_text(const std::string& text, Connectivity connectivity = Connectivity::Eight) {
    std::istringstream in(text);
    return parse_map(in, connectivity);
}

inline GridMap load_map(const std::string& path, Connectivity connectivity = Connectivity::Eight) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open map file '" + path + "'");
    return parse_map(in, connectivity);
}

inline void write_map(std::ostream& out, const GridMap& map) {
    out << "type octile\nheight " << map.height() << "\nwidth " << map.width() << "\nmap\n";
    for (const auto& row : map.rows()) out << row << '\n';
}

struct ScenarioCase {
    std::string map_name;
    std::int32_t map_width = 0;
    std::int32_t map_height = 0;
    Cell start;
    Cell goal;
};

/// Parses a MovingAI .scen file. The optimal-length column is ignored.
inline std::vector<ScenarioCase> parse_scen(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::vector<ScenarioCase> cases;
    if (!detail::read_line(in, line)) throw ParseError(1, "empty scenario file");
    ++lineno;
    if (line.rfind("version", 0) != 0) throw ParseError(lineno, "expected version line");
    while (detail::read_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) fields.push_back(field);
        if (fields.size() < 8) throw ParseError(lineno, "expected at least 8 tab-separated fields");
        try {
            ScenarioCase c;
            c.map_name = fields[1];
            c.map_width = std::stoi(fields[2]);
            c.map_height = std::stoi(fields[3]);
            c.start = {std::stoi(fields[4]), std::stoi(fields[5])};
            c.goal = {std::stoi(fields[6]), std::stoi(fields[7])};
            cases.push_back(c);
        } catch (const std::logic_error&) {
            throw ParseError(lineno, "malformed numeric field");
        }
    }
    return cases;
}

}  // namespace rtsearch
