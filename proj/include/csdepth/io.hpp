#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "scalar.hpp"

namespace csdepth::io {

class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}

    int line;
};

// A parsed point file plus the source line of every point, for diagnostics
// that point back at the file.
struct ParsedConfig {
    ColourConfiguration config;
    std::vector<std::vector<int>> lines;  // per colour, per point

    int line_of(const PointRef& r) const {
        if (r.colour < 0 || static_cast<std::size_t>(r.colour) >= lines.size()) return 0;
        const auto& cls = lines[static_cast<std::size_t>(r.colour)];
        if (r.index < 0 || static_cast<std::size_t>(r.index) >= cls.size()) return 0;
        return cls[static_cast<std::size_t>(r.index)];
    }
};

// Records are "c x y" with a 1-based colour index and exact coordinates
// (integers, decimals, or p/q). '#' starts a comment; blank lines are
// skipped. Colours must cover 1..k with no gaps.
inline ParsedConfig parse_config(std::istream& in) {
    std::vector<std::vector<Point>> classes;
    std::vector<std::vector<int>> lines;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream fields(raw);
        std::string c_text, x_text, y_text, extra;
        if (!(fields >> c_text)) continue;  // blank
        if (!(fields >> x_text >> y_text)) throw parse_error(line_no, "expected: colour x y");
        if (fields >> extra) throw parse_error(line_no, "trailing field '" + extra + "'");

        int colour = 0;
        try {
            std::size_t used = 0;
            colour = std::stoi(c_text, &used);
            if (used != c_text.size()) throw std::invalid_argument(c_text);
        } catch (const std::exception&) {
            throw parse_error(line_no, "bad colour index '" + c_text + "'");
        }
        if (colour < 1) throw parse_error(line_no, "colour index must be >= 1");

        const auto x = parse_rat(x_text);
        if (!x) throw parse_error(line_no, "bad coordinate '" + x_text + "'");
        const auto y = parse_rat(y_text);
        if (!y) throw parse_error(line_no, "bad coordinate '" + y_text + "'");

        if (static_cast<std::size_t>(colour) > classes.size()) {
            classes.resize(static_cast<std::size_t>(colour));
            lines.resize(static_cast<std::size_t>(colour));
        }
        classes[static_cast<std::size_t>(colour - 1)].push_back(Point{*x, *y});
        lines[static_cast<std::size_t>(colour - 1)].push_back(line_no);
    }
    if (classes.size() < 3)
        throw parse_error(line_no, "a configuration needs at least 3 colours (found " +
                                       std::to_string(classes.size()) + ")");
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (classes[c].empty())
            throw parse_error(line_no, "colour " + std::to_string(c + 1) + " is never used (colours must be 1..k)");
    try {
        return ParsedConfig{ColourConfiguration(std::move(classes)), std::move(lines)};
    } catch (const degenerate_input& e) {
        std::string msg = e.what();
        for (const PointRef& r : e.offenders) {
            if (r.colour < 0 || static_cast<std::size_t>(r.colour) >= lines.size()) continue;
            const auto& per_class = lines[static_cast<std::size_t>(r.colour)];
            if (r.index < 0 || static_cast<std::size_t>(r.index) >= per_class.size()) continue;
            msg += " (line " + std::to_string(per_class[static_cast<std::size_t>(r.index)]) + ")";
        }
        throw degenerate_input(msg, e.offenders);
    }
}

inline ParsedConfig parse_config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

inline std::string write_config(const ColourConfiguration& cfg) {
    std::ostringstream out;
    for (std::size_t c = 0; c < cfg.k(); ++c)
        for (const Point& p : cfg.colour_class(c))
            out << (c + 1) << ' ' << format_rat(p.x) << ' ' << format_rat(p.y) << '\n';
    return out.str();
}

}  // namespace csdepth::io
