// Quick-look SVG line charts. Purely cosmetic output behind the --svg flag;
// the CSV files are the contract.

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "wqed/types.hpp"

namespace wqed::cli {

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

inline void write_svg_chart(const std::string& path, const std::string& title,
                            const std::vector<SvgSeries>& series) {
    const double width = 760, height = 480, margin = 55;
    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
        }
    if (x_min >= x_max) { x_min -= 0.5; x_max += 0.5; }
    if (y_min >= y_max) { y_min -= 0.5; y_max += 0.5; }
    const double pad = 0.04 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    auto px = [&](double x) {
        return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin);
    };
    auto py = [&](double y) {
        return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin);
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << width / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";
    out << "<rect x='" << margin << "' y='" << margin << "' width='" << width - 2 * margin
        << "' height='" << height - 2 * margin << "' fill='none' stroke='black'/>\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x_min);
    out << "<text x='" << margin << "' y='" << height - margin + 18 << "' font-size='12'>" << buf
        << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", x_max);
    out << "<text x='" << width - margin << "' y='" << height - margin + 18
        << "' text-anchor='end' font-size='12'>" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", y_min);
    out << "<text x='" << margin - 6 << "' y='" << height - margin
        << "' text-anchor='end' font-size='12'>" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", y_max);
    out << "<text x='" << margin - 6 << "' y='" << margin + 4
        << "' text-anchor='end' font-size='12'>" << buf << "</text>\n";

    double legend_y = margin + 14;
    for (const auto& s : series) {
        out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.3' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        out << "'/>\n";
        out << "<text x='" << width - margin - 6 << "' y='" << legend_y
            << "' text-anchor='end' font-size='12' fill='" << s.color << "'>" << s.label
            << "</text>\n";
        legend_y += 16;
    }
    out << "</svg>\n";
}

}  // namespace wqed::cli
