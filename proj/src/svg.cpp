#include "linfdsp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "linfdsp/common.hpp"
#include "linfdsp/csv.hpp"

namespace linfdsp {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

void svg_line_chart(const std::filesystem::path& path, const std::string& title,
                    const std::vector<SvgSeries>& series, bool log_y) {
    const double W = 720, H = 440;
    const double ml = 70, mr = 20, mt = 40, mb = 45;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool any = false;
    auto yval = [&](double y) {
        return log_y ? std::log10(std::max(y, 1e-300)) : y;
    };
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            const double yy = yval(y);
            if (!any) {
                x0 = x1 = x;
                y0 = y1 = yy;
                any = true;
            }
            x0 = std::min(x0, x), x1 = std::max(x1, x);
            y0 = std::min(y0, yy), y1 = std::max(y1, yy);
        }
    if (!any) x1 = y1 = 1.0;
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (yval(y) - y0) / (y1 - y0) * (H - mt - mb); };

    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw invalid_input("svg: cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
           "font-family=\"sans-serif\">"
        << title << "</text>\n";
    // frame + reference grid lines
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
        << "\" height=\"" << H - mt - mb << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int g = 0; g <= 4; ++g) {
        const double fy = mt + (H - mt - mb) * g / 4.0;
        const double vy = y1 - (y1 - y0) * g / 4.0;
        out << "<line x1=\"" << ml << "\" y1=\"" << fy << "\" x2=\"" << W - mr << "\" y2=\""
            << fy << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << ml - 6 << "\" y=\"" << fy + 4
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
            << format_double(vy) << (log_y ? " (log10)" : "") << "</text>\n";
        const double fx = ml + (W - ml - mr) * g / 4.0;
        const double vx = x0 + (x1 - x0) * g / 4.0;
        out << "<text x=\"" << fx << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
            << format_double(vx) << "</text>\n";
    }
    int ci = 0;
    double ly = mt + 14;
    for (const auto& s : series) {
        const char* color = kPalette[ci % 8];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) out << px(x) << "," << py(y) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << W - mr - 8 << "\" y=\"" << ly
            << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\""
            << color << "\">" << s.name << "</text>\n";
        ly += 16;
        ++ci;
    }
    out << "</svg>\n";
}

}  // namespace linfdsp
