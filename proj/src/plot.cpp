#include "pgnlab/plot.hpp"

#include "pgnlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace pgn {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

const char* colour(int k) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};
    return palette[k % 10];
}

struct Line {
    std::string label;
    bool dashed = false;
    int colour = 0;
    std::vector<std::pair<double, double>> pts;
};

// Round step for about `count` ticks over [lo, hi].
double tick_step(double lo, double hi, int count) {
    double raw = (hi - lo) / count;
    if (raw <= 0) return 1;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) return m * mag;
    return 10 * mag;
}

} // namespace

std::string profile_svg(const std::vector<ProfileTable>& tables, int width, int height) {
    std::vector<Line> lines;
    for (const auto& t : tables) {
        bool dual = t.family == BodyFamily::LinearForm;
        for (int j = 1; j <= t.n + 1; ++j) {
            Line l;
            l.dashed = dual;
            l.colour = dual ? t.n + 2 - j - 1 : j - 1;
            l.label = (dual ? "-nu*_" : "psi_") + std::to_string(j) + " " + to_string(t.family) + " n=" +
                      std::to_string(t.n);
            for (const auto& row : t.rows) {
                if (!row.ok() || static_cast<int>(row.minima.size()) < j) continue;
                double y = row.minima[j - 1].psi();
                if (dual) y = -y;
                if (std::isfinite(y)) l.pts.emplace_back(row.Q.log10(), y);
            }
            if (!l.pts.empty()) lines.push_back(std::move(l));
        }
    }
    if (lines.empty()) throw InsufficientData("nothing to plot: no computed rows");

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& l : lines)
        for (auto [x, y] : l.pts) {
            x0 = std::min(x0, x), x1 = std::max(x1, x);
            y0 = std::min(y0, y), y1 = std::max(y1, y);
        }
    if (x1 - x0 < 1e-9) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-9) y0 -= 0.5, y1 += 0.5;
    double pad = 0.05 * (y1 - y0);
    y0 -= pad, y1 += pad;

    const double ml = 70, mr = 190, mt = 20, mb = 50;
    double pw = width - ml - mr, ph = height - mt - mb;
    auto sx = [&](double x) { return ml + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return mt + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    os << "<g id=\"axes\" stroke=\"black\" fill=\"none\">\n";
    os << "<line x1=\"" << num(ml) << "\" y1=\"" << num(mt + ph) << "\" x2=\"" << num(ml + pw) << "\" y2=\""
       << num(mt + ph) << "\"/>\n";
    os << "<line x1=\"" << num(ml) << "\" y1=\"" << num(mt) << "\" x2=\"" << num(ml) << "\" y2=\"" << num(mt + ph)
       << "\"/>\n";
    if (y0 < 0 && y1 > 0)
        os << "<line x1=\"" << num(ml) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(ml + pw) << "\" y2=\""
           << num(sy(0)) << "\" stroke=\"#999\" stroke-dasharray=\"2,3\"/>\n";
    os << "</g>\n<g id=\"ticks\" fill=\"black\">\n";
    double xs = tick_step(x0, x1, 8);
    for (double x = std::ceil(x0 / xs) * xs; x <= x1 + 1e-9; x += xs)
        os << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(mt + ph + 16) << "\" text-anchor=\"middle\">"
           << num(x) << "</text>\n";
    double ys = tick_step(y0, y1, 8);
    for (double y = std::ceil(y0 / ys) * ys; y <= y1 + 1e-9; y += ys)
        os << "<text x=\"" << num(ml - 6) << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">"
           << num(std::abs(y) < 1e-12 ? 0.0 : y) << "</text>\n";
    os << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(height - 10.0)
       << "\" text-anchor=\"middle\">log\xE2\x82\x81\xE2\x82\x80 Q</text>\n";
    os << "<text x=\"16\" y=\"" << num(mt + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << num(mt + ph / 2) << ")\">\xCF\x88</text>\n";
    os << "</g>\n<g id=\"curves\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto& l = lines[k];
        os << "<polyline data-label=\"" << xml_escape(l.label) << "\" stroke=\"" << colour(l.colour) << '"';
        if (l.dashed) os << " stroke-dasharray=\"6,4\"";
        os << " points=\"";
        for (std::size_t i = 0; i < l.pts.size(); ++i)
            os << (i ? " " : "") << num(sx(l.pts[i].first)) << ',' << num(sy(l.pts[i].second));
        os << "\"/>\n";
    }
    os << "</g>\n<g id=\"legend\">\n";
    for (std::size_t k = 0; k < lines.size(); ++k) {
        double y = mt + 10 + 16.0 * k;
        const auto& l = lines[k];
        os << "<line x1=\"" << num(ml + pw + 10) << "\" y1=\"" << num(y) << "\" x2=\"" << num(ml + pw + 34)
           << "\" y2=\"" << num(y) << "\" stroke=\"" << colour(l.colour) << '"'
           << (l.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
        os << "<text x=\"" << num(ml + pw + 40) << "\" y=\"" << num(y + 4) << "\">" << xml_escape(l.label)
           << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace pgn
