#include "sbpm/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <utility>

#include "sbpm/error.hpp"

namespace sbpm {

namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 40.0;

const char* kColors[] = {"#4878cf", "#e8a33d", "#9457c9", "#3da45c"};
constexpr std::size_t kNumStyles = 4;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
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

// Pixel mapping: data square [-bound, bound]^2 onto the canvas, y up.
struct Frame {
    double bound;
    double px(double x) const { return kMargin + (x + bound) / (2 * bound) * (kCanvas - 2 * kMargin); }
    double py(double y) const { return kCanvas - kMargin - (y + bound) / (2 * bound) * (kCanvas - 2 * kMargin); }
};

void emit_marker(std::ostringstream& out, std::size_t style, double cx, double cy,
                 const char* color) {
    switch (style % kNumStyles) {
        case 0:  // dot
            out << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy)
                << "\" r=\"2.20\" fill=\"" << color << "\" fill-opacity=\"0.75\"/>\n";
            break;
        case 1:  // cross
            out << "<path d=\"M" << fmt(cx - 2.6) << " " << fmt(cy - 2.6) << " L"
                << fmt(cx + 2.6) << " " << fmt(cy + 2.6) << " M" << fmt(cx - 2.6) << " "
                << fmt(cy + 2.6) << " L" << fmt(cx + 2.6) << " " << fmt(cy - 2.6)
                << "\" stroke=\"" << color << "\" stroke-width=\"1.2\"/>\n";
            break;
        case 2: {  // four-point star
            out << "<path d=\"M" << fmt(cx) << " " << fmt(cy - 3.4) << " L" << fmt(cx + 1.1)
                << " " << fmt(cy - 1.1) << " L" << fmt(cx + 3.4) << " " << fmt(cy) << " L"
                << fmt(cx + 1.1) << " " << fmt(cy + 1.1) << " L" << fmt(cx) << " "
                << fmt(cy + 3.4) << " L" << fmt(cx - 1.1) << " " << fmt(cy + 1.1) << " L"
                << fmt(cx - 3.4) << " " << fmt(cy) << " L" << fmt(cx - 1.1) << " "
                << fmt(cy - 1.1) << " Z\" fill=\"" << color << "\"/>\n";
            break;
        }
        default:  // open square
            out << "<rect x=\"" << fmt(cx - 2.2) << "\" y=\"" << fmt(cy - 2.2)
                << "\" width=\"4.40\" height=\"4.40\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.2\"/>\n";
            break;
    }
}

}  // namespace

std::string render_scatter_svg(const std::vector<PlotLayer>& layers, double circle_radius) {
    if (layers.empty()) throw Error("plot requires at least one dataset");
    double extent = circle_radius > 0.0 ? circle_radius : 1.0;
    for (const PlotLayer& layer : layers) {
        const Dataset& d = *layer.data;
        if (d.cols() != 2 || d.schema()[0].kind != ColumnKind::numeric ||
            d.schema()[1].kind != ColumnKind::numeric) {
            throw Error("plot requires 2d numeric datasets, role '" + layer.role +
                        "' is not");
        }
        for (std::size_t i = 0; i < d.rows(); ++i) {
            extent = std::max({extent, std::abs(d.at(i, 0)), std::abs(d.at(i, 1))});
        }
    }
    // Round the frame bound to a half-unit step so near-identical inputs
    // share a frame.
    const Frame frame{std::ceil(extent * 1.05 * 2.0) / 2.0};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    out << "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";

    if (circle_radius > 0.0) {
        const double r_px = frame.px(circle_radius) - frame.px(0.0);
        out << "<circle class=\"boundary\" cx=\"" << fmt(frame.px(0.0)) << "\" cy=\""
            << fmt(frame.py(0.0)) << "\" r=\"" << fmt(r_px)
            << "\" fill=\"none\" stroke=\"#2b6cb0\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"6 3\"/>\n";
    }

    for (std::size_t li = 0; li < layers.size(); ++li) {
        const PlotLayer& layer = layers[li];
        const char* color = kColors[li % kNumStyles];
        out << "<g class=\"role-" << xml_escape(layer.role) << "\">\n";
        // Coincident points collapse to one marker with a multiplicity tag.
        std::map<std::pair<double, double>, std::size_t> multiplicity;
        for (std::size_t i = 0; i < layer.data->rows(); ++i) {
            ++multiplicity[{layer.data->at(i, 0), layer.data->at(i, 1)}];
        }
        for (const auto& [point, count] : multiplicity) {
            const double cx = frame.px(point.first);
            const double cy = frame.py(point.second);
            emit_marker(out, li, cx, cy, color);
            if (count > 1) {
                out << "<text x=\"" << fmt(cx + 5.0) << "\" y=\"" << fmt(cy - 5.0)
                    << "\" font-size=\"11\" fill=\"" << color << "\">x" << count
                    << "</text>\n";
            }
        }
        out << "</g>\n";
    }

    // Legend
    for (std::size_t li = 0; li < layers.size(); ++li) {
        const double ly = 20.0 + 16.0 * static_cast<double>(li);
        emit_marker(out, li, 18.0, ly - 4.0, kColors[li % kNumStyles]);
        out << "<text x=\"28\" y=\"" << fmt(ly) << "\" font-size=\"12\" fill=\"#333\">"
            << xml_escape(layers[li].role) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace sbpm
