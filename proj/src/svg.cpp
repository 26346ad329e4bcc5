#include "topogroup/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>

namespace topogroup::svg {

namespace {

constexpr std::array<const char*, 6> palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double coord(const std::vector<double>& p, std::size_t axis) { return axis < p.size() ? p[axis] : 0.0; }

} // namespace

ViewBox common_view_box(std::span<const Frame> frames, double margin)
{
    double lo_x = std::numeric_limits<double>::infinity();
    double lo_y = lo_x;
    double hi_x = -lo_x;
    double hi_y = -lo_x;
    for (const auto& f : frames) {
        for (const auto& p : f.points) {
            lo_x = std::min(lo_x, coord(p, 0));
            hi_x = std::max(hi_x, coord(p, 0));
            lo_y = std::min(lo_y, -coord(p, 1));
            hi_y = std::max(hi_y, -coord(p, 1));
        }
    }
    if (lo_x > hi_x) {
        return {};
    }
    const double side = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    const double pad = margin * side;
    return {lo_x - pad, lo_y - pad, (hi_x - lo_x) + 2 * pad, (hi_y - lo_y) + 2 * pad};
}

std::string render(const Frame& frame, const ViewBox& box, const GroupLabels* labels)
{
    const double radius = 0.006 * std::max(box.width, box.height);
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"" + num(box.x) + " " +
           num(box.y) + " " + num(box.width) + " " + num(box.height) + "\">\n";
    out += "<title>step " + std::to_string(frame.step) + "</title>\n";
    out += "<rect x=\"" + num(box.x) + "\" y=\"" + num(box.y) + "\" width=\"" + num(box.width) + "\" height=\"" +
           num(box.height) + "\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < frame.points.size(); ++i) {
        std::size_t colour = 0;
        if (labels && i < labels->ids.size() && labels->ids[i] >= 0) {
            colour = static_cast<std::size_t>(labels->ids[i]) % palette.size();
        }
        out += "<circle cx=\"" + num(coord(frame.points[i], 0)) + "\" cy=\"" + num(-coord(frame.points[i], 1)) +
               "\" r=\"" + num(radius) + "\" fill=\"" + palette[colour] + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace topogroup::svg
