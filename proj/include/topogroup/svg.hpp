#pragma once

#include "topogroup/experiments.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace topogroup::svg {

struct Frame {
    std::size_t step = 0;
    std::vector<std::vector<double>> points;
};

struct ViewBox {
    double x = 0.0;
    double y = 0.0;
    double width = 1.0;
    double height = 1.0;
};

// Bounds of every frame's first two coordinates (y flipped to screen
// orientation), padded by `margin` of the larger side. One box for all
// frames keeps an animation from jumping.
ViewBox common_view_box(std::span<const Frame> frames, double margin = 0.05);

// One <circle> per point. Points are coloured by group when labels are given.
std::string render(const Frame& frame, const ViewBox& box, const GroupLabels* labels = nullptr);

} // namespace topogroup::svg
