#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace topogroup {

// One gradient vector per point, row-major, same shape as the cloud.
struct PointGradient {
    std::size_t size = 0;
    std::size_t dim = 0;
    std::vector<double> values;

    PointGradient() = default;
    PointGradient(std::size_t m, std::size_t n) : size(m), dim(n), values(m * n, 0.0) {}

    std::span<double> point(std::size_t i) { return {values.data() + i * dim, dim}; }
    std::span<const double> point(std::size_t i) const { return {values.data() + i * dim, dim}; }

    // Points whose gradient vector is not exactly zero.
    std::size_t nonzero_points() const;
};

} // namespace topogroup
