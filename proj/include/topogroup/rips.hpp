#pragma once

#include "topogroup/point_cloud.hpp"

#include <compare>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace topogroup {

using Vertex = std::uint32_t;

struct Simplex {
    std::vector<Vertex> vertices; // strictly increasing

    int dim() const noexcept { return static_cast<int>(vertices.size()) - 1; }

    auto operator<=>(const Simplex&) const = default;
};

struct Edge {
    Vertex i = 0;
    Vertex j = 0;

    auto operator<=>(const Edge&) const = default;
};

struct FiltrationEntry {
    Simplex simplex;
    double value = 0.0;
};

// Total order used everywhere: (value, dimension, lexicographic vertices).
bool filtration_less(const FiltrationEntry& a, const FiltrationEntry& b);

inline constexpr double unbounded = std::numeric_limits<double>::infinity();

struct Filtration {
    std::vector<FiltrationEntry> entries;
    int max_dim = 0;
    double max_radius = unbounded;

    // Distinct values r_1 < ... < r_N.
    std::vector<double> radii() const;
};

// How far the filtration is grown.
struct RadiusCap {
    enum class Kind { Enclosing, Unbounded, Fixed };
    Kind kind = Kind::Enclosing;
    double value = 0.0;

    static RadiusCap enclosing() { return {Kind::Enclosing, 0.0}; }
    static RadiusCap none() { return {Kind::Unbounded, 0.0}; }
    static RadiusCap fixed(double r) { return {Kind::Fixed, r}; }

    double resolve(const DistanceMatrix& d) const;
};

// Largest pairwise distance among the vertices; 0 for a single vertex.
double simplex_diameter(const Simplex& simplex, const DistanceMatrix& d);

// Vertex pair realising the diameter, smallest (i, j) on ties.
Edge max_edge(const Simplex& simplex, const DistanceMatrix& d);

inline constexpr int max_supported_dim = 3;

// Every simplex of dimension <= max_dim + 1 with diameter <= max_radius,
// sorted by filtration_less. Simplices are found as cliques of the
// thresholded neighbourhood graph.
Filtration build_filtration(const DistanceMatrix& d, int max_dim, double max_radius = unbounded);
Filtration build_filtration(const PointCloud& cloud, int max_dim, double max_radius = unbounded);

} // namespace topogroup
