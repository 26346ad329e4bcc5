#include "topogroup/rips.hpp"

#include "topogroup/error.hpp"

#include <algorithm>
#include <string>

namespace topogroup {

bool filtration_less(const FiltrationEntry& a, const FiltrationEntry& b)
{
    if (a.value != b.value) {
        return a.value < b.value;
    }
    if (a.simplex.vertices.size() != b.simplex.vertices.size()) {
        return a.simplex.vertices.size() < b.simplex.vertices.size();
    }
    return a.simplex.vertices < b.simplex.vertices;
}

std::vector<double> Filtration::radii() const
{
    std::vector<double> out;
    for (const auto& e : entries) {
        if (out.empty() || out.back() != e.value) {
            out.push_back(e.value);
        }
    }
    return out;
}

double RadiusCap::resolve(const DistanceMatrix& d) const
{
    switch (kind) {
    case Kind::Enclosing: return enclosing_radius(d);
    case Kind::Unbounded: return unbounded;
    case Kind::Fixed: return value;
    }
    return unbounded;
}

namespace {

void check_vertices(const Simplex& simplex, const DistanceMatrix& d)
{
    for (Vertex v : simplex.vertices) {
        if (v >= d.size()) {
            throw Error(Errc::IndexOutOfRange,
                        "vertex " + std::to_string(v) + " outside a " + std::to_string(d.size()) + "-point matrix");
        }
    }
}

} // namespace

double simplex_diameter(const Simplex& simplex, const DistanceMatrix& d)
{
    check_vertices(simplex, d);
    double diam = 0.0;
    const auto& vs = simplex.vertices;
    for (std::size_t a = 0; a < vs.size(); ++a) {
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
            diam = std::max(diam, d(vs[a], vs[b]));
        }
    }
    return diam;
}

Edge max_edge(const Simplex& simplex, const DistanceMatrix& d)
{
    if (simplex.vertices.size() < 2) {
        throw Error(Errc::VertexSimplex, "a vertex has no edge");
    }
    check_vertices(simplex, d);
    const auto& vs = simplex.vertices;
    Edge best{vs[0], vs[1]};
    double best_len = d(vs[0], vs[1]);
    // Vertices are increasing, so scanning pairs in lexicographic order and
    // replacing only on strict improvement keeps the smallest tied pair.
    for (std::size_t a = 0; a < vs.size(); ++a) {
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
            const double len = d(vs[a], vs[b]);
            if (len > best_len) {
                best_len = len;
                best = Edge{vs[a], vs[b]};
            }
        }
    }
    return best;
}

namespace {

struct CliqueBuilder {
    const DistanceMatrix& d;
    std::vector<std::vector<Vertex>> upper; // neighbours with larger index
    std::size_t max_size;
    std::vector<FiltrationEntry>& out;

    void extend(std::vector<Vertex>& clique, double diam, const std::vector<Vertex>& candidates)
    {
        out.push_back(FiltrationEntry{Simplex{clique}, diam});
        if (clique.size() == max_size) {
            return;
        }
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const Vertex v = candidates[c];
            double next_diam = diam;
            for (Vertex u : clique) {
                next_diam = std::max(next_diam, d(u, v));
            }
            std::vector<Vertex> next;
            if (clique.size() + 1 < max_size) {
                std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(c) + 1, candidates.end(),
                                      upper[v].begin(), upper[v].end(), std::back_inserter(next));
            }
            clique.push_back(v);
            extend(clique, next_diam, next);
            clique.pop_back();
        }
    }
};

} // namespace

Filtration build_filtration(const DistanceMatrix& d, int max_dim, double max_radius)
{
    if (max_dim < 0 || max_dim > max_supported_dim) {
        throw Error(Errc::DimensionTooLarge,
                    "max_dim must be in [0, " + std::to_string(max_supported_dim) + "], got " + std::to_string(max_dim));
    }
    if (!(max_radius > 0.0)) {
        throw Error(Errc::InvalidArgument, "max_radius must be positive or unbounded");
    }
    const std::size_t m = d.size();
    Filtration f;
    f.max_dim = max_dim;
    f.max_radius = max_radius;

    CliqueBuilder builder{d, std::vector<std::vector<Vertex>>(m), static_cast<std::size_t>(max_dim) + 2, f.entries};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (d(i, j) <= max_radius) {
                builder.upper[i].push_back(static_cast<Vertex>(j));
            }
        }
    }
    std::vector<Vertex> clique;
    for (std::size_t i = 0; i < m; ++i) {
        clique.assign(1, static_cast<Vertex>(i));
        builder.extend(clique, 0.0, builder.upper[i]);
    }
    std::sort(f.entries.begin(), f.entries.end(), filtration_less);
    return f;
}

Filtration build_filtration(const PointCloud& cloud, int max_dim, double max_radius)
{
    return build_filtration(pairwise_distances(cloud), max_dim, max_radius);
}

} // namespace topogroup
