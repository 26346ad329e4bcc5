#pragma once

#include "topogroup/point_cloud.hpp"
#include "topogroup/rips.hpp"

#include <optional>
#include <vector>

namespace topogroup {

// One (birth, death) point of a diagram together with the simplices whose
// insertion created and destroyed the class.
struct PersistencePair {
    int dim = 0;
    double birth = 0.0;
    double death = unbounded;
    Simplex birth_simplex;
    std::optional<Simplex> death_simplex; // absent for essential classes

    bool essential() const noexcept { return !death_simplex.has_value(); }
    bool zero_persistence() const noexcept { return !essential() && death == birth; }
};

double persistence_of(const PersistencePair& pair);

struct PersistenceDiagram {
    int dim = 0;
    std::vector<PersistencePair> pairs; // all pairs, zero-persistence included

    // Pairs with nonzero persistence; the default view.
    std::vector<PersistencePair> visible() const;
};

using Diagrams = std::vector<PersistenceDiagram>;

// Canonical order inside a diagram: (birth, death, birth simplex, death simplex).
bool pair_less(const PersistencePair& a, const PersistencePair& b);

// Standard GF(2) column reduction of the boundary matrix of `filtration`,
// with clearing, returning diagrams for dimensions 0..max_dim. Throws
// InconsistentFiltration if a face is missing or ordered after its coface.
Diagrams compute_persistence(const Filtration& filtration, int max_dim);

// Same pairing as build_filtration + compute_persistence, without
// materialising higher simplices. H0 comes from union-find over the sorted
// edges; H1 from the anti-transposed (coboundary) reduction, which yields
// the identical pairing. Dimensions above 1 fall back to the explicit path.
Diagrams rips_persistence(const DistanceMatrix& d, int max_dim, double max_radius = unbounded);

// H0 from the edge weights of a minimum spanning tree (Prim), independent of
// any filtration ordering. Values only; simplices describe the tree edges.
PersistenceDiagram h0_mst_oracle(const PointCloud& cloud);

} // namespace topogroup
