#include "topogroup/persistence.hpp"

#include "topogroup/error.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

namespace topogroup {

double persistence_of(const PersistencePair& pair)
{
    return pair.essential() ? unbounded : pair.death - pair.birth;
}

std::vector<PersistencePair> PersistenceDiagram::visible() const
{
    std::vector<PersistencePair> out;
    for (const auto& p : pairs) {
        if (!p.zero_persistence()) {
            out.push_back(p);
        }
    }
    return out;
}

bool pair_less(const PersistencePair& a, const PersistencePair& b)
{
    if (a.birth != b.birth) {
        return a.birth < b.birth;
    }
    if (a.death != b.death) {
        return a.death < b.death;
    }
    if (a.birth_simplex != b.birth_simplex) {
        return a.birth_simplex < b.birth_simplex;
    }
    return a.death_simplex < b.death_simplex;
}

namespace {

void canonicalize(Diagrams& diagrams)
{
    for (auto& diagram : diagrams) {
        std::sort(diagram.pairs.begin(), diagram.pairs.end(), pair_less);
    }
}

struct VertexListHash {
    std::size_t operator()(const std::vector<Vertex>& vs) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (Vertex v : vs) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

using Column = std::vector<std::size_t>; // sorted row indices

void add_columns(Column& target, const Column& source, Column& scratch)
{
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

} // namespace

Diagrams compute_persistence(const Filtration& filtration, int max_dim)
{
    if (max_dim < 0 || max_dim > filtration.max_dim) {
        throw Error(Errc::InvalidArgument, "filtration was built for max_dim " + std::to_string(filtration.max_dim) +
                                               ", cannot report dimension " + std::to_string(max_dim));
    }
    const auto& entries = filtration.entries;
    const std::size_t count = entries.size();

    std::unordered_map<std::vector<Vertex>, std::size_t, VertexListHash> index_of;
    index_of.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        index_of.emplace(entries[k].simplex.vertices, k);
    }

    const int top_dim = max_dim + 1;
    std::vector<Column> columns(count);
    std::vector<Vertex> facet;
    for (std::size_t k = 0; k < count; ++k) {
        const auto& vs = entries[k].simplex.vertices;
        if (vs.empty() || !std::is_sorted(vs.begin(), vs.end()) ||
            std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
            throw Error(Errc::InconsistentFiltration, "entry " + std::to_string(k) + " is not a valid simplex");
        }
        if (k > 0 && filtration_less(entries[k], entries[k - 1])) {
            throw Error(Errc::InconsistentFiltration, "entries are not sorted at position " + std::to_string(k));
        }
        if (vs.size() < 2 || entries[k].simplex.dim() > top_dim) {
            continue;
        }
        for (std::size_t drop = 0; drop < vs.size(); ++drop) {
            facet.clear();
            for (std::size_t a = 0; a < vs.size(); ++a) {
                if (a != drop) {
                    facet.push_back(vs[a]);
                }
            }
            auto it = index_of.find(facet);
            if (it == index_of.end() || it->second >= k) {
                throw Error(Errc::InconsistentFiltration,
                            "a facet of entry " + std::to_string(k) + " is missing or appears after it");
            }
            columns[k].push_back(it->second);
        }
        std::sort(columns[k].begin(), columns[k].end());
    }

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pivot_owner(count, none); // row -> column
    std::vector<bool> cleared(count, false);
    std::vector<bool> negative(count, false);
    Column scratch;

    // Clearing: reduce from the top dimension down. A row that becomes a pivot
    // belongs to a positive simplex whose own column must reduce to zero.
    for (int dim = top_dim; dim >= 1; --dim) {
        for (std::size_t j = 0; j < count; ++j) {
            if (entries[j].simplex.dim() != dim) {
                continue;
            }
            if (cleared[j]) {
                columns[j].clear();
                continue;
            }
            Column& col = columns[j];
            while (!col.empty() && pivot_owner[col.back()] != none) {
                add_columns(col, columns[pivot_owner[col.back()]], scratch);
            }
            if (!col.empty()) {
                pivot_owner[col.back()] = j;
                cleared[col.back()] = true;
                negative[j] = true;
            }
        }
    }

    Diagrams diagrams(static_cast<std::size_t>(max_dim) + 1);
    for (int dim = 0; dim <= max_dim; ++dim) {
        diagrams[static_cast<std::size_t>(dim)].dim = dim;
    }
    for (std::size_t k = 0; k < count; ++k) {
        const int dim = entries[k].simplex.dim();
        if (dim > max_dim || negative[k]) {
            continue;
        }
        PersistencePair pair;
        pair.dim = dim;
        pair.birth = entries[k].value;
        pair.birth_simplex = entries[k].simplex;
        if (pivot_owner[k] != none) {
            const auto& killer = entries[pivot_owner[k]];
            pair.death = killer.value;
            pair.death_simplex = killer.simplex;
        }
        diagrams[static_cast<std::size_t>(dim)].pairs.push_back(std::move(pair));
    }
    canonicalize(diagrams);
    return diagrams;
}

namespace {

struct SortedEdge {
    double len;
    Vertex i;
    Vertex j;
};

std::vector<SortedEdge> sorted_edges(const DistanceMatrix& d, double max_radius)
{
    std::vector<SortedEdge> edges;
    const std::size_t m = d.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = d.row(i);
        for (std::size_t j = i + 1; j < m; ++j) {
            if (row[j] <= max_radius) {
                edges.push_back({row[j], static_cast<Vertex>(i), static_cast<Vertex>(j)});
            }
        }
    }
    std::sort(edges.begin(), edges.end(), [](const SortedEdge& a, const SortedEdge& b) {
        if (a.len != b.len) {
            return a.len < b.len;
        }
        if (a.i != b.i) {
            return a.i < b.i;
        }
        return a.j < b.j;
    });
    return edges;
}

// Union-find whose root is always the smallest vertex of its component. The
// merge pairs the edge with the larger of the two roots, which is the pivot
// the standard reduction settles on for vertices all born at 0.
class ElderUnionFind {
public:
    explicit ElderUnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Vertex{0}); }

    Vertex find(Vertex v)
    {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    void link(Vertex elder, Vertex younger) { parent_[younger] = elder; }

private:
    std::vector<Vertex> parent_;
};

struct Cofacet {
    double diam;
    std::uint64_t key; // a*m*m + b*m + c for a<b<c, preserves lexicographic order

    bool operator==(const Cofacet& o) const noexcept { return key == o.key; }
};

struct CofacetGreater {
    bool operator()(const Cofacet& a, const Cofacet& b) const noexcept
    {
        if (a.diam != b.diam) {
            return a.diam > b.diam;
        }
        return a.key > b.key;
    }
};

class CoboundaryReducer {
public:
    CoboundaryReducer(const DistanceMatrix& d, const std::vector<SortedEdge>& edges, double max_radius)
        : d_(d), edges_(edges), m_(d.size()), max_radius_(max_radius)
    {
    }

    Cofacet make(Vertex a, Vertex b, Vertex c, double diam) const
    {
        Vertex lo = std::min({a, b, c});
        Vertex hi = std::max({a, b, c});
        Vertex mid = a ^ b ^ c ^ lo ^ hi;
        return {diam, (static_cast<std::uint64_t>(lo) * m_ + mid) * m_ + hi};
    }

    Simplex unpack(std::uint64_t key) const
    {
        const auto c = static_cast<Vertex>(key % m_);
        key /= m_;
        const auto b = static_cast<Vertex>(key % m_);
        const auto a = static_cast<Vertex>(key / m_);
        return Simplex{{a, b, c}};
    }

    template <typename Sink>
    void for_each_cofacet(std::size_t edge, Sink&& sink) const
    {
        const auto& e = edges_[edge];
        const double* ri = d_.row(e.i);
        const double* rj = d_.row(e.j);
        for (std::size_t v = 0; v < m_; ++v) {
            if (v == e.i || v == e.j) {
                continue;
            }
            const double diam = std::max({e.len, ri[v], rj[v]});
            if (diam <= max_radius_) {
                sink(make(e.i, e.j, static_cast<Vertex>(v), diam));
            }
        }
    }

    std::optional<Cofacet> smallest_cofacet(std::size_t edge) const
    {
        std::optional<Cofacet> best;
        CofacetGreater greater;
        for_each_cofacet(edge, [&](const Cofacet& c) {
            if (!best || greater(*best, c)) {
                best = c;
            }
        });
        return best;
    }

    // Reduces the coboundary column of every positive edge, latest edge first.
    // Returns, per edge, the pivot cofacet it is paired with (if any).
    std::vector<std::optional<Cofacet>> reduce(const std::vector<bool>& cleared)
    {
        std::vector<std::optional<Cofacet>> paired(edges_.size());
        std::unordered_map<std::uint64_t, std::size_t> pivot_owner;
        std::unordered_map<std::size_t, std::vector<std::size_t>> reductions;

        for (std::size_t col = edges_.size(); col-- > 0;) {
            if (cleared[col]) {
                continue;
            }
            auto first = smallest_cofacet(col);
            if (!first) {
                continue; // empty coboundary: essential class
            }
            if (!pivot_owner.contains(first->key)) {
                pivot_owner.emplace(first->key, col);
                paired[col] = first;
                continue;
            }

            Heap heap;
            std::vector<std::size_t> combination{col};
            push_column(heap, col);
            std::optional<Cofacet> pivot = pop_pivot(heap);
            while (pivot) {
                auto owner = pivot_owner.find(pivot->key);
                if (owner == pivot_owner.end()) {
                    break;
                }
                auto stored = reductions.find(owner->second);
                if (stored == reductions.end()) {
                    combination.push_back(owner->second);
                    push_column(heap, owner->second);
                } else {
                    for (std::size_t e : stored->second) {
                        combination.push_back(e);
                        push_column(heap, e);
                    }
                }
                heap.push(*pivot);
                pivot = pop_pivot(heap);
            }
            if (pivot) {
                pivot_owner.emplace(pivot->key, col);
                paired[col] = pivot;
                reductions.emplace(col, cancel_pairs(std::move(combination)));
            }
        }
        return paired;
    }

private:
    using Heap = std::priority_queue<Cofacet, std::vector<Cofacet>, CofacetGreater>;

    void push_column(Heap& heap, std::size_t edge) const
    {
        for_each_cofacet(edge, [&](const Cofacet& c) { heap.push(c); });
    }

    // Smallest entry with odd multiplicity, removed from the heap.
    static std::optional<Cofacet> pop_pivot(Heap& heap)
    {
        while (!heap.empty()) {
            Cofacet top = heap.top();
            heap.pop();
            if (!heap.empty() && heap.top() == top) {
                heap.pop();
                continue;
            }
            return top;
        }
        return std::nullopt;
    }

    static std::vector<std::size_t> cancel_pairs(std::vector<std::size_t> items)
    {
        std::sort(items.begin(), items.end());
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < items.size();) {
            std::size_t run = k;
            while (run < items.size() && items[run] == items[k]) {
                ++run;
            }
            if ((run - k) % 2 == 1) {
                out.push_back(items[k]);
            }
            k = run;
        }
        return out;
    }

    const DistanceMatrix& d_;
    const std::vector<SortedEdge>& edges_;
    std::uint64_t m_;
    double max_radius_;
};

} // namespace

Diagrams rips_persistence(const DistanceMatrix& d, int max_dim, double max_radius)
{
    if (max_dim < 0 || max_dim > max_supported_dim) {
        throw Error(Errc::DimensionTooLarge,
                    "max_dim must be in [0, " + std::to_string(max_supported_dim) + "], got " + std::to_string(max_dim));
    }
    if (!(max_radius > 0.0)) {
        throw Error(Errc::InvalidArgument, "max_radius must be positive or unbounded");
    }
    if (max_dim > 1) {
        return compute_persistence(build_filtration(d, max_dim, max_radius), max_dim);
    }

    const std::size_t m = d.size();
    const auto edges = sorted_edges(d, max_radius);
    Diagrams diagrams(static_cast<std::size_t>(max_dim) + 1);
    for (int dim = 0; dim <= max_dim; ++dim) {
        diagrams[static_cast<std::size_t>(dim)].dim = dim;
    }

    std::vector<bool> negative(edges.size(), false);
    ElderUnionFind components(m);
    auto& h0 = diagrams[0].pairs;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Vertex ri = components.find(edges[k].i);
        const Vertex rj = components.find(edges[k].j);
        if (ri == rj) {
            continue;
        }
        const Vertex elder = std::min(ri, rj);
        const Vertex younger = std::max(ri, rj);
        components.link(elder, younger);
        negative[k] = true;
        h0.push_back(PersistencePair{0, 0.0, edges[k].len, Simplex{{younger}}, Simplex{{edges[k].i, edges[k].j}}});
    }
    for (std::size_t v = 0; v < m; ++v) {
        if (components.find(static_cast<Vertex>(v)) == v) {
            h0.push_back(PersistencePair{0, 0.0, unbounded, Simplex{{static_cast<Vertex>(v)}}, std::nullopt});
        }
    }

    if (max_dim == 1) {
        CoboundaryReducer reducer(d, edges, max_radius);
        const auto paired = reducer.reduce(negative);
        auto& h1 = diagrams[1].pairs;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (negative[k]) {
                continue;
            }
            PersistencePair pair{1, edges[k].len, unbounded, Simplex{{edges[k].i, edges[k].j}}, std::nullopt};
            if (paired[k]) {
                pair.death = paired[k]->diam;
                pair.death_simplex = reducer.unpack(paired[k]->key);
            }
            h1.push_back(std::move(pair));
        }
    }
    canonicalize(diagrams);
    return diagrams;
}

PersistenceDiagram h0_mst_oracle(const PointCloud& cloud)
{
    const std::size_t m = cloud.size();
    const auto d = pairwise_distances(cloud);
    PersistenceDiagram diagram;
    diagram.dim = 0;

    std::vector<bool> in_tree(m, false);
    std::vector<double> best(m, unbounded);
    std::vector<Vertex> via(m, 0);
    best[0] = 0.0;
    for (std::size_t round = 0; round < m; ++round) {
        std::size_t next = m;
        for (std::size_t v = 0; v < m; ++v) {
            if (!in_tree[v] && (next == m || best[v] < best[next])) {
                next = v;
            }
        }
        in_tree[next] = true;
        if (round > 0) {
            const Vertex a = std::min(via[next], static_cast<Vertex>(next));
            const Vertex b = std::max(via[next], static_cast<Vertex>(next));
            diagram.pairs.push_back(
                PersistencePair{0, 0.0, best[next], Simplex{{static_cast<Vertex>(next)}}, Simplex{{a, b}}});
        }
        for (std::size_t v = 0; v < m; ++v) {
            if (!in_tree[v] && d(next, v) < best[v]) {
                best[v] = d(next, v);
                via[v] = static_cast<Vertex>(next);
            }
        }
    }
    diagram.pairs.push_back(PersistencePair{0, 0.0, unbounded, Simplex{{0}}, std::nullopt});
    std::sort(diagram.pairs.begin(), diagram.pairs.end(), pair_less);
    return diagram;
}

} // namespace topogroup
