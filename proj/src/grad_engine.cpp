#include "topogroup/grad_engine.hpp"

#include "topogroup/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace topogroup {

namespace {

const PersistenceDiagram& target_diagram(const Diagrams& diagrams, const LossSpec& spec)
{
    for (const auto& diagram : diagrams) {
        if (diagram.dim == spec.target_dim) {
            return diagram;
        }
    }
    throw Error(Errc::DimensionMismatch, "no H" + std::to_string(spec.target_dim) + " diagram was computed");
}

// Adds coef * (x_i - x_j) / |x_i - x_j| to point i and the negation to j.
bool push_edge(const PointCloud& cloud, Edge edge, double coef, PointGradient& grad, DegeneratePolicy policy)
{
    auto xi = cloud.point(edge.i);
    auto xj = cloud.point(edge.j);
    const double len = euclidean(xi, xj);
    if (len < degenerate_distance) {
        if (policy == DegeneratePolicy::Skip) {
            return false;
        }
        throw Error(Errc::DegenerateEdge, "critical edge (" + std::to_string(edge.i) + ", " + std::to_string(edge.j) +
                                              ") has zero length");
    }
    auto gi = grad.point(edge.i);
    auto gj = grad.point(edge.j);
    for (std::size_t k = 0; k < cloud.dim(); ++k) {
        const double g = coef * (xi[k] - xj[k]) / len;
        gi[k] += g;
        gj[k] -= g;
    }
    return true;
}

struct TopoPass {
    double rho = 0.0;
    std::vector<PairContribution> pairs;
    std::size_t skipped = 0;
};

TopoPass topo_pass(const PointCloud& cloud, const DistanceMatrix& d, const PersistenceDiagram& diagram,
                   const LossSpec& spec, PointGradient& grad, DegeneratePolicy policy)
{
    TopoPass pass;
    pass.rho = eval_loss(spec, diagram);
    const auto derivatives = loss_pair_derivatives(spec, diagram);
    std::size_t next = 0;
    for (std::size_t k = 0; k < diagram.pairs.size(); ++k) {
        const auto& pair = diagram.pairs[k];
        if (pair.zero_persistence()) {
            continue;
        }
        PairContribution c;
        c.pair = pair;
        if (pair.birth_simplex.dim() >= 1) {
            c.birth_edge = max_edge(pair.birth_simplex, d);
        }
        if (pair.death_simplex) {
            c.death_edge = max_edge(*pair.death_simplex, d);
        }
        if (next < derivatives.size() && derivatives[next].pair_index == k) {
            c.included = true;
            c.d_birth = derivatives[next].d_birth;
            c.d_death = derivatives[next].d_death;
            ++next;
            if (c.birth_edge && !push_edge(cloud, *c.birth_edge, c.d_birth, grad, policy)) {
                ++pass.skipped;
            }
            if (c.death_edge && !push_edge(cloud, *c.death_edge, c.d_death, grad, policy)) {
                ++pass.skipped;
            }
        }
        pass.pairs.push_back(std::move(c));
    }
    return pass;
}

std::vector<std::vector<std::uint32_t>> signature_of(const std::vector<PairContribution>& pairs)
{
    std::vector<std::vector<std::uint32_t>> sig;
    constexpr std::uint32_t absent = 0xffffffffu;
    for (const auto& c : pairs) {
        if (!c.included) {
            continue;
        }
        std::vector<std::uint32_t> row{static_cast<std::uint32_t>(c.pair.dim)};
        row.push_back(static_cast<std::uint32_t>(c.pair.birth_simplex.vertices.size()));
        row.insert(row.end(), c.pair.birth_simplex.vertices.begin(), c.pair.birth_simplex.vertices.end());
        if (c.pair.death_simplex) {
            row.push_back(static_cast<std::uint32_t>(c.pair.death_simplex->vertices.size()));
            row.insert(row.end(), c.pair.death_simplex->vertices.begin(), c.pair.death_simplex->vertices.end());
        } else {
            row.push_back(0);
        }
        row.push_back(c.birth_edge ? c.birth_edge->i : absent);
        row.push_back(c.birth_edge ? c.birth_edge->j : absent);
        row.push_back(c.death_edge ? c.death_edge->i : absent);
        row.push_back(c.death_edge ? c.death_edge->j : absent);
        sig.push_back(std::move(row));
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

Diagrams diagrams_for(const DistanceMatrix& d, const EvalConfig& config)
{
    return rips_persistence(d, config.loss.target_dim, config.cap.resolve(d));
}

} // namespace

PointGradient topo_gradient(const PointCloud& cloud, const Diagrams& diagrams, const LossSpec& spec,
                            DegeneratePolicy policy, std::size_t* skipped)
{
    PointGradient grad(cloud.size(), cloud.dim());
    const auto d = pairwise_distances(cloud);
    const auto pass = topo_pass(cloud, d, target_diagram(diagrams, spec), spec, grad, policy);
    if (skipped) {
        *skipped = pass.skipped;
    }
    return grad;
}

Evaluation total_loss_and_grad(const PointCloud& cloud, const EvalConfig& config, const RegularizerWeights& weights,
                               DegeneratePolicy policy)
{
    if (!(config.lambda >= 0.0)) {
        throw Error(Errc::InvalidArgument, "lambda must be >= 0");
    }
    const auto d = pairwise_distances(cloud);
    const auto diagrams = diagrams_for(d, config);

    Evaluation out;
    out.gradient = PointGradient(cloud.size(), cloud.dim());
    auto pass = topo_pass(cloud, d, target_diagram(diagrams, config.loss), config.loss, out.gradient, policy);

    auto& report = out.report;
    report.rho = pass.rho;
    report.tau = tau(cloud, weights);
    report.lambda = config.lambda;
    report.total = report.rho + config.lambda * report.tau;
    report.pairs = std::move(pass.pairs);
    report.skipped_edges = pass.skipped;

    if (config.lambda != 0.0) {
        const auto reg = tau_gradient(cloud, weights);
        for (std::size_t k = 0; k < reg.values.size(); ++k) {
            out.gradient.values[k] += config.lambda * reg.values[k];
        }
    }
    return out;
}

LossProbe probe_loss(const PointCloud& cloud, const EvalConfig& config, const RegularizerWeights& weights)
{
    const auto d = pairwise_distances(cloud);
    const auto diagrams = diagrams_for(d, config);
    PointGradient scratch(cloud.size(), cloud.dim());
    const auto pass =
        topo_pass(cloud, d, target_diagram(diagrams, config.loss), config.loss, scratch, DegeneratePolicy::Skip);
    return {pass.rho + config.lambda * tau(cloud, weights), signature_of(pass.pairs)};
}

std::size_t FiniteDifferenceReport::unstable_count() const
{
    return static_cast<std::size_t>(
        std::count_if(coordinates.begin(), coordinates.end(), [](const CoordinateCheck& c) { return c.unstable; }));
}

double gradient_rel_error(double analytic, double numeric)
{
    return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1.0});
}

namespace {

template <typename Probe>
FiniteDifferenceReport central_differences(const PointCloud& cloud, const PointGradient& analytic, double h,
                                           Probe&& probe)
{
    if (!(h > 0.0)) {
        throw Error(Errc::InvalidArgument, "finite-difference step must be positive");
    }
    FiniteDifferenceReport report;
    const auto base = probe(cloud);
    PointCloud shifted = cloud;
    std::vector<double> coords(cloud.current().begin(), cloud.current().end());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (std::size_t k = 0; k < cloud.dim(); ++k) {
            const std::size_t idx = i * cloud.dim() + k;
            const double original = coords[idx];
            coords[idx] = original + h;
            shifted.assign_current(coords);
            const auto plus = probe(shifted);
            coords[idx] = original - h;
            shifted.assign_current(coords);
            const auto minus = probe(shifted);
            coords[idx] = original;

            CoordinateCheck c;
            c.point = i;
            c.axis = k;
            c.analytic = analytic.values[idx];
            c.numeric = (plus.total - minus.total) / (2.0 * h);
            c.rel_error = gradient_rel_error(c.analytic, c.numeric);
            c.unstable = plus.signature != base.signature || minus.signature != base.signature;
            if (!c.unstable) {
                report.max_rel_error = std::max(report.max_rel_error, c.rel_error);
            }
            report.coordinates.push_back(c);
        }
    }
    return report;
}

} // namespace

FiniteDifferenceReport finite_difference_check(const PointCloud& cloud, const EvalConfig& config, double h)
{
    const auto weights = build_weights(cloud, config.kernel);
    const auto analytic = total_loss_and_grad(cloud, config, weights).gradient;
    return central_differences(cloud, analytic, h,
                               [&](const PointCloud& c) { return probe_loss(c, config, weights); });
}

FiniteDifferenceReport tau_finite_difference_check(const PointCloud& cloud, const KernelSpec& kernel, double h)
{
    const auto weights = build_weights(cloud, kernel);
    const auto analytic = tau_gradient(cloud, weights);
    return central_differences(cloud, analytic, h, [&](const PointCloud& c) {
        return LossProbe{tau(c, weights), {}};
    });
}

} // namespace topogroup
