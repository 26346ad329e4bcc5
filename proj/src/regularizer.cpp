#include "topogroup/regularizer.hpp"

#include "topogroup/error.hpp"

#include <cmath>
#include <string>

namespace topogroup {

std::size_t PointGradient::nonzero_points() const
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < size; ++i) {
        for (double g : point(i)) {
            if (g != 0.0) {
                ++count;
                break;
            }
        }
    }
    return count;
}

std::optional<KernelFamily> kernel_family_from_name(std::string_view name)
{
    if (name == "uniform") {
        return KernelFamily::Uniform;
    }
    if (name == "gaussian") {
        return KernelFamily::Gaussian;
    }
    return std::nullopt;
}

std::string_view kernel_family_name(KernelFamily family)
{
    return family == KernelFamily::Uniform ? "uniform" : "gaussian";
}

double kernel_eval(const KernelSpec& spec, double x)
{
    if (!(spec.scale > 0.0)) {
        throw Error(Errc::InvalidArgument, "kernel scale must be positive");
    }
    if (x < 0.0) {
        throw Error(Errc::NegativeInput, "kernel argument must be non-negative");
    }
    switch (spec.family) {
    case KernelFamily::Uniform: return x <= spec.scale ? 1.0 : 0.0;
    case KernelFamily::Gaussian: return std::exp(-(x * x) / (2.0 * spec.scale * spec.scale));
    }
    return 0.0;
}

RegularizerWeights build_weights(const PointCloud& cloud, const KernelSpec& spec)
{
    RegularizerWeights weights;
    weights.cloud_size = cloud.size();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (std::size_t j = i + 1; j < cloud.size(); ++j) {
            const double d0 = euclidean(cloud.initial_point(i), cloud.initial_point(j));
            const double w = kernel_eval(spec, d0);
            const bool keep = spec.family == KernelFamily::Uniform ? w > 0.0 : w >= gaussian_weight_cutoff;
            if (keep) {
                weights.pairs.push_back({i, j, w, d0});
            }
        }
    }
    return weights;
}

namespace {

void check_fresh(const PointCloud& cloud, const RegularizerWeights& weights)
{
    if (weights.cloud_size != cloud.size()) {
        throw Error(Errc::StaleWeights, "weights were built for " + std::to_string(weights.cloud_size) +
                                            " points, cloud has " + std::to_string(cloud.size()));
    }
}

} // namespace

double tau(const PointCloud& cloud, const RegularizerWeights& weights)
{
    check_fresh(cloud, weights);
    double total = 0.0;
    for (const auto& p : weights.pairs) {
        const double diff = p.initial_distance - euclidean(cloud.point(p.i), cloud.point(p.j));
        total += p.weight * diff * diff;
    }
    return total;
}

PointGradient tau_gradient(const PointCloud& cloud, const RegularizerWeights& weights)
{
    check_fresh(cloud, weights);
    PointGradient grad(cloud.size(), cloud.dim());
    for (const auto& p : weights.pairs) {
        auto xi = cloud.point(p.i);
        auto xj = cloud.point(p.j);
        const double d = euclidean(xi, xj);
        if (d < degenerate_distance) {
            throw Error(Errc::DegeneratePair, "weighted pair (" + std::to_string(p.i) + ", " + std::to_string(p.j) +
                                                  ") has collapsed; the norm has no gradient there");
        }
        const double coef = p.weight * 2.0 * (d - p.initial_distance) / d;
        auto gi = grad.point(p.i);
        auto gj = grad.point(p.j);
        for (std::size_t k = 0; k < cloud.dim(); ++k) {
            const double g = coef * (xi[k] - xj[k]);
            gi[k] += g;
            gj[k] -= g;
        }
    }
    return grad;
}

} // namespace topogroup
