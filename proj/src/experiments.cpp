#include "topogroup/experiments.hpp"

#include "topogroup/error.hpp"
#include "topogroup/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace topogroup {

DatasetSpec DatasetSpec::two_clusters(std::size_t n, std::uint64_t seed)
{
    DatasetSpec spec;
    spec.shape = Shape::TwoClusters;
    spec.n = n;
    spec.seed = seed;
    return spec;
}

DatasetSpec DatasetSpec::horseshoe_arc(std::size_t n, std::uint64_t seed)
{
    DatasetSpec spec;
    spec.shape = Shape::Horseshoe;
    spec.n = n;
    spec.seed = seed;
    return spec;
}

namespace {

void require(bool ok, Errc code, const std::string& message)
{
    if (!ok) {
        throw Error(code, message);
    }
}

} // namespace

Dataset gen_two_clusters(const DatasetSpec& spec)
{
    const auto& g = spec.clusters;
    require(spec.n >= 2 && spec.n % 2 == 0, Errc::InvalidArgument, "two-cluster datasets need an even n >= 2");
    require(g.cluster_radius > 0.0 && g.center_separation > 0.0, Errc::InvalidGeometry,
            "cluster radius and separation must be positive");

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t half = spec.n / 2;
    std::vector<double> coords;
    coords.reserve(spec.n * 2);
    GroupLabels labels{{}, {"cluster_a", "cluster_b"}};
    for (int cluster = 0; cluster < 2; ++cluster) {
        const double cx = (cluster == 0 ? -0.5 : 0.5) * g.center_separation;
        for (std::size_t k = 0; k < half; ++k) {
            const double r = g.cluster_radius * std::sqrt(unit(rng));
            const double theta = 2.0 * std::numbers::pi * unit(rng);
            coords.push_back(cx + r * std::cos(theta));
            coords.push_back(r * std::sin(theta));
            labels.ids.push_back(cluster);
        }
    }
    PointCloud cloud(spec.n, 2, std::move(coords));

    const auto d = pairwise_distances(cloud);
    double widest = 0.0;
    double gap = unbounded;
    for (std::size_t i = 0; i < spec.n; ++i) {
        for (std::size_t j = i + 1; j < spec.n; ++j) {
            if (labels.ids[i] == labels.ids[j]) {
                widest = std::max(widest, d(i, j));
            } else {
                gap = std::min(gap, d(i, j));
            }
        }
    }
    require(widest < g.max_cluster_diameter, Errc::InvalidGeometry,
            "cluster diameter " + std::to_string(widest) + " is not below " + std::to_string(g.max_cluster_diameter));
    require(gap > g.min_gap, Errc::InvalidGeometry,
            "inter-cluster gap " + std::to_string(gap) + " is not above " + std::to_string(g.min_gap));
    return {std::move(cloud), std::move(labels)};
}

Dataset gen_horseshoe(const DatasetSpec& spec)
{
    const auto& g = spec.horseshoe;
    require(spec.n >= 2, Errc::InvalidArgument, "horseshoe datasets need n >= 2");
    require(g.radius > 0.0 && g.thickness >= 0.0, Errc::InvalidGeometry, "radius must be positive, thickness >= 0");
    require(g.opening_angle >= 0.0 && g.opening_angle < 2.0 * std::numbers::pi, Errc::InvalidGeometry,
            "opening angle must lie in [0, 2pi)");
    require(g.arm_fraction > 0.0 && g.arm_fraction < 0.5, Errc::InvalidGeometry, "arm fraction must lie in (0, 0.5)");

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double start = 0.5 * g.opening_angle;
    const double span = 2.0 * std::numbers::pi - g.opening_angle;
    std::vector<double> coords;
    coords.reserve(spec.n * 2);
    GroupLabels labels{{}, {"arm_a", "body", "arm_b"}};
    for (std::size_t k = 0; k < spec.n; ++k) {
        const double u = unit(rng);
        const double theta = start + u * span;
        const double r = g.radius + g.thickness * (unit(rng) - 0.5);
        coords.push_back(r * std::cos(theta));
        coords.push_back(r * std::sin(theta));
        labels.ids.push_back(u < g.arm_fraction ? 0 : (u > 1.0 - g.arm_fraction ? 2 : 1));
    }
    PointCloud cloud(spec.n, 2, std::move(coords));

    const auto d = pairwise_distances(cloud);
    const auto diagrams = rips_persistence(d, 1, enclosing_radius(d));
    double longest = 0.0;
    for (const auto& p : diagrams[1].pairs) {
        longest = std::max(longest, persistence_of(p));
    }
    require(longest > g.min_h1_persistence, Errc::InvalidGeometry,
            "largest H1 persistence " + std::to_string(longest) + " does not exceed " +
                std::to_string(g.min_h1_persistence) + "; widen the radius or narrow the opening and regenerate");
    return {std::move(cloud), std::move(labels)};
}

Dataset generate(const DatasetSpec& spec)
{
    return spec.shape == Shape::TwoClusters ? gen_two_clusters(spec) : gen_horseshoe(spec);
}

double distortion(const PointCloud& cloud, const GroupLabels& labels, std::span<const int> groups)
{
    require(labels.ids.size() == cloud.size(), Errc::InvalidArgument, "labels must cover every point");
    auto selected = [&](int id) {
        return groups.empty() || std::find(groups.begin(), groups.end(), id) != groups.end();
    };
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (!selected(labels.ids[i])) {
            continue;
        }
        for (std::size_t j = i + 1; j < cloud.size(); ++j) {
            if (labels.ids[j] != labels.ids[i]) {
                continue;
            }
            const double diff = euclidean(cloud.initial_point(i), cloud.initial_point(j)) -
                                euclidean(cloud.point(i), cloud.point(j));
            sum += diff * diff;
            ++count;
        }
    }
    return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
}

PointCloud random_cloud(std::size_t m, std::size_t dim, std::uint64_t seed, double extent)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, extent);
    std::vector<double> coords(m * dim);
    for (double& c : coords) {
        c = unit(rng);
    }
    return PointCloud(m, dim, std::move(coords));
}

PointCloud perturbed(const PointCloud& cloud, double sigma, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    PointCloud out(cloud.size(), cloud.dim(), std::vector<double>(cloud.initial().begin(), cloud.initial().end()));
    std::vector<double> coords(cloud.current().begin(), cloud.current().end());
    for (double& c : coords) {
        c += noise(rng);
    }
    out.assign_current(coords);
    return out;
}

} // namespace topogroup
