#pragma once

#include "topogroup/gradient.hpp"
#include "topogroup/point_cloud.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace topogroup {

enum class KernelFamily { Uniform, Gaussian };

struct KernelSpec {
    KernelFamily family = KernelFamily::Uniform;
    double scale = 1.0;
};

std::optional<KernelFamily> kernel_family_from_name(std::string_view name);
std::string_view kernel_family_name(KernelFamily family);

// Uniform: 1 for x <= s, else 0. Gaussian: exp(-x^2 / (2 s^2)).
double kernel_eval(const KernelSpec& spec, double x);

// Gaussian weights below this are not stored.
inline constexpr double gaussian_weight_cutoff = 1e-12;

struct WeightedPair {
    std::size_t i = 0;
    std::size_t j = 0;
    double weight = 0.0;
    double initial_distance = 0.0;
};

// Kernel weights over the initial configuration, frozen for a whole run.
struct RegularizerWeights {
    std::size_t cloud_size = 0;
    std::vector<WeightedPair> pairs;
};

RegularizerWeights build_weights(const PointCloud& cloud, const KernelSpec& spec);

// Grouping term: sum over weighted pairs of w * (d0 - d)^2, with d taken on
// the current coordinates.
double tau(const PointCloud& cloud, const RegularizerWeights& weights);

inline constexpr double degenerate_distance = 1e-12;

// Exact gradient of tau. Throws DegeneratePair if a weighted pair has
// collapsed to a single location.
PointGradient tau_gradient(const PointCloud& cloud, const RegularizerWeights& weights);

} // namespace topogroup
