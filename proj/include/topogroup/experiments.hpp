#pragma once

#include "topogroup/point_cloud.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace topogroup {

enum class Shape { TwoClusters, Horseshoe };

struct TwoClusterGeometry {
    double center_separation = 1.6;
    double cluster_radius = 0.25;
    double max_cluster_diameter = 1.0; // each cluster must fit inside one kernel neighbourhood
    double min_gap = 0.10;             // clusters must stay apart by more than the rho0 floor
};

struct HorseshoeGeometry {
    double radius = 1.0;
    double thickness = 0.1;
    double opening_angle = 1.2; // radians, centred on the +x axis; gap chord exceeds the default kernel scale
    double arm_fraction = 0.25; // share of the arc, at each end, labelled as an arm
    double min_h1_persistence = 0.25;
};

struct DatasetSpec {
    Shape shape = Shape::TwoClusters;
    std::size_t n = 100;
    std::uint64_t seed = 42;
    TwoClusterGeometry clusters{};
    HorseshoeGeometry horseshoe{};

    static DatasetSpec two_clusters(std::size_t n = 100, std::uint64_t seed = 42);
    static DatasetSpec horseshoe_arc(std::size_t n = 300, std::uint64_t seed = 7);
};

struct GroupLabels {
    std::vector<int> ids;           // one per point
    std::vector<std::string> names; // indexed by id
};

struct Dataset {
    PointCloud cloud;
    GroupLabels labels;
};

// Two uniform disks centred at (+-separation/2, 0), n/2 points each.
// Throws InvalidGeometry when a cluster is too wide or the gap too small.
Dataset gen_two_clusters(const DatasetSpec& spec);

// Points on an annular arc with an angular opening. Labels: arm_a (start of
// the arc), body, arm_b (end). Throws InvalidGeometry when no H1 class
// outlives the configured floor.
Dataset gen_horseshoe(const DatasetSpec& spec);

Dataset generate(const DatasetSpec& spec);

// RMS of (initial - current) distance over pairs sharing a label. When
// `groups` is non-empty only those labels are measured.
double distortion(const PointCloud& cloud, const GroupLabels& labels, std::span<const int> groups = {});

// Uniform points in [0, extent)^dim.
PointCloud random_cloud(std::size_t m, std::size_t dim, std::uint64_t seed, double extent = 1.0);

// Same initial coordinates; current coordinates moved by N(0, sigma^2) noise.
PointCloud perturbed(const PointCloud& cloud, double sigma, std::uint64_t seed);

} // namespace topogroup
