#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace topogroup {

// m points in R^n. `initial` is frozen at construction; index i of `initial`
// and index i of `current` always refer to the same point.
class PointCloud {
public:
    // Throws EmptyInput, RaggedDimensions or NonFiniteCoordinate.
    explicit PointCloud(const std::vector<std::vector<double>>& points);
    PointCloud(std::size_t size, std::size_t dim, std::vector<double> row_major);

    std::size_t size() const noexcept { return size_; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const double> point(std::size_t i) const { return {current_.data() + i * dim_, dim_}; }
    std::span<const double> initial_point(std::size_t i) const
    {
        return {initial_.data() + i * dim_, dim_};
    }

    std::span<const double> current() const noexcept { return current_; }
    std::span<const double> initial() const noexcept { return initial_; }

    // Replaces the current coordinates. The initial copy is untouched.
    void assign_current(std::span<const double> row_major);

    std::vector<std::vector<double>> current_rows() const;

private:
    std::size_t size_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> current_;
    std::vector<double> initial_;
};

PointCloud new_cloud(const std::vector<std::vector<double>>& points);

// Dense symmetric matrix of Euclidean distances.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t size) : size_(size), d_(size * size, 0.0) {}

    std::size_t size() const noexcept { return size_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * size_ + j]; }
    double& at(std::size_t i, std::size_t j) { return d_[i * size_ + j]; }
    const double* row(std::size_t i) const { return d_.data() + i * size_; }

private:
    std::size_t size_ = 0;
    std::vector<double> d_;
};

enum class Which { Current, Initial };

double euclidean(std::span<const double> a, std::span<const double> b);

DistanceMatrix pairwise_distances(const PointCloud& cloud, Which which = Which::Current);

// min over points of the largest distance to any other point; the Rips
// complex at this radius is a cone.
double enclosing_radius(const DistanceMatrix& d);

} // namespace topogroup
