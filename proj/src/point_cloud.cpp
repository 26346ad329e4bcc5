#include "topogroup/point_cloud.hpp"

#include "topogroup/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace topogroup {

namespace {

void require_finite(std::span<const double> values)
{
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) {
            throw Error(Errc::NonFiniteCoordinate, "coordinate " + std::to_string(k) + " is not finite");
        }
    }
}

} // namespace

PointCloud::PointCloud(const std::vector<std::vector<double>>& points)
{
    if (points.empty() || points.front().empty()) {
        throw Error(Errc::EmptyInput, "point cloud needs at least one point of dimension >= 1");
    }
    size_ = points.size();
    dim_ = points.front().size();
    current_.reserve(size_ * dim_);
    for (std::size_t i = 0; i < size_; ++i) {
        if (points[i].size() != dim_) {
            throw Error(Errc::RaggedDimensions, "row " + std::to_string(i) + " has dimension " +
                                                    std::to_string(points[i].size()) + ", expected " +
                                                    std::to_string(dim_));
        }
        current_.insert(current_.end(), points[i].begin(), points[i].end());
    }
    require_finite(current_);
    initial_ = current_;
}

PointCloud::PointCloud(std::size_t size, std::size_t dim, std::vector<double> row_major)
    : size_(size), dim_(dim), current_(std::move(row_major))
{
    if (size_ == 0 || dim_ == 0) {
        throw Error(Errc::EmptyInput, "point cloud needs at least one point of dimension >= 1");
    }
    if (current_.size() != size_ * dim_) {
        throw Error(Errc::RaggedDimensions, "coordinate buffer does not match size x dim");
    }
    require_finite(current_);
    initial_ = current_;
}

void PointCloud::assign_current(std::span<const double> row_major)
{
    if (row_major.size() != current_.size()) {
        throw Error(Errc::RaggedDimensions, "coordinate buffer does not match cloud shape");
    }
    require_finite(row_major);
    std::copy(row_major.begin(), row_major.end(), current_.begin());
}

std::vector<std::vector<double>> PointCloud::current_rows() const
{
    std::vector<std::vector<double>> rows(size_);
    for (std::size_t i = 0; i < size_; ++i) {
        auto p = point(i);
        rows[i].assign(p.begin(), p.end());
    }
    return rows;
}

PointCloud new_cloud(const std::vector<std::vector<double>>& points) { return PointCloud(points); }

double euclidean(std::span<const double> a, std::span<const double> b)
{
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

DistanceMatrix pairwise_distances(const PointCloud& cloud, Which which)
{
    const std::size_t m = cloud.size();
    DistanceMatrix d(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto pi = which == Which::Current ? cloud.point(i) : cloud.initial_point(i);
        for (std::size_t j = i + 1; j < m; ++j) {
            auto pj = which == Which::Current ? cloud.point(j) : cloud.initial_point(j);
            const double dist = euclidean(pi, pj);
            d.at(i, j) = dist;
            d.at(j, i) = dist;
        }
    }
    return d;
}

double enclosing_radius(const DistanceMatrix& d)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double* row = d.row(i);
        best = std::min(best, *std::max_element(row, row + d.size()));
    }
    return d.size() == 0 ? 0.0 : best;
}

} // namespace topogroup
