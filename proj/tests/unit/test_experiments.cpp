#include "topogroup/error.hpp"
#include "topogroup/experiments.hpp"
#include "topogroup/persistence.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace topogroup;

TEST_CASE("two clusters, default geometry")
{
    const auto data = gen_two_clusters(DatasetSpec::two_clusters(100, 42));
    REQUIRE(data.cloud.size() == 100);
    CHECK(std::count(data.labels.ids.begin(), data.labels.ids.end(), 0) == 50);
    CHECK(std::count(data.labels.ids.begin(), data.labels.ids.end(), 1) == 50);
    const auto d = pairwise_distances(data.cloud);
    double widest = 0.0;
    double gap = unbounded;
    for (std::size_t i = 0; i < 100; ++i) {
        for (std::size_t j = i + 1; j < 100; ++j) {
            if (data.labels.ids[i] == data.labels.ids[j]) {
                widest = std::max(widest, d(i, j));
            } else {
                gap = std::min(gap, d(i, j));
            }
        }
    }
    CHECK(widest < 1.0);
    CHECK(gap > 0.10);

    // the H0 loss has something to act on: the cluster merge
    const auto dg = rips_persistence(d, 0);
    double longest = 0.0;
    for (const auto& p : dg[0].pairs) {
        if (!p.essential()) {
            longest = std::max(longest, p.death);
        }
    }
    CHECK(longest == doctest::Approx(gap).epsilon(1e-15));
}

TEST_CASE("two clusters, minimal and deterministic")
{
    const auto two = gen_two_clusters(DatasetSpec::two_clusters(2, 1));
    CHECK(two.cloud.size() == 2);
    CHECK(two.labels.ids == std::vector<int>{0, 1});

    const auto a = gen_two_clusters(DatasetSpec::two_clusters(100, 42));
    const auto b = gen_two_clusters(DatasetSpec::two_clusters(100, 42));
    CHECK(std::equal(a.cloud.current().begin(), a.cloud.current().end(), b.cloud.current().begin()));
    const auto c = gen_two_clusters(DatasetSpec::two_clusters(100, 43));
    CHECK_FALSE(std::equal(a.cloud.current().begin(), a.cloud.current().end(), c.cloud.current().begin()));
}

TEST_CASE("two clusters, invalid geometry")
{
    auto wide = DatasetSpec::two_clusters();
    wide.clusters.cluster_radius = 0.6;
    wide.clusters.center_separation = 3.0;
    try {
        gen_two_clusters(wide);
        FAIL("expected InvalidGeometry");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidGeometry);
    }
    auto touching = DatasetSpec::two_clusters();
    touching.clusters.center_separation = 0.5;
    CHECK_THROWS_AS(gen_two_clusters(touching), Error);
    CHECK_THROWS_AS(gen_two_clusters(DatasetSpec::two_clusters(7, 1)), Error);
}

TEST_CASE("horseshoe, default geometry")
{
    const auto data = gen_horseshoe(DatasetSpec::horseshoe_arc(300, 7));
    REQUIRE(data.cloud.size() == 300);
    const auto d = pairwise_distances(data.cloud);
    const auto dg = rips_persistence(d, 1, enclosing_radius(d));
    double longest = 0.0;
    for (const auto& p : dg[1].pairs) {
        CHECK_FALSE(p.essential());
        longest = std::max(longest, persistence_of(p));
    }
    CHECK(longest > 0.25);
    for (int g = 0; g < 3; ++g) {
        CHECK(std::count(data.labels.ids.begin(), data.labels.ids.end(), g) > 0);
    }

    const auto again = gen_horseshoe(DatasetSpec::horseshoe_arc(300, 7));
    CHECK(std::equal(data.cloud.current().begin(), data.cloud.current().end(), again.cloud.current().begin()));
}

TEST_CASE("horseshoe parameter edges")
{
    auto full = DatasetSpec::horseshoe_arc(120, 3);
    full.horseshoe.opening_angle = 0.0;
    CHECK(gen_horseshoe(full).cloud.size() == 120);

    auto tiny = DatasetSpec::horseshoe_arc(120, 3);
    tiny.horseshoe.radius = 0.1;
    try {
        gen_horseshoe(tiny);
        FAIL("expected InvalidGeometry");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidGeometry);
    }
    auto bad = DatasetSpec::horseshoe_arc();
    bad.horseshoe.opening_angle = 7.0;
    CHECK_THROWS_AS(gen_horseshoe(bad), Error);
}

TEST_CASE("distortion")
{
    const auto data = gen_two_clusters(DatasetSpec::two_clusters(40, 5));
    CHECK(distortion(data.cloud, data.labels) == 0.0);

    // translate cluster 1 bodily
    auto cloud = data.cloud;
    std::vector<double> coords(cloud.current().begin(), cloud.current().end());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (data.labels.ids[i] == 1) {
            coords[2 * i] -= 0.3;
            coords[2 * i + 1] += 0.7;
        }
    }
    cloud.assign_current(coords);
    CHECK(distortion(cloud, data.labels) < 1e-12);

    // rotate cluster 0 about the origin
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (data.labels.ids[i] == 0) {
            const double x = coords[2 * i];
            const double y = coords[2 * i + 1];
            coords[2 * i] = std::cos(1.1) * x - std::sin(1.1) * y;
            coords[2 * i + 1] = std::sin(1.1) * x + std::cos(1.1) * y;
        }
    }
    cloud.assign_current(coords);
    CHECK(distortion(cloud, data.labels) < 1e-12);

    // scale cluster 0 about its centroid by 2
    double cx = 0.0;
    double cy = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (data.labels.ids[i] == 0) {
            cx += coords[2 * i] / 20.0;
            cy += coords[2 * i + 1] / 20.0;
        }
    }
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (data.labels.ids[i] == 0) {
            coords[2 * i] = cx + 2.0 * (coords[2 * i] - cx);
            coords[2 * i + 1] = cy + 2.0 * (coords[2 * i + 1] - cy);
        }
    }
    cloud.assign_current(coords);
    CHECK(distortion(cloud, data.labels) > 1e-3);
    const int only_b[] = {1};
    CHECK(distortion(cloud, data.labels, only_b) < 1e-12);
}

TEST_CASE("random helpers")
{
    const auto a = random_cloud(10, 3, 9);
    CHECK(a.size() == 10);
    CHECK(a.dim() == 3);
    const auto p = perturbed(a, 0.1, 1);
    CHECK(std::equal(p.initial().begin(), p.initial().end(), a.initial().begin()));
    CHECK_FALSE(std::equal(p.current().begin(), p.current().end(), a.current().begin()));
}
