#include "topogroup/error.hpp"
#include "topogroup/experiments.hpp"
#include "topogroup/grad_engine.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace topogroup;

namespace {

const LossSpec death_squared{0, 0.0, true};
const LossSpec selects_nothing{0, 1e9, true};

EvalConfig config(LossSpec loss, double lambda, double scale = 1.0)
{
    EvalConfig c;
    c.loss = loss;
    c.lambda = lambda;
    c.kernel = KernelSpec{KernelFamily::Uniform, scale};
    return c;
}

// Full-pipeline loss assembled directly from the public pieces.
double pipeline_loss(const PointCloud& cloud, const EvalConfig& c, const RegularizerWeights& w)
{
    const auto d = pairwise_distances(cloud);
    const auto dg = rips_persistence(d, c.loss.target_dim, c.cap.resolve(d));
    return eval_loss(c.loss, dg[static_cast<std::size_t>(c.loss.target_dim)]) + c.lambda * tau(cloud, w);
}

} // namespace

TEST_CASE("two-point gradient of death squared")
{
    const auto cloud = new_cloud({{0, 0}, {3, 4}});
    const auto dg = rips_persistence(pairwise_distances(cloud), 0);
    const auto g = topo_gradient(cloud, dg, death_squared);
    CHECK(g.point(0)[0] == doctest::Approx(-6.0).epsilon(1e-14));
    CHECK(g.point(0)[1] == doctest::Approx(-8.0).epsilon(1e-14));
    CHECK(g.point(1)[0] == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(g.point(1)[1] == doctest::Approx(8.0).epsilon(1e-14));

    CHECK(topo_gradient(cloud, dg, selects_nothing).nonzero_points() == 0);
}

TEST_CASE("unit square rho1 gradient touches the critical edges only")
{
    const auto cloud = new_cloud({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto d = pairwise_distances(cloud);
    const auto dg = rips_persistence(d, 1);
    const auto visible = dg[1].visible();
    REQUIRE(visible.size() == 1);
    const Edge b = max_edge(visible[0].birth_simplex, d);
    const Edge e = max_edge(*visible[0].death_simplex, d);
    const std::set<Vertex> touched{b.i, b.j, e.i, e.j};

    const auto g = topo_gradient(cloud, dg, LossSpec::rho1());
    for (std::size_t i = 0; i < 4; ++i) {
        const bool moved = g.point(i)[0] != 0.0 || g.point(i)[1] != 0.0;
        CHECK(moved == touched.contains(static_cast<Vertex>(i)));
    }
    CHECK(g.nonzero_points() <= 4);
}

TEST_CASE("degenerate critical edges")
{
    const auto cloud = new_cloud({{0, 0}, {0, 0}, {1, 0}});
    PersistenceDiagram dg{0, {{0, 0.0, 1.0, Simplex{{1}}, Simplex{{0, 1}}}}};
    try {
        topo_gradient(cloud, {dg}, LossSpec::rho0());
        FAIL("expected DegenerateEdge");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DegenerateEdge);
    }
    std::size_t skipped = 0;
    const auto g = topo_gradient(cloud, {dg}, LossSpec::rho0(), DegeneratePolicy::Skip, &skipped);
    CHECK(skipped == 1);
    CHECK(g.nonzero_points() == 0);
}

TEST_CASE("composite loss report")
{
    const auto base = random_cloud(15, 2, 5);
    const auto cloud = perturbed(base, 0.05, 6);
    const auto c = config(LossSpec::rho0(), 1.0);
    const auto w = build_weights(cloud, c.kernel);
    const auto ev = total_loss_and_grad(cloud, c, w);
    CHECK(ev.report.total == ev.report.rho + ev.report.lambda * ev.report.tau);
    CHECK(ev.report.tau == tau(cloud, w));
    CHECK(ev.report.total == doctest::Approx(pipeline_loss(cloud, c, w)).epsilon(1e-15));
    for (const auto& p : ev.report.pairs) {
        CHECK_FALSE(p.pair.zero_persistence());
        if (p.included) {
            CHECK(p.d_death == doctest::Approx(2 * (p.pair.death - p.pair.birth)));
            CHECK(p.death_edge.has_value());
        }
    }

    // lambda = 0 reduces to the topological gradient
    const auto c0 = config(LossSpec::rho0(), 0.0);
    const auto ev0 = total_loss_and_grad(cloud, c0, w);
    const auto topo = topo_gradient(cloud, rips_persistence(pairwise_distances(cloud), 0, enclosing_radius(pairwise_distances(cloud))),
                                    LossSpec::rho0());
    CHECK(ev0.gradient.values == topo.values);

    // unmoved cloud and a loss that selects nothing
    const auto still = total_loss_and_grad(base, config(selects_nothing, 1.0), build_weights(base, c.kernel));
    CHECK(still.report.total == 0.0);
    CHECK(still.gradient.nonzero_points() == 0);
}

TEST_CASE("full pipeline gradient matches finite differences")
{
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto cloud = perturbed(random_cloud(15, 2, 40 + seed), 0.05, 80 + seed);
        const auto c = config(LossSpec::rho0(), 1.0);
        const auto report = finite_difference_check(cloud, c, 1e-5);
        CHECK(report.max_rel_error < 1e-4);

        // independent assembly of the same differences for the stable coordinates
        const auto w = build_weights(cloud, c.kernel);
        std::vector<double> coords(cloud.current().begin(), cloud.current().end());
        PointCloud probe = cloud;
        for (const auto& coord : report.coordinates) {
            if (coord.unstable) {
                continue;
            }
            const std::size_t k = coord.point * 2 + coord.axis;
            const double x = coords[k];
            coords[k] = x + 1e-5;
            probe.assign_current(coords);
            const double up = pipeline_loss(probe, c, w);
            coords[k] = x - 1e-5;
            probe.assign_current(coords);
            const double down = pipeline_loss(probe, c, w);
            coords[k] = x;
            CHECK(gradient_rel_error(coord.analytic, (up - down) / 2e-5) < 1e-4);
            ++checked;
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("finite-difference harness")
{
    SUBCASE("two points")
    {
        const auto report = finite_difference_check(new_cloud({{0, 0}, {3, 4}}), config(death_squared, 1.0), 1e-6);
        CHECK(report.unstable_count() == 0);
        CHECK(report.max_rel_error < 1e-6);
        CHECK(report.coordinates.size() == 4);
    }
    SUBCASE("tied critical edges are flagged")
    {
        const double h = std::sqrt(3.0) / 2.0;
        // Equilateral up to rounding; two of the three edges enter the tree and
        // any perturbation can swap which ones.
        const auto cloud = new_cloud({{0, 0}, {1, 0}, {0.5, h}});
        const auto report = finite_difference_check(cloud, config(LossSpec::rho0(), 0.0), 1e-6);
        CHECK(report.unstable_count() >= 1);

        const auto square = new_cloud({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
        const auto r1 = finite_difference_check(square, config(LossSpec::rho1(), 0.0), 1e-6);
        CHECK(r1.unstable_count() >= 1);
    }
    SUBCASE("lambda-only configuration equals the regularizer check")
    {
        const auto cloud = perturbed(random_cloud(12, 2, 3), 0.1, 4);
        const auto a = finite_difference_check(cloud, config(selects_nothing, 1.0), 1e-6);
        const auto b = tau_finite_difference_check(cloud, KernelSpec{KernelFamily::Uniform, 1.0}, 1e-6);
        CHECK(a.max_rel_error == b.max_rel_error);
        CHECK(a.max_rel_error < 1e-6);
        REQUIRE(a.coordinates.size() == b.coordinates.size());
        for (std::size_t k = 0; k < a.coordinates.size(); ++k) {
            CHECK(a.coordinates[k].analytic == b.coordinates[k].analytic);
            CHECK(a.coordinates[k].numeric == b.coordinates[k].numeric);
        }
    }
    CHECK_THROWS_AS(finite_difference_check(new_cloud({{0}, {1}}), config(death_squared, 0.0), 0.0), Error);
}

TEST_CASE("structural invariants of the gradient")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto cloud = perturbed(random_cloud(15, 2, 500 + seed), 0.05, 600 + seed);
        const auto w = build_weights(cloud, KernelSpec{});

        // locality: one included pair moves at most four points
        const auto d = pairwise_distances(cloud);
        const auto dg = rips_persistence(d, 0, enclosing_radius(d));
        double longest = 0.0;
        for (const auto& p : dg[0].pairs) {
            if (!p.essential()) {
                longest = std::max(longest, p.death);
            }
        }
        LossSpec only_longest{0, longest - 1e-9, true};
        CHECK(topo_gradient(cloud, dg, only_longest).nonzero_points() <= 4);

        // linearity in lambda (dyadic weights keep the arithmetic exact)
        const double a = 0.5;
        const double b = 0.25;
        const auto topo = total_loss_and_grad(cloud, config(LossSpec::rho0(), 0.0), w).gradient;
        const auto both = total_loss_and_grad(cloud, config(LossSpec::rho0(), a + b), w).gradient;
        const auto reg = tau_gradient(cloud, w);
        for (std::size_t k = 0; k < topo.values.size(); ++k) {
            CHECK(both.values[k] == doctest::Approx(topo.values[k] + a * reg.values[k] + b * reg.values[k]).epsilon(1e-14));
        }

        // translation invariance
        std::vector<double> shifted(cloud.current().begin(), cloud.current().end());
        std::vector<double> shifted_init(cloud.initial().begin(), cloud.initial().end());
        for (std::size_t k = 0; k < shifted.size(); k += 2) {
            shifted[k] += 0.25;
            shifted[k + 1] -= 0.5;
            shifted_init[k] += 0.25;
            shifted_init[k + 1] -= 0.5;
        }
        PointCloud moved(cloud.size(), 2, shifted_init);
        moved.assign_current(shifted);
        const auto c1 = config(LossSpec::rho0(), 1.0);
        const auto e0 = total_loss_and_grad(cloud, c1, w);
        const auto e1 = total_loss_and_grad(moved, c1, build_weights(moved, c1.kernel));
        CHECK(e1.report.rho == doctest::Approx(e0.report.rho).epsilon(1e-12));
        CHECK(e1.report.tau == doctest::Approx(e0.report.tau).epsilon(1e-9));
        for (std::size_t k = 0; k < e0.gradient.values.size(); ++k) {
            CHECK(std::abs(e1.gradient.values[k] - e0.gradient.values[k]) < 1e-9);
        }

        // a small step against the gradient does not increase the loss
        const auto report = finite_difference_check(cloud, c1, 1e-5);
        if (report.unstable_count() == 0) {
            std::vector<double> step(cloud.current().begin(), cloud.current().end());
            for (std::size_t k = 0; k < step.size(); ++k) {
                step[k] -= 1e-4 * e0.gradient.values[k];
            }
            PointCloud next = cloud;
            next.assign_current(step);
            // only meaningful while the step keeps the same included pairs
            if (probe_loss(next, c1, w).signature == probe_loss(cloud, c1, w).signature) {
                CHECK(pipeline_loss(next, c1, w) <= e0.report.total + 1e-8);
            }
        }
    }
}
