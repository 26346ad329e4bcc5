#include "topogroup/error.hpp"
#include "topogroup/losses.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace topogroup;

namespace {

const double rt2 = std::sqrt(2.0);

PersistencePair finite(int dim, double b, double d)
{
    Simplex birth{dim == 0 ? std::vector<Vertex>{1} : std::vector<Vertex>{0, 1}};
    Simplex death{dim == 0 ? std::vector<Vertex>{0, 1} : std::vector<Vertex>{0, 1, 2}};
    return {dim, b, d, birth, death};
}

PersistencePair essential(int dim) { return {dim, 0.0, unbounded, Simplex{{0}}, std::nullopt}; }

} // namespace

TEST_CASE("presets")
{
    const auto r0 = *loss_preset("rho0");
    CHECK(r0.target_dim == 0);
    CHECK(r0.persistence_floor == 0.10);
    CHECK(r0.exclude_essential);
    const auto r1 = *loss_preset("rho1");
    CHECK(r1.target_dim == 1);
    CHECK(r1.persistence_floor == 0.25);
    CHECK_FALSE(loss_preset("rho2").has_value());
}

TEST_CASE("eval_loss examples")
{
    PersistenceDiagram h0{0, {finite(0, 0, 0.05), finite(0, 0, 0.5), essential(0)}};
    CHECK(eval_loss(LossSpec::rho0(), h0) == 0.25);

    PersistenceDiagram h1{1, {finite(1, 1.0, rt2)}};
    CHECK(eval_loss(LossSpec::rho1(), h1) == doctest::Approx(0.171573).epsilon(1e-6));
    CHECK(eval_loss(LossSpec::rho1(), h1) == (rt2 - 1) * (rt2 - 1));

    CHECK(eval_loss(LossSpec::rho0(), PersistenceDiagram{0, {}}) == 0.0);
    CHECK(eval_loss(LossSpec::rho1(), PersistenceDiagram{1, {}}) == 0.0);
}

TEST_CASE("strict threshold")
{
    LossSpec spec{0, 0.5, true};
    CHECK(eval_loss(spec, PersistenceDiagram{0, {finite(0, 0, 0.5)}}) == 0.0);
    CHECK(eval_loss(spec, PersistenceDiagram{0, {finite(0, 0, std::nextafter(0.5, 1.0))}}) > 0.25);
}

TEST_CASE("essential classes")
{
    PersistenceDiagram h1{1, {finite(1, 0.2, 0.9), essential(1)}};
    try {
        eval_loss(LossSpec::rho1(), h1);
        FAIL("expected InfiniteLoss");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InfiniteLoss);
    }
    CHECK_THROWS_AS(loss_pair_derivatives(LossSpec::rho1(), h1), Error);
    LossSpec excluded = LossSpec::rho1();
    excluded.exclude_essential = true;
    CHECK(eval_loss(excluded, h1) == doctest::Approx(0.49).epsilon(1e-12));
}

TEST_CASE("dimension mismatch")
{
    CHECK_THROWS_AS(eval_loss(LossSpec::rho1(), PersistenceDiagram{0, {}}), Error);
}

TEST_CASE("pair derivatives")
{
    PersistenceDiagram h0{0, {finite(0, 0, 0.05), finite(0, 0, 0.5)}};
    const auto d0 = loss_pair_derivatives(LossSpec::rho0(), h0);
    REQUIRE(d0.size() == 1);
    CHECK(d0[0].pair_index == 1);
    CHECK(d0[0].d_birth == -1.0);
    CHECK(d0[0].d_death == 1.0);

    PersistenceDiagram h1{1, {finite(1, 1.0, rt2)}};
    const auto d1 = loss_pair_derivatives(LossSpec::rho1(), h1);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].d_birth == doctest::Approx(-0.82843).epsilon(1e-5));
    CHECK(d1[0].d_death == doctest::Approx(0.82843).epsilon(1e-5));
}

TEST_CASE("loss properties on random diagrams")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        PersistenceDiagram dg{0, {}};
        for (int k = 0; k < 20; ++k) {
            dg.pairs.push_back(finite(0, 0.0, u(rng)));
        }
        const auto spec = LossSpec::rho0();
        const double base = eval_loss(spec, dg);

        auto shuffled = dg;
        std::shuffle(shuffled.pairs.begin(), shuffled.pairs.end(), rng);
        CHECK(eval_loss(spec, shuffled) == doctest::Approx(base).epsilon(1e-14));

        const auto ders = loss_pair_derivatives(spec, dg);
        for (const auto& der : ders) {
            CHECK(der.d_death >= 0.0);
            CHECK(der.d_birth <= 0.0);
            const auto& p = dg.pairs[der.pair_index];
            if (std::abs((p.death - p.birth) - spec.persistence_floor) < 1e-3) {
                continue;
            }
            const double h = 1e-6;
            auto plus = dg;
            plus.pairs[der.pair_index].death += h;
            const double change = eval_loss(spec, plus) - base;
            CHECK(change == doctest::Approx(der.d_death * h).epsilon(1e-4));
        }
    }
}
