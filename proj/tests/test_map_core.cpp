#include <doctest.h>

#include <cmath>
#include <random>

#include "pwmap/errors.hpp"
#include "pwmap/map_core.hpp"
#include "pwmap/periodic.hpp"

using namespace pwmap;

TEST_CASE("parameters outside the unit square are rejected")
{
    CHECK_THROWS_AS(MapParams(-0.1, 0.5), DomainError);
    CHECK_THROWS_AS(MapParams(0.5, 1.0001), DomainError);
    CHECK_NOTHROW(MapParams(0.0, 1.0));

    CHECK(MapParams(0, 0).is_identity());
    CHECK(MapParams(0, 0.3).is_left_identity());
    CHECK_FALSE(MapParams(0.3, 0).is_left_identity());
    CHECK(MapParams(0.3, 0.2).swapped() == MapParams(0.2, 0.3));
}

TEST_CASE("branch assignment is inclusive on the left at 1/2")
{
    CHECK(branch_of(0.5) == Branch::Left);
    CHECK(branch_of(std::nextafter(0.5, 1.0)) == Branch::Right);
    CHECK(BranchPoint::at(0.7).branch == Branch::Right);
}

TEST_CASE("eval_f values")
{
    const MapParams p(0.2, 0.8);
    CHECK(eval_f(p, 0.0) == 0.0);
    CHECK(eval_f(p, 1.0) == 1.0);
    CHECK(eval_f(p, 0.25) == doctest::Approx(0.2875).epsilon(1e-15));
    // at 1/2 the left branch applies: 0.5 * (1.2 - 0.1)
    CHECK(eval_f(p, 0.5) == doctest::Approx(0.55).epsilon(1e-15));
    CHECK_THROWS_AS((void)eval_f(p, 1.1), DomainError);
    CHECK_THROWS_AS((void)eval_f(p, -1e-6), DomainError);
}

TEST_CASE("derivative")
{
    const MapParams p(0.5, 0.5);
    CHECK(*eval_f_deriv(p, 0.0) == 1.5);
    CHECK(*eval_f_deriv(p, 1.0) == 1.5);
    CHECK_FALSE(eval_f_deriv(p, 0.5).has_value());
    const auto lim = derivative_limits_at_half(MapParams(0.37, 0.91));
    CHECK(lim.left == doctest::Approx(1.0));
    CHECK(lim.right == doctest::Approx(1.0));
}

TEST_CASE("derivative bounds hold on random points")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const MapParams p(u(rng), u(rng));
        if (!p.is_nondegenerate()) continue;
        const double x = u(rng);
        const auto d = eval_f_deriv(p, x);
        REQUIRE(d.has_value());
        CHECK(*d > 1.0);
        CHECK(*d <= 1.0 + std::max(p.a(), p.b()) + 1e-15);
    }
}

TEST_CASE("iterate_n")
{
    CHECK(iterate_n(MapParams(0.4, 0.6), 0.0, 10) == 0.0);
    CHECK(iterate_n(MapParams(0, 0), 0.3, 7) == 0.3);
    const MapParams p(0.8, 0.8);
    const auto c = two_cycle_closed_form(p);
    REQUIRE(c);
    CHECK(std::fabs(iterate_n(p, c->points[0], 2) - c->points[0]) < 1e-9);
}

TEST_CASE("conjugacy identity")
{
    const auto c = conjugate_map_check(MapParams(0.2, 0.8), 0.25);
    CHECK(c.lhs == doctest::Approx(0.7125).epsilon(1e-15));
    CHECK(c.rhs == doctest::Approx(0.7125).epsilon(1e-15));
    CHECK_FALSE(c.at_boundary);

    const auto s = conjugate_map_check(MapParams(0.4, 0.4), 0.3);
    CHECK(s.lhs == doctest::Approx(s.rhs).epsilon(1e-15));

    for (int k = 0; k <= 1000; ++k) {
        const double x = k / 1000.0;
        const auto r = conjugate_map_check(MapParams(0.3, 0.6), x);
        if (r.at_boundary) continue;
        CHECK(std::fabs(r.lhs - r.rhs) < 1e-14);
    }
    CHECK(conjugate_map_check(MapParams(0.3, 0.6), 0.5).at_boundary);
}

TEST_CASE("branch preimages invert f")
{
    const MapParams p(0.5, 0.5);
    const auto r = right_preimage(p, 0.5);
    REQUIRE(r);
    CHECK(*r == doctest::Approx(0.6180339887498948).epsilon(1e-14));
    CHECK(*right_preimage(MapParams(0.3, 1.0), 0.5) == doctest::Approx(0.7071067811865475).epsilon(1e-14));
    // 0.9 is only reachable from the right branch
    CHECK_FALSE(left_preimage(p, 0.9).has_value());

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const MapParams q(u(rng), u(rng));
        const double y = u(rng);
        for (double x : branch_preimages(q, y)) CHECK(std::fabs(eval_f(q, x) - y) < 1e-12);
    }
}

TEST_CASE("within_ulps")
{
    CHECK(within_ulps(1.0, std::nextafter(1.0, 2.0), 1));
    CHECK_FALSE(within_ulps(1.0, 1.0 + 1e-10, 4));
}
