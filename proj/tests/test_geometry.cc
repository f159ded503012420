//---------------------------------------------------------------------------//
//! \file test_geometry.cc
//---------------------------------------------------------------------------//
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "halfbern/Geometry.hh"
#include "halfbern/Io.hh"

using namespace halfbern;
using std::numbers::pi;

namespace
{
RadialDomain star(double base, double amp, int lobes, std::size_t n)
{
    return RadialDomain::from_function(Vec{0.0, 0.0}, DirectionGrid::uniform(2, n),
                                       [&](Vec const& u) {
                                           double const phi = std::atan2(u[1], u[0]);
                                           return base + amp * std::cos(lobes * phi);
                                       });
}

// Dense samples of the interpolated boundary
std::vector<Vec> dense_boundary(RadialDomain const& d, std::size_t m)
{
    std::vector<Vec> out;
    for (std::size_t k = 0; k < m; ++k)
        out.push_back(d.boundary_point(polar(2 * pi * static_cast<double>(k) / m)));
    return out;
}

// Point outside the hull of pts iff some direction separates it
bool in_hull_by_support(std::vector<Vec> const& pts, Vec const& x)
{
    for (int k = 0; k < 3600; ++k)
    {
        Vec const u = polar(2 * pi * k / 3600.0);
        double best = -1e300;
        for (auto const& p : pts)
            best = std::max(best, dot(u, p));
        if (dot(u, x) > best + 1e-12)
            return false;
    }
    return true;
}
}  // namespace

TEST_CASE("direction grid invariants")
{
    for (int d : {1, 2, 3})
    {
        auto const g = DirectionGrid::uniform(d);
        CHECK(g.size() == (d == 1 ? 2u : d == 2 ? 256u : 1024u));
        for (std::size_t i = 0; i < g.size(); ++i)
        {
            CHECK(std::abs(norm(g.direction(i)) - 1) < 1e-12);
            for (std::size_t j = i + 1; j < g.size(); ++j)
                REQUIRE(distance(g.direction(i), g.direction(j)) > 1e-9);
        }
    }
    CHECK_THROWS_AS(DirectionGrid::uniform(1, 3), Error);
    CHECK_THROWS_AS(DirectionGrid::from_angles({0.0, 1.0, 3.0}), Error);
    CHECK_THROWS_AS(DirectionGrid::from_directions(3, {Vec{1.0, 0.0, 0.0}, Vec{1.0, 0.0, 0.0}}),
                    Error);
}

TEST_CASE("contains")
{
    auto const b = RadialDomain::ball(Vec{0.0, 0.0}, 2.0);
    CHECK(contains(b, Vec{1.0, 0.0}));
    CHECK_FALSE(contains(b, Vec{3.0, 0.0}));
    CHECK(contains(b, Vec{0.0, 0.0}));
    CHECK_THROWS_AS(contains(b, Vec{1.0}), Error);
}

TEST_CASE("boundary point")
{
    auto const b = RadialDomain::ball(Vec{0.0, 0.0}, 2.0);
    CHECK(distance(boundary_point(b, Vec{0.0, 1.0}), Vec{0.0, 2.0}) < 1e-14);
    auto const c = RadialDomain::ball(Vec{1.0, 0.0}, 2.0);
    CHECK(distance(boundary_point(c, Vec{1.0, 0.0}), Vec{3.0, 0.0}) < 1e-14);

    auto const e = ellipse_domain(Vec{0.0, 0.0}, 2, 1, 64);
    for (std::size_t i = 0; i < e.size(); ++i)
        CHECK(norm(e.boundary_point(e.grid().direction(i))) == doctest::Approx(e.radii()[i]).epsilon(1e-14));
}

TEST_CASE("inward normal")
{
    auto const b = RadialDomain::ball(Vec{0.0, 0.0}, 2.0);
    auto const n = inward_normal(b, Vec{1.0, 0.0});
    CHECK(distance(n, Vec{-1.0, 0.0}) < 1e-10);
    auto const c = RadialDomain::ball(Vec{1.0, 1.0}, 2.0);
    CHECK(distance(inward_normal(c, Vec{0.0, 1.0}), Vec{0.0, -1.0}) < 1e-10);

    // rho = 2 + 0.1 cos(phi): tangent rho' theta + rho theta_perp, normal to its left
    auto const p = RadialDomain::from_function(
        Vec{0.0, 0.0}, DirectionGrid::uniform(2, 256), [](Vec const& u) { return 2 + 0.1 * u[0]; });
    double const phi = pi / 2;
    double const rho = 2 + 0.1 * std::cos(phi);
    double const drho = -0.1 * std::sin(phi);
    Vec const t{drho * std::cos(phi) - rho * std::sin(phi), drho * std::sin(phi) + rho * std::cos(phi)};
    Vec expect{-t[1], t[0]};
    expect *= 1 / norm(expect);
    CHECK(distance(inward_normal(p, polar(phi)), expect) < 1e-4);

    auto const s = RadialDomain::ball(Vec{0.0, 0.0, 0.0}, 1.0);
    CHECK_THROWS_AS(inward_normal(s, Vec{1.0, 0.0, 0.0}), Error);
    auto const one = RadialDomain::ball(Vec{0.0}, 1.0);
    CHECK(inward_normal(one, Vec{1.0})[0] == -1.0);
}

TEST_CASE("boundary distance")
{
    auto const b1 = RadialDomain::ball(Vec{0.0, 0.0}, 1.0);
    auto const b3 = RadialDomain::ball(Vec{0.0, 0.0}, 3.0);
    CHECK(boundary_distance(b1, b3) == doctest::Approx(2).epsilon(1e-12));
    auto const far = RadialDomain::ball(Vec{5.0, 0.0}, 1.0);
    CHECK(boundary_distance(b1, far) == doctest::Approx(3).epsilon(1e-12));
    CHECK(boundary_distance(b1, far) == boundary_distance(far, b1));

    // Brute force over 10^5 points of the exact ellipse
    auto const e = ellipse_domain(Vec{0.0, 0.0}, 2, 1, 720);
    double brute = 1e300;
    for (int k = 0; k < 100000; ++k)
    {
        double const t = 2 * pi * k / 100000.0;
        brute = std::min(brute, 3 - std::hypot(2 * std::cos(t), std::sin(t)));
    }
    CHECK(std::abs(boundary_distance(e, b3) - brute) < 1e-4);
    CHECK_THROWS_AS(boundary_distance(b1, RadialDomain::ball(Vec{0.0}, 1.0)), Error);
}

TEST_CASE("interior ball radius")
{
    CHECK(interior_ball_radius(RadialDomain::ball(Vec{0.0, 0.0}, 2.0)) == doctest::Approx(2).epsilon(1e-3));
    CHECK(interior_ball_radius(RadialDomain::ball(Vec{7.0, 0.0}, 1.0)) == doctest::Approx(1).epsilon(1e-3));
    // Osculating circle at (2, 0): radius b^2/a
    auto const e = ellipse_domain(Vec{0.0, 0.0}, 2, 1, 256);
    CHECK(std::abs(interior_ball_radius(e) - 0.5) < 5e-2);
    CHECK_THROWS_AS(interior_ball_radius(ellipse_domain(Vec{0.0, 0.0}, 2, 1, 32)), Error);

    // A ball stored with slightly perturbed radii takes the generic path
    auto radii = std::vector<double>(256, 2.0);
    radii[0] = 2.0 + 1e-12;
    auto const near_ball = RadialDomain(Vec{0.0, 0.0}, DirectionGrid::uniform(2, 256), radii);
    CHECK(interior_ball_radius(near_ball) == doctest::Approx(2).epsilon(1e-3));
}

TEST_CASE("convex hull containment")
{
    auto const b = RadialDomain::ball(Vec{0.0, 0.0}, 2.0);
    CHECK(convex_hull_contains(b, Vec{0.0, 0.0}));
    CHECK_FALSE(convex_hull_contains(b, Vec{5.0, 0.0}));

    auto const s = star(2, 0.8, 3, 256);
    Vec const pocket = 1.5 * polar(pi / 3);
    REQUIRE_FALSE(s.contains(pocket));
    auto const pts = boundary_samples(s);
    CHECK(in_hull_by_support(pts, pocket));
    CHECK(convex_hull_contains(s, pocket));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 200; ++k)
    {
        Vec const x{u(rng), u(rng)};
        CHECK(convex_hull_contains(s, x) == in_hull_by_support(pts, x));
    }
    CHECK_THROWS_AS(convex_hull_contains(RadialDomain::ball(Vec{0.0}, 1.0), Vec{0.0}), Error);
}

TEST_CASE("reflect")
{
    CHECK(distance(reflect(Vec{3.0, 1.0}, {Vec{1.0, 0.0}, 0}), Vec{-3.0, 1.0}) < 1e-15);
    CHECK(distance(reflect(Vec{3.0, 1.0}, {Vec{1.0, 0.0}, 1}), Vec{-1.0, 1.0}) < 1e-15);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int k = 0; k < 100; ++k)
    {
        Vec e{g(rng), g(rng)};
        e *= 1 / norm(e);
        Halfspace const h{e, g(rng)};
        Vec const x{g(rng), g(rng)};
        Vec const y{g(rng), g(rng)};
        CHECK(distance(reflect(reflect(x, h), h), x) < 1e-12);
        CHECK(std::abs(distance(reflect(x, h), reflect(y, h)) - distance(x, y)) < 1e-12);
    }
}

TEST_CASE("radial membership brackets every node")
{
    auto const s = star(2, 0.6, 5, 128);
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        Vec const th = s.grid().direction(i);
        double const eps = 1e-6 * s.radii()[i];
        CHECK(s.contains(s.boundary_point(i) - eps * th));
        CHECK_FALSE(s.contains(s.boundary_point(i) + eps * th));
    }
}

TEST_CASE("distance bound never exceeds the true distance")
{
    auto const s = star(2, 0.5, 3, 64);
    auto const dense = dense_boundary(s, 20000);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    int tested = 0;
    double worst_ratio = 1;
    while (tested < 300)
    {
        Vec const x{u(rng), u(rng)};
        if (!s.contains(x))
            continue;
        ++tested;
        double brute = 1e300;
        for (auto const& p : dense)
            brute = std::min(brute, distance(x, p));
        double const bound = s.boundary_distance_bound(x);
        CHECK(bound <= brute + 1e-12);
        CHECK(bound >= 0);
        worst_ratio = std::min(worst_ratio, bound / brute);
    }
    CHECK(worst_ratio > 0.2);
}

TEST_CASE("interval domains")
{
    auto const d = RadialDomain(Vec{0.0}, DirectionGrid::uniform(1), {2.0, 1.0});
    CHECK(d.contains(Vec{1.5}));
    CHECK_FALSE(d.contains(Vec{-1.5}));
    CHECK(d.boundary_distance_bound(Vec{1.5}) == doctest::Approx(0.5));
    CHECK(d.boundary_distance_bound(Vec{-0.5}) == doctest::Approx(0.5));
}
