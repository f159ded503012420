//---------------------------------------------------------------------------//
//! \file test_verify.cc
//---------------------------------------------------------------------------//
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "halfbern/Bounds.hh"
#include "halfbern/Verify.hh"

using namespace halfbern;
using std::numbers::pi;

namespace
{
// Synthetic converged solution: a disk of radius r with uniform error
BernoulliSolution disk(double lambda, double r, double err = 1e-3, std::size_t n = 32)
{
    BernoulliSolution s;
    s.lambda = lambda;
    s.domain = RadialDomain::ball(Vec{0.0, 0.0}, r, n);
    s.radius_error.assign(n, err);
    s.converged = true;
    s.iterations = 1;
    DerivativeEstimate d;
    d.value = lambda;
    d.std_error = 0.01 * lambda;
    s.derivative.assign(n, d);
    return s;
}

RadialDomain const unit_core = RadialDomain::ball(Vec{0.0, 0.0}, 1.0, 32);
}  // namespace

TEST_CASE("verdict strings")
{
    for (auto v : {Verdict::pass, Verdict::fail, Verdict::inconclusive})
        CHECK(verdict_from_string(to_string(v)) == v);
    CHECK_THROWS_AS(verdict_from_string("MAYBE"), Error);
}

TEST_CASE("monotonicity")
{
    CHECK(check_monotonicity({disk(1, 3), disk(2, 2)}).status == Verdict::pass);
    // Same domains with the lambdas swapped: the larger domain has larger lambda
    CHECK(check_monotonicity({disk(2, 3), disk(1, 2)}).status == Verdict::fail);
    CHECK(check_monotonicity({disk(1, 2.001, 0.01), disk(2, 2.0, 0.01)}).status == Verdict::inconclusive);

    auto bad = disk(2, 3);
    bad.converged = false;
    auto const r = check_monotonicity({disk(1, 2), bad});
    CHECK(r.status == Verdict::pass);
    CHECK(r.note.find("excluded 1") != std::string::npos);
    CHECK_THROWS_AS(check_monotonicity({disk(1, 3), disk(2, 2, 1e-3, 16)}), Error);
}

TEST_CASE("triangle bound")
{
    Vec const x0{0.0, 0.0};
    auto const ok = check_triangle_bound(disk(1, 3), disk(2, 2), x0);
    CHECK(ok.status == Verdict::pass);
    CHECK(ok.margin == doctest::Approx(2 * std::log(2.0) - std::log(1.5)).epsilon(1e-2));
    // Inflating one domain by e^3 breaks the bound 2 |ln 2|
    auto const inflated = check_triangle_bound(disk(1, std::exp(3.0)), disk(2, 1), x0);
    CHECK(inflated.status == Verdict::fail);
}

TEST_CASE("distance bounds")
{
    // lambda = 1, r_K = 1: bracket [g, 1]
    double const g = g_exact(1, 1, 2);
    REQUIRE(g < 0.5);
    CHECK(check_distance_bounds(disk(1, 1.5), unit_core).status == Verdict::pass);
    CHECK(check_distance_bounds(disk(1, 3.0), unit_core).status == Verdict::fail);
    CHECK(check_distance_bounds(disk(1, 1 + 0.5 * g, 1e-3 * g), unit_core).status == Verdict::fail);
    CHECK(check_distance_trend({disk(0.5, 3.0), disk(1, 1.5)}, unit_core).status == Verdict::pass);
    CHECK(check_distance_trend({disk(0.5, 1.5), disk(1, 3.0)}, unit_core).status == Verdict::fail);
}

TEST_CASE("normal rays")
{
    CHECK(check_normal_rays(disk(1, 3), unit_core).status == Verdict::pass);
    CHECK(check_normal_rays(disk(1, 3), unit_core, true).status == Verdict::fail);

    // Ray hull margins around a unit square
    std::vector<Vec> const sq{Vec{-1.0, -1.0}, Vec{1.0, -1.0}, Vec{1.0, 1.0}, Vec{-1.0, 1.0}};
    CHECK(ray_hull_margin(sq, Vec{3.0, 0.0}, Vec{-1.0, 0.0}) == doctest::Approx(std::atan(0.5)));
    CHECK(ray_hull_margin(sq, Vec{3.0, 0.0}, Vec{1.0, 0.0}) < 0);
    CHECK(ray_hull_margin(sq, Vec{3.0, 0.0}, Vec{0.0, 1.0}) < 0);
    CHECK(ray_hull_margin(sq, Vec{0.0, 0.0}, Vec{0.0, 1.0}) == doctest::Approx(pi));
}

TEST_CASE("ball starshapedness")
{
    // Inscribed 64-gon: apothem 3 cos(pi/64)
    CHECK(starshaped_ball_radius(RadialDomain::ball(Vec{1.0, 2.0}, 3.0, 64)) == doctest::Approx(3 * std::cos(std::numbers::pi / 64)).epsilon(1e-12));
    // Ellipse about its center: min over the boundary of the support value
    // a b / sqrt(a^2 sin^2 + b^2 cos^2) = 1 at the minor vertex
    auto const e = RadialDomain::from_function(Vec{0.0, 0.0}, DirectionGrid::uniform(2, 1024), [](Vec const& u) {
        return 2 / std::sqrt(4 * u[1] * u[1] + u[0] * u[0]);
    });
    CHECK(starshaped_ball_radius(e) == doctest::Approx(1).epsilon(1e-3));
    CHECK(check_ball_starshaped(disk(1, 3), unit_core).status == Verdict::pass);
    // A sharp inward dent makes Omega starshaped about a smaller ball only
    auto dented = disk(1, 3);
    auto radii = dented.domain.radii();
    radii[5] = 1.2;
    dented.domain = dented.domain.with_radii(radii);
    CHECK(check_ball_starshaped(dented, unit_core).status == Verdict::fail);
}

TEST_CASE("moving planes")
{
    auto const omega = RadialDomain::ball(Vec{0.0, 0.0}, 3.0, 64);
    auto const p = moving_plane_profile(omega, unit_core, Vec{1.0, 0.0});
    CHECK(p.t1 == doctest::Approx(3).epsilon(1e-9));
    CHECK(std::abs(p.t0) < 1e-6);
    // Concentric balls meet both stopping conditions at once
    CHECK(p.omega_touch);
    CHECK(p.core_touch);

    auto const o2 = RadialDomain::ball(Vec{1.0, 0.0}, 2.0, 64);
    auto const k2 = RadialDomain::ball(Vec{1.0, 0.0}, 1.0, 64);
    auto const q = moving_plane_profile(o2, k2, polar(0));
    CHECK(q.t0 == doctest::Approx(1).epsilon(1e-6));
    CHECK(q.t1 == doctest::Approx(3).epsilon(1e-9));

    // Off-center core: the plane is stopped by K before the center of Omega
    auto const k3 = RadialDomain::ball(Vec{-1.0, 0.0}, 1.0, 64);
    auto const r = moving_plane_profile(omega, k3, Vec{-1.0, 0.0});
    CHECK(r.t0 == doctest::Approx(1).epsilon(1e-6));
    CHECK(r.core_touch);
    CHECK_FALSE(r.omega_touch);

    CHECK(check_moving_plane({p, q, r}).status == Verdict::pass);
    auto flat = p;
    flat.t0 = flat.t1;
    CHECK(check_moving_plane({p, flat}).status == Verdict::fail);
    CHECK_THROWS_AS(moving_plane_profile(omega, unit_core, Vec{2.0, 0.0}), Error);
}

TEST_CASE("reflection positivity")
{
    auto const omega = RadialDomain::ball(Vec{0.0, 0.0}, 3.0, 64);
    auto const core = RadialDomain::ball(Vec{-1.0, 0.0}, 1.0, 64);
    WalkConfig cfg;
    cfg.n_walks = 4000;
    auto const r = check_reflection_positivity(omega, core, Halfspace{Vec{1.0, 0.0}, 1.0}, cfg);
    CHECK(r.status == Verdict::pass);
    CHECK(r.margin > 0);
    // Outside [t0, t1)
    CHECK_THROWS_AS(check_reflection_positivity(omega, core, Halfspace{Vec{1.0, 0.0}, 3.5}, cfg), Error);
    CHECK_THROWS_AS(check_reflection_positivity(omega, core, Halfspace{Vec{1.0, 0.0}, -0.5}, cfg), Error);
}

TEST_CASE("interior positivity")
{
    WalkConfig cfg;
    cfg.n_walks = 2000;
    auto const r = check_interior_positivity(disk(1, 2, 1e-3, 16), RadialDomain::ball(Vec{0.0, 0.0}, 1.0, 16), cfg);
    CHECK(r.status == Verdict::pass);
    CHECK(r.margin > 0);
}

TEST_CASE("suites on synthetic solutions")
{
    SolverConfig cfg;
    cfg.walk.n_walks = 1000;
    std::vector<BernoulliSolution> const sols{disk(2, 1.2), disk(0.5, 3), disk(1, 1.6)};
    auto const rep = run_suite("monotonicity", unit_core, sols, cfg);
    CHECK(rep.lambdas == std::vector<double>{0.5, 1, 2});
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.overall() == Verdict::pass);
    CHECK(rep.solutions[0].triangle == doctest::Approx(std::log(3 / 1.6)));

    auto const tri = run_suite("triangle", unit_core, sols, cfg);
    CHECK(tri.checks.size() == 2);
    auto const all = run_suite("all", unit_core, sols, cfg);
    CHECK(all.checks.size() > 8);
    CHECK_THROWS_AS(run_suite("nope", unit_core, sols, cfg), Error);

    VerificationReport r;
    r.checks = {CheckResult{"a", Verdict::pass}, CheckResult{"b", Verdict::inconclusive}};
    CHECK(r.overall() == Verdict::inconclusive);
    r.checks.push_back(CheckResult{"c", Verdict::fail});
    CHECK(r.overall() == Verdict::fail);
}
