//---------------------------------------------------------------------------//
//! \file test_boundary_derivative.cc
//---------------------------------------------------------------------------//
#include <cmath>

#include "doctest.h"
#include "halfbern/Annulus.hh"
#include "halfbern/BoundaryDerivative.hh"

using namespace halfbern;

namespace
{
Estimate exact(double v, double err = 0)
{
    Estimate e;
    e.mean = v;
    e.std_error = err;
    return e;
}
}  // namespace

TEST_CASE("t grid")
{
    auto const t = TGridRule{}.make(2.0);
    REQUIRE(t.size() == 5);
    CHECK(t[0] == doctest::Approx(0.16));
    for (std::size_t k = 1; k < t.size(); ++k)
        CHECK(t[k] == doctest::Approx(0.5 * t[k - 1]));
    CHECK_THROWS_AS(TGridRule{}.make(0), Error);
    CHECK_THROWS_AS((TGridRule{1.5, 0.5, 5}).validate(), Error);
    CHECK_THROWS_AS((TGridRule{0.1, 1.0, 5}).validate(), Error);
    CHECK_THROWS_AS((TGridRule{0.1, 0.5, 1}).validate(), Error);
}

TEST_CASE("exact square-root profile")
{
    auto const t = TGridRule{}.make(1.0);
    auto const est = estimate_dhalf(Vec{0.0, 0.0}, Vec{1.0, 0.0}, t,
                                    [](Vec const& y, std::size_t) { return exact(std::sqrt(y[0])); });
    CHECK(std::abs(est.value - 1) < 1e-10);
    CHECK(std::abs(est.slope) < 1e-8);
    CHECK_FALSE(est.constant_fit);
    CHECK(est.std_error == 0);
}

TEST_CASE("linear quotients are reproduced")
{
    // u = a sqrt(t) + b t^{3/2}
    double const a = 0.7, b = -1.3;
    auto const t = TGridRule{}.make(1.0);
    std::vector<Estimate> s;
    for (double tk : t)
        s.push_back(exact(a * std::sqrt(tk) + b * std::pow(tk, 1.5), 1e-3 * (1 + tk)));
    auto const est = fit_dhalf(t, s);
    CHECK(est.value == doctest::Approx(a).epsilon(1e-10));
    CHECK(est.slope == doctest::Approx(b).epsilon(1e-8));
    CHECK(est.quotients.size() == t.size());
}

TEST_CASE("two-point fit error propagation")
{
    // Two points determine the line; a = (t2 q1 - t1 q2)/(t2 - t1)
    std::vector<double> const t{0.2, 0.05};
    std::vector<Estimate> const s{exact(0.3, 0.01), exact(0.2, 0.02)};
    double const q1 = 0.3 / std::sqrt(t[0]);
    double const q2 = 0.2 / std::sqrt(t[1]);
    double const e1 = 0.01 / std::sqrt(t[0]);
    double const e2 = 0.02 / std::sqrt(t[1]);
    double const a = (t[1] * q1 - t[0] * q2) / (t[1] - t[0]);
    double const var = (t[1] * t[1] * e1 * e1 + t[0] * t[0] * e2 * e2)
                       / ((t[1] - t[0]) * (t[1] - t[0]));
    auto const est = fit_dhalf(t, s);
    REQUIRE_FALSE(est.constant_fit);
    CHECK(est.value == doctest::Approx(a).epsilon(1e-12));
    CHECK(est.std_error == doctest::Approx(std::sqrt(var)).epsilon(1e-10));
}

TEST_CASE("constant fallback")
{
    // Quotients rising steeply towards t = 0 would give a negative intercept
    std::vector<double> const t{0.4, 0.2, 0.1};
    std::vector<Estimate> const s{exact(0.9 * std::sqrt(0.4), 0.01), exact(0.1 * std::sqrt(0.2), 0.01),
                                  exact(0.001 * std::sqrt(0.1), 0.01)};
    auto const est = fit_dhalf(t, s);
    CHECK(est.constant_fit);
    CHECK(est.value > 0);
    CHECK(est.slope == 0);
}

TEST_CASE("fit errors")
{
    CHECK_THROWS_AS(fit_dhalf({0.1}, {exact(0.1)}), Error);
    CHECK_THROWS_AS(fit_dhalf({0.1, 0.2}, {exact(0.1), exact(0.2)}), Error);
    CHECK_THROWS_AS(fit_dhalf({0.1, 0.05}, {exact(0.1)}), Error);
    CHECK_THROWS_AS(fit_dhalf({0.1, -0.05}, {exact(0.1), exact(0.1)}), Error);
    CHECK_THROWS_AS(fit_dhalf({0.1, 0.05}, {exact(0), exact(0)}), Error);
}

TEST_CASE("annulus barrier derivative inside the bracket")
{
    WalkConfig cfg;
    cfg.n_walks = 20000;
    for (int d : {1, 2})
    {
        AnnulusSpec const spec{zeros(d), 1, 2};
        auto const omega = outer_ball(spec);
        auto const core = inner_ball(spec);
        SolveRegion const region(omega, core);
        auto const est = estimate_dhalf(spec.outer_point(), -1.0 * unit_axis(d, 0), region, cfg);
        CHECK(est.value > form1_quadrature(spec) - 3 * est.std_error);
        CHECK(est.value < derivative_upper_bound(spec) + 3 * est.std_error);
        CHECK(est.std_error > 0);
        CHECK(est.samples.size() == 5);
    }
    AnnulusSpec const spec{Vec{0.0, 0.0}, 1, 2};
    auto const omega = outer_ball(spec);
    auto const core = inner_ball(spec);
    SolveRegion const region(omega, core);
    CHECK_THROWS_AS(estimate_dhalf(spec.outer_point(), Vec{1.0, 0.0}, region, cfg), Error);
}
