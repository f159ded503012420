//---------------------------------------------------------------------------//
//! \file Annulus.cc
//---------------------------------------------------------------------------//
#include "halfbern/Annulus.hh"

#include <cmath>
#include <limits>
#include <numbers>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace halfbern
{
namespace
{
constexpr std::size_t annulus_grid = 64;

template<class F>
double integrate(F&& f, double a, double b, double rel_tol, char const* what)
{
    using boost::math::quadrature::gauss_kronrod;
    double err = 0;
    double const value = gauss_kronrod<double, 31>::integrate(
        f, a, b, 20, rel_tol * 1e-2, &err);
    if (!std::isfinite(value) || err > rel_tol * std::abs(value))
        throw Error(std::string(what) + ": quadrature did not converge");
    return value;
}
}  // namespace

//---------------------------------------------------------------------------//
void AnnulusSpec::validate() const
{
    if (center.dim() < 1)
        throw Error("annulus center must have a dimension");
    if (!(r > 0 && r < R && std::isfinite(R)))
        throw Error("annulus radii must satisfy 0 < r < R");
}

Vec AnnulusSpec::outer_point() const
{
    return center + R * unit_axis(dim(), 0);
}

RadialDomain inner_ball(AnnulusSpec const& spec)
{
    spec.validate();
    return RadialDomain::ball(spec.center, spec.r, spec.dim() == 2 ? annulus_grid : 0);
}

RadialDomain outer_ball(AnnulusSpec const& spec)
{
    spec.validate();
    return RadialDomain::ball(spec.center, spec.R, spec.dim() == 2 ? annulus_grid : 0);
}

Estimate barrier_value(AnnulusSpec const& spec, Vec const& x, WalkConfig const& cfg)
{
    spec.validate();
    require_same_dim(spec.center, x, "barrier_value");
    double const s = distance(x, spec.center);
    if (!(s > spec.r && s < spec.R))
        throw Error("barrier_value: point must lie in the open annulus");
    auto const omega = outer_ball(spec);
    auto const core = inner_ball(spec);
    return harmonic_value(x, omega, core, cfg);
}

//---------------------------------------------------------------------------//
double lemma_constant(int dim)
{
    if (dim < 1)
        throw Error("lemma_constant: dimension must be positive");
    if (dim == 1)
        return 2 / std::numbers::pi;
    double const d = dim;
    return std::tgamma(d / 2)
           / (std::pow(2.0, (d - 1) / 2) * (2 * d - 1) * std::tgamma((d + 1) / 2)
              * std::pow(std::numbers::pi, 1.5));
}

double derivative_lower_bound(AnnulusSpec const& spec)
{
    spec.validate();
    double const d = spec.dim();
    return lemma_constant(spec.dim()) / std::sqrt(spec.R - spec.r)
           * std::pow(spec.r / spec.R, d - 0.5);
}

double derivative_upper_bound(AnnulusSpec const& spec)
{
    spec.validate();
    double const base = 1 / std::sqrt(spec.R - spec.r);
    if (spec.dim() != 1)
        return base;
    double const sharp = std::numbers::sqrt2 / std::numbers::pi
                         * std::sqrt(1 + spec.r / spec.R) * base;
    return std::min(base, sharp);
}

//---------------------------------------------------------------------------//
/*!
 * The integration ball B_r(R e_1) has z_1 in (2 rho, R + r) with
 * rho = (R - r)/2, and the factor (|z|^2 - 2 rho z_1)^{-1/2} blows up at
 * z = 2 rho e_1. Writing z_1 = 2 rho + r w^2 removes the square-root
 * endpoint, and in the plane the transverse coordinate z_2 = a sinh(s) with
 * a^2 = z_1 (z_1 - 2 rho) turns the inner integrand into the smooth
 * 1/(z_1^2 + z_2^2).
 */
double form1_quadrature(AnnulusSpec const& spec, double rel_tol)
{
    spec.validate();
    double const r = spec.r;
    double const R = spec.R;
    double const rho = (R - r) / 2;
    double const c = poisson_constant(spec.dim());
    double const w_max = std::numbers::sqrt2;

    if (spec.dim() == 1)
    {
        auto f = [&](double w) {
            double const z = 2 * rho + r * w * w;
            return 2 * std::sqrt(2 * rho * r) / std::pow(z, 1.5);
        };
        return c * integrate(f, 0, w_max, rel_tol, "form1_quadrature");
    }
    if (spec.dim() != 2)
        throw Error("form1_quadrature: only d = 1 and d = 2 are supported");

    auto outer = [&](double w) -> double {
        if (w <= 0)
            return 0;
        double const z1 = 2 * rho + r * w * w;
        double const h = std::sqrt(std::max(0.0, r * r - (z1 - R) * (z1 - R)));
        if (h <= 0)
            return 0;
        double const a = std::sqrt(z1 * (z1 - 2 * rho));
        double const s_max = std::asinh(h / a);
        auto inner = [&](double s) {
            double const z2 = a * std::sinh(s);
            return 1 / (z1 * z1 + z2 * z2);
        };
        // Even in s
        double const transverse
            = 2 * integrate(inner, 0, s_max, rel_tol * 1e-2, "form1_quadrature");
        return transverse * 2 * r * w;
    };
    return c * std::sqrt(2 * rho) * integrate(outer, 0, w_max, rel_tol, "form1_quadrature");
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
