//---------------------------------------------------------------------------//
//! \file Metrics.cc
//---------------------------------------------------------------------------//
#include "halfbern/Metrics.hh"

#include <algorithm>
#include <cmath>

namespace halfbern
{
namespace
{
struct Pair
{
    std::vector<double> a;
    std::vector<double> b;
};

// Radii of both domains about x0 on a shared grid
Pair common_radii(RadialDomain const& a, RadialDomain const& b, Vec const& x0)
{
    require_same_dim(a.center(), b.center(), "metric");
    require_same_dim(a.center(), x0, "metric");
    bool const a_direct = a.center() == x0;
    bool const b_direct = b.center() == x0;
    if (a_direct && b_direct && a.grid() == b.grid())
        return {a.radii(), b.radii()};

    DirectionGrid const& grid = a_direct || !b_direct ? a.grid() : b.grid();
    return {anchored_radii(a, x0, grid), anchored_radii(b, x0, grid)};
}
}  // namespace

//---------------------------------------------------------------------------//
std::vector<double>
anchored_radii(RadialDomain const& dom, Vec const& x0, DirectionGrid const& grid)
{
    require_same_dim(dom.center(), x0, "anchored_radii");
    if (dom.center() == x0 && dom.grid() == grid)
        return dom.radii();
    if (!dom.contains(x0))
        throw Error("anchored_radii: domain is not star-shaped about the anchor");

    double const reach = 2 * dom.max_radius() + distance(dom.center(), x0);
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        Vec const& u = grid.direction(i);
        double lo = 0;
        double hi = reach;
        while (hi - lo > 1e-13 * reach)
        {
            double const mid = 0.5 * (lo + hi);
            (dom.contains(x0 + mid * u) ? lo : hi) = mid;
        }
        double const r = 0.5 * (lo + hi);
        if (!(r > 0))
            throw Error("anchored_radii: non-positive radius after re-anchoring");
        out[i] = r;
    }
    return out;
}

double scaling_factor(RadialDomain const& a, RadialDomain const& b, Vec const& x0)
{
    auto const r = common_radii(a, b, x0);
    double mu = 1;
    for (std::size_t i = 0; i < r.a.size(); ++i)
        mu = std::min({mu, r.a[i] / r.b[i], r.b[i] / r.a[i]});
    return mu;
}

double triangle_metric(RadialDomain const& a, RadialDomain const& b, Vec const& x0)
{
    return std::abs(std::log(scaling_factor(a, b, x0)));
}

bool inclusion(RadialDomain const& a, RadialDomain const& b, std::vector<double> const& slack)
{
    auto const r = common_radii(a, b, a.center());
    if (!slack.empty() && slack.size() != r.a.size())
        throw Error("inclusion: slack must have one entry per direction");
    for (std::size_t i = 0; i < r.a.size(); ++i)
    {
        double const s = slack.empty() ? 0.0 : slack[i];
        if (r.a[i] > r.b[i] + s)
            return false;
    }
    return true;
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
