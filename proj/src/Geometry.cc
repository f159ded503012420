//---------------------------------------------------------------------------//
//! \file Geometry.cc
//---------------------------------------------------------------------------//
#include "halfbern/Geometry.hh"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace halfbern
{
namespace
{
constexpr double two_pi = 2 * std::numbers::pi;

double cross2(Vec const& a, Vec const& b)
{
    return a[0] * b[1] - a[1] * b[0];
}

double segment_distance(Vec const& x, Vec const& a, Vec const& b)
{
    Vec const ab = b - a;
    Vec const ax = x - a;
    double const len2 = dot(ab, ab);
    double s = len2 > 0 ? dot(ax, ab) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return norm(ax - s * ab);
}

}  // namespace

//---------------------------------------------------------------------------//
// DIRECTION GRID
//---------------------------------------------------------------------------//
std::size_t DirectionGrid::default_size(int dim)
{
    switch (dim)
    {
        case 1:
            return 2;
        case 2:
            return 256;
        case 3:
            return 1024;
        default:
            throw Error("dimension must be 1, 2 or 3");
    }
}

DirectionGrid DirectionGrid::uniform(int dim, std::size_t n)
{
    if (n == 0)
        n = default_size(dim);

    DirectionGrid g;
    g.dim_ = dim;
    if (dim == 1)
    {
        if (n != 2)
            throw Error("a one-dimensional direction grid has exactly 2 points");
        g.dirs_ = {Vec{1.0}, Vec{-1.0}};
    }
    else if (dim == 2)
    {
        if (n < 3)
            throw Error("planar direction grid needs at least 3 angles");
        g.h_ = two_pi / static_cast<double>(n);
        g.dirs_.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            g.dirs_.push_back(polar(g.h_ * static_cast<double>(i)));
    }
    else if (dim == 3)
    {
        if (n < 4)
            throw Error("spherical direction grid needs at least 4 points");
        double const golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        g.dirs_.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            double const z = 1.0
                             - (2.0 * static_cast<double>(i) + 1.0)
                                   / static_cast<double>(n);
            double const r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double const phi = golden * static_cast<double>(i);
            g.dirs_.push_back(Vec{r * std::cos(phi), r * std::sin(phi), z});
        }
    }
    else
    {
        throw Error("dimension must be 1, 2 or 3");
    }
    return g;
}

DirectionGrid DirectionGrid::from_angles(std::vector<double> const& angles)
{
    std::size_t const n = angles.size();
    if (n < 3)
        throw Error("planar direction grid needs at least 3 angles");
    double const h = two_pi / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const expected = angles[0] + h * static_cast<double>(i);
        if (std::abs(angles[i] - expected) > 1e-9)
            throw Error("planar grid angles must be equally spaced and ascending");
    }
    DirectionGrid g;
    g.dim_ = 2;
    g.h_ = h;
    g.phi0_ = angles[0];
    g.dirs_.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        g.dirs_.push_back(polar(g.phi0_ + h * static_cast<double>(i)));
    return g;
}

DirectionGrid DirectionGrid::from_directions(int dim, std::vector<Vec> dirs)
{
    if (dim == 2)
        throw Error("planar grids are specified by angles");
    for (auto const& d : dirs)
    {
        if (d.dim() != dim)
            throw Error("direction has wrong dimension");
        if (std::abs(norm(d) - 1.0) > 1e-12)
            throw Error("grid directions must have unit length");
    }
    for (std::size_t i = 0; i < dirs.size(); ++i)
        for (std::size_t j = i + 1; j < dirs.size(); ++j)
            if (distance(dirs[i], dirs[j]) < 1e-12)
                throw Error("grid directions must be pairwise distinct");
    if (dim == 1 && dirs.size() != 2)
        throw Error("a one-dimensional direction grid has exactly 2 points");

    DirectionGrid g;
    g.dim_ = dim;
    g.dirs_ = std::move(dirs);
    return g;
}

double DirectionGrid::angle(std::size_t i) const
{
    if (dim_ != 2)
        throw Error("angles are defined for planar grids only");
    return phi0_ + h_ * static_cast<double>(i);
}

auto DirectionGrid::locate(Vec const& unit) const -> Stencil
{
    Stencil s;
    if (dim_ == 2)
    {
        auto const n = static_cast<double>(dirs_.size());
        double u = (std::atan2(unit[1], unit[0]) - phi0_) / h_;
        u = std::fmod(u, n);
        if (u < 0)
            u += n;
        double lo = std::floor(u);
        if (lo >= n)
            lo = 0;
        s.lo = static_cast<std::size_t>(lo);
        s.hi = (s.lo + 1) % dirs_.size();
        s.weight_hi = std::clamp(u - lo, 0.0, 1.0);
        return s;
    }
    // Nearest direction by largest dot product
    double best = -2;
    for (std::size_t i = 0; i < dirs_.size(); ++i)
    {
        double const c = dot(dirs_[i], unit);
        if (c > best)
        {
            best = c;
            s.lo = s.hi = i;
        }
    }
    return s;
}

bool operator==(DirectionGrid const& a, DirectionGrid const& b)
{
    return a.dim_ == b.dim_ && a.dirs_ == b.dirs_;
}

//---------------------------------------------------------------------------//
// RADIAL DOMAIN
//---------------------------------------------------------------------------//
RadialDomain::RadialDomain(Vec center, DirectionGrid grid, std::vector<double> radii)
    : center_(center), grid_(std::move(grid)), radii_(std::move(radii))
{
    if (grid_.dim() != center_.dim())
        throw Error("grid and center dimensions differ");
    if (radii_.size() != grid_.size())
        throw Error("radius table does not match the direction grid");
    for (double r : radii_)
        if (!(r > 0) || !std::isfinite(r))
            throw Error("radial domain radii must be positive and finite");

    auto [lo, hi] = std::minmax_element(radii_.begin(), radii_.end());
    rmin_ = *lo;
    rmax_ = *hi;
    is_ball_ = (rmin_ == rmax_);
    build_cache();
}

RadialDomain RadialDomain::ball(Vec const& center, double radius, std::size_t n)
{
    if (!(radius > 0))
        throw Error("ball radius must be positive");
    auto grid = DirectionGrid::uniform(center.dim(), n);
    std::vector<double> radii(grid.size(), radius);
    return RadialDomain(center, std::move(grid), std::move(radii));
}

RadialDomain
RadialDomain::from_function(Vec const& center,
                            DirectionGrid grid,
                            std::function<double(Vec const&)> const& radius_of)
{
    std::vector<double> radii;
    radii.reserve(grid.size());
    for (auto const& d : grid.directions())
        radii.push_back(radius_of(d));
    return RadialDomain(center, std::move(grid), std::move(radii));
}

void RadialDomain::build_cache()
{
    if (dim() != 2 || is_ball_)
        return;
    std::size_t const n = size();
    std::size_t const m = subdivisions_;
    double const h = grid_.spacing();

    vertices_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        vertices_[i] = boundary_point(i);

    auto curve = [&](std::size_t j, double frac) {
        double const rho = (1 - frac) * radii_[j] + frac * radii_[(j + 1) % n];
        return center_ + rho * polar(grid_.angle(j) + frac * h);
    };

    sagitta_.assign(n, 0.0);
    sub_sagitta_.assign(n, 0.0);
    sub_vertices_.resize(n * (m + 1));
    for (std::size_t j = 0; j < n; ++j)
    {
        Vec const& a = vertices_[j];
        Vec const& b = vertices_[(j + 1) % n];
        for (std::size_t k = 0; k <= m; ++k)
        {
            Vec const p = (k == 0)   ? a
                          : (k == m) ? b
                                     : curve(j, static_cast<double>(k) / m);
            sub_vertices_[j * (m + 1) + k] = p;
            sagitta_[j] = std::max(sagitta_[j], segment_distance(p, a, b));
        }
        for (std::size_t k = 0; k < m; ++k)
        {
            Vec const mid = curve(j, (static_cast<double>(k) + 0.5) / m);
            sub_sagitta_[j] = std::max(
                sub_sagitta_[j],
                segment_distance(mid,
                                 sub_vertices_[j * (m + 1) + k],
                                 sub_vertices_[j * (m + 1) + k + 1]));
        }
        // Sampled deviations underestimate the supremum slightly
        double const pad = 1e-14 * rmax_;
        sagitta_[j] = 1.5 * sagitta_[j] + pad;
        sub_sagitta_[j] = 1.5 * sub_sagitta_[j] + pad;
    }
}

double RadialDomain::radius_at(Vec const& unit) const
{
    auto const s = grid_.locate(unit);
    return (1 - s.weight_hi) * radii_[s.lo] + s.weight_hi * radii_[s.hi];
}

bool RadialDomain::contains(Vec const& x) const
{
    Vec const d = x - center_;
    double const r = norm(d);
    if (r == 0)
        return true;
    return r < radius_at(d * (1 / r));
}

bool RadialDomain::contains_closed(Vec const& x) const
{
    Vec const d = x - center_;
    double const r = norm(d);
    if (r == 0)
        return true;
    return r <= radius_at(d * (1 / r));
}

Vec RadialDomain::boundary_point(Vec const& unit) const
{
    return center_ + radius_at(unit) * unit;
}

Vec RadialDomain::boundary_point(std::size_t i) const
{
    return center_ + radii_[i] * grid_.direction(i);
}

Vec RadialDomain::inward_normal(Vec const& unit) const
{
    if (dim() == 1)
        return -unit;
    if (dim() != 2)
        throw Error("inward normals are implemented for d = 1 and d = 2 only");

    double const phi = std::atan2(unit[1], unit[0]);
    double const h = grid_.spacing();
    double const rho = radius_at(unit);
    double const drho = (radius_at(polar(phi + h)) - radius_at(polar(phi - h)))
                        / (2 * h);
    Vec const radial = polar(phi);
    Vec const tangential{-radial[1], radial[0]};
    Vec const outward = rho * radial - drho * tangential;
    return outward * (-1 / norm(outward));
}

Vec RadialDomain::inward_normal(std::size_t i) const
{
    if (dim() == 1)
        return -grid_.direction(i);
    if (dim() != 2)
        throw Error("inward normals are implemented for d = 1 and d = 2 only");

    std::size_t const n = size();
    double const h = grid_.spacing();
    double const rho = radii_[i];
    double const drho = (radii_[(i + 1) % n] - radii_[(i + n - 1) % n]) / (2 * h);
    Vec const& radial = grid_.direction(i);
    Vec const tangential{-radial[1], radial[0]};
    Vec const outward = rho * radial - drho * tangential;
    return outward * (-1 / norm(outward));
}

double RadialDomain::boundary_distance_bound(Vec const& x) const
{
    if (dim() == 1)
    {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < size(); ++i)
            best = std::min(best, std::abs(x[0] - boundary_point(i)[0]));
        return best;
    }
    if (is_ball_)
        return std::abs(rmax_ - distance(x, center_));
    if (dim() == 2)
        return planar_distance_bound(x);
    throw Error("boundary distance for non-ball domains needs d <= 2");
}

double RadialDomain::planar_distance_bound(Vec const& x) const
{
    std::size_t const n = size();
    std::size_t const m = subdivisions_;
    double best = std::numeric_limits<double>::infinity();

    // Visit segments outward from the one under x so that pruning bites early
    std::size_t start = 0;
    Vec const offset = x - center_;
    if (double const r = norm(offset); r > 0)
        start = grid_.locate(offset * (1 / r)).lo;
    for (std::size_t step = 0; step < n; ++step)
    {
        std::size_t const delta = (step + 1) / 2;
        std::size_t const j = step % 2 == 1 ? (start + delta) % n
                                            : (start + n - delta % n) % n;
        double const coarse = segment_distance(x, vertices_[j], vertices_[(j + 1) % n])
                              - sagitta_[j];
        if (coarse >= best)
            continue;
        Vec const* sub = &sub_vertices_[j * (m + 1)];
        double fine = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < m; ++k)
            fine = std::min(fine, segment_distance(x, sub[k], sub[k + 1]));
        best = std::min(best, fine - sub_sagitta_[j]);
    }
    if (best > 0)
        return best;

    // Within the sagitta band: fall back to the radial gap projected on the
    // local normal, halved.
    Vec const d = x - center_;
    double const r = norm(d);
    if (r == 0)
        return rmin_;
    Vec const unit = d * (1 / r);
    Vec const normal = inward_normal(unit);
    return 0.5 * std::abs(radius_at(unit) - r) * std::abs(dot(normal, unit));
}

RadialDomain RadialDomain::scaled(double s) const
{
    if (!(s > 0))
        throw Error("scale factor must be positive");
    std::vector<double> radii = radii_;
    for (auto& r : radii)
        r *= s;
    return RadialDomain(center_ * s, grid_, std::move(radii));
}

RadialDomain RadialDomain::with_radii(std::vector<double> radii) const
{
    return RadialDomain(center_, grid_, std::move(radii));
}

//---------------------------------------------------------------------------//
// SIMPLE TYPES
//---------------------------------------------------------------------------//
void BallSpec::validate() const
{
    if (!(radius > 0))
        throw Error("ball radius must be positive");
}

void Halfspace::validate() const
{
    if (std::abs(norm(normal) - 1.0) > 1e-12)
        throw Error("half-space normal must have unit length");
}

//---------------------------------------------------------------------------//
// FREE FUNCTIONS
//---------------------------------------------------------------------------//
bool contains(RadialDomain const& dom, Vec const& x)
{
    require_same_dim(dom.center(), x, "contains");
    return dom.contains(x);
}

Vec boundary_point(RadialDomain const& dom, Vec const& unit)
{
    require_same_dim(dom.center(), unit, "boundary_point");
    return dom.boundary_point(unit);
}

Vec inward_normal(RadialDomain const& dom, Vec const& unit)
{
    require_same_dim(dom.center(), unit, "inward_normal");
    return dom.inward_normal(unit);
}

std::vector<Vec> boundary_samples(RadialDomain const& dom, std::size_t samples)
{
    std::vector<Vec> pts;
    if (samples == 0 || dom.dim() != 2)
    {
        pts.reserve(dom.size());
        for (std::size_t i = 0; i < dom.size(); ++i)
            pts.push_back(dom.boundary_point(i));
        return pts;
    }
    pts.reserve(samples);
    double const phi0 = dom.grid().angle_offset();
    for (std::size_t k = 0; k < samples; ++k)
    {
        double const phi = phi0 + two_pi * static_cast<double>(k)
                                      / static_cast<double>(samples);
        pts.push_back(dom.boundary_point(polar(phi)));
    }
    return pts;
}

double boundary_distance(RadialDomain const& a, RadialDomain const& b, std::size_t samples)
{
    require_same_dim(a.center(), b.center(), "boundary_distance");
    auto const pa = boundary_samples(a, samples);
    auto const pb = boundary_samples(b, samples);
    double best = std::numeric_limits<double>::infinity();
    for (auto const& p : pa)
        for (auto const& q : pb)
            best = std::min(best, distance(p, q));
    return best;
}

double interior_ball_radius(RadialDomain const& dom)
{
    if (dom.is_ball())
        return dom.max_radius();
    if (dom.dim() != 2)
        throw Error("interior ball radius needs d = 2 unless the domain is a ball");
    if (dom.size() < 64)
        throw Error("interior ball radius needs at least 64 boundary samples");

    // Linear interpolation in angle leaves small kinks at the nodes, so a
    // ball is accepted when it clears the densely sampled boundary up to a
    // relative slack.
    constexpr double slack = 1e-3;
    auto const dense = boundary_samples(dom, 4 * dom.size());
    std::vector<Vec> feet(dom.size());
    std::vector<Vec> normals(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i)
    {
        feet[i] = dom.boundary_point(i);
        normals[i] = dom.inward_normal(i);
    }

    auto fits = [&](double r) {
        double const min_sq = (r * (1 - slack)) * (r * (1 - slack));
        for (std::size_t i = 0; i < dom.size(); ++i)
        {
            Vec const c = feet[i] + r * normals[i];
            if (!dom.contains(c))
                return false;
            for (auto const& p : dense)
                if (distance_sq(c, p) < min_sq)
                    return false;
        }
        return true;
    };

    double lo = 0;
    double hi = dom.max_radius();
    while (hi - lo > 1e-9 * dom.max_radius())
    {
        double const mid = 0.5 * (lo + hi);
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

std::vector<Vec> convex_hull(std::span<Vec const> points)
{
    std::vector<Vec> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Vec const& a, Vec const& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        return pts;

    std::vector<Vec> hull(2 * pts.size());
    std::size_t k = 0;
    for (auto const& p : pts)
    {
        while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0)
            --k;
        hull[k++] = p;
    }
    std::size_t const lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it)
    {
        while (k >= lower && cross2(hull[k - 1] - hull[k - 2], *it - hull[k - 2]) <= 0)
            --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

bool convex_polygon_contains(std::span<Vec const> hull, Vec const& x, double slack)
{
    if (hull.empty())
        return false;
    if (hull.size() == 1)
        return distance(hull[0], x) <= slack;
    if (hull.size() == 2)
        return segment_distance(x, hull[0], hull[1]) <= slack;
    for (std::size_t i = 0; i < hull.size(); ++i)
    {
        Vec const& a = hull[i];
        Vec const& b = hull[(i + 1) % hull.size()];
        Vec const edge = b - a;
        if (cross2(edge, x - a) / norm(edge) < -slack)
            return false;
    }
    return true;
}

bool convex_hull_contains(RadialDomain const& dom, Vec const& x)
{
    if (dom.dim() != 2)
        throw Error("convex hull containment is implemented for d = 2 only");
    require_same_dim(dom.center(), x, "convex_hull_contains");
    auto const pts = boundary_samples(dom);
    auto const hull = convex_hull(pts);
    return convex_polygon_contains(hull, x);
}

Vec reflect(Vec const& x, Halfspace const& h)
{
    require_same_dim(x, h.normal, "reflect");
    return x - (2 * dot(x, h.normal)) * h.normal + (2 * h.offset) * h.normal;
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
