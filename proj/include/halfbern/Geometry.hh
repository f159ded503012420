//---------------------------------------------------------------------------//
//! \file halfbern/Geometry.hh
//! \brief Star-shaped domains in radial form, balls, hulls and reflections
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "Vec.hh"

namespace halfbern
{
//---------------------------------------------------------------------------//
/*!
 * Discretization of the unit sphere S^{d-1}.
 *
 * - d = 1: the two directions {+1, -1}
 * - d = 2: n equally spaced angles phi_i = phi_0 + 2 pi i / n
 * - d = 3: Fibonacci lattice with n points
 */
class DirectionGrid
{
  public:
    //! Interpolation stencil: value = (1-w) f[lo] + w f[hi]
    struct Stencil
    {
        std::size_t lo = 0;
        std::size_t hi = 0;
        double weight_hi = 0;
    };

    //! Default grid size per dimension (2, 256, 1024)
    static std::size_t default_size(int dim);

    // Standard grid; n = 0 selects the default size
    static DirectionGrid uniform(int dim, std::size_t n = 0);

    // Planar grid from explicit angles (must be equally spaced, ascending)
    static DirectionGrid from_angles(std::vector<double> const& angles);

    // Grid from explicit unit directions (d = 1 or 3)
    static DirectionGrid from_directions(int dim, std::vector<Vec> dirs);

    DirectionGrid() = default;

    int dim() const { return dim_; }
    std::size_t size() const { return dirs_.size(); }
    Vec const& direction(std::size_t i) const { return dirs_[i]; }
    std::vector<Vec> const& directions() const { return dirs_; }

    //!@{
    //! Planar grids only
    double angle(std::size_t i) const;
    double angle_offset() const { return phi0_; }
    double spacing() const { return h_; }
    //!@}

    // Locate a unit direction: linear stencil for d = 2, nearest otherwise
    Stencil locate(Vec const& unit) const;

    friend bool operator==(DirectionGrid const& a, DirectionGrid const& b);

  private:
    int dim_ = 0;
    std::vector<Vec> dirs_;
    double phi0_ = 0;
    double h_ = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Domain that is star-shaped about its center, stored as boundary radii.
 *
 * The boundary is x0 + rho(theta) theta where rho is tabulated on a
 * DirectionGrid and interpolated linearly in angle (d = 2) or by nearest
 * grid direction (d = 3). Because the boundary map is a graph over the
 * sphere, every such domain is star-shaped about x0.
 *
 * In the plane the piecewise-linear-in-angle boundary is approximated by
 * chords with a precomputed sagitta bound, which gives a cheap certified
 * lower bound on the distance to the boundary for walk-on-spheres steps.
 */
class RadialDomain
{
  public:
    RadialDomain() = default;
    RadialDomain(Vec center, DirectionGrid grid, std::vector<double> radii);

    // Ball as a radial domain (exact: all radii equal)
    static RadialDomain ball(Vec const& center, double radius, std::size_t n = 0);

    // Tabulate an arbitrary radius function on the grid
    static RadialDomain
    from_function(Vec const& center,
                  DirectionGrid grid,
                  std::function<double(Vec const&)> const& radius_of);

    //// ACCESSORS ////

    int dim() const { return center_.dim(); }
    Vec const& center() const { return center_; }
    DirectionGrid const& grid() const { return grid_; }
    std::vector<double> const& radii() const { return radii_; }
    std::size_t size() const { return radii_.size(); }
    double min_radius() const { return rmin_; }
    double max_radius() const { return rmax_; }

    //! True when every stored radius is identical (an exact ball)
    bool is_ball() const { return is_ball_; }

    //// GEOMETRY ////

    // Interpolated radius along a unit direction
    double radius_at(Vec const& unit) const;

    // Open-set membership |x - x0| < rho(theta_x)
    bool contains(Vec const& x) const;

    // Closed-set membership |x - x0| <= rho(theta_x)
    bool contains_closed(Vec const& x) const;

    // Boundary point along a unit direction or at grid node i
    Vec boundary_point(Vec const& unit) const;
    Vec boundary_point(std::size_t i) const;

    // Inward unit normal (d = 1 or 2)
    Vec inward_normal(Vec const& unit) const;
    Vec inward_normal(std::size_t i) const;

    // Lower bound on dist(x, boundary), exact for balls and intervals
    double boundary_distance_bound(Vec const& x) const;

    //// DERIVED DOMAINS ////

    // Image under x -> s x (center and radii scale)
    RadialDomain scaled(double s) const;
    RadialDomain with_radii(std::vector<double> radii) const;

  private:
    Vec center_;
    DirectionGrid grid_;
    std::vector<double> radii_;
    double rmin_ = 0;
    double rmax_ = 0;
    bool is_ball_ = false;

    // Planar chord cache
    static constexpr std::size_t subdivisions_ = 16;
    std::vector<Vec> vertices_;
    std::vector<double> sagitta_;
    std::vector<Vec> sub_vertices_;
    std::vector<double> sub_sagitta_;

    void build_cache();
    double planar_distance_bound(Vec const& x) const;
};

//---------------------------------------------------------------------------//
//! Open ball B_r(center)
struct BallSpec
{
    Vec center;
    double radius = 1;

    void validate() const;
};

//---------------------------------------------------------------------------//
//! Open half-space {x : x . e > offset} with unit normal e
struct Halfspace
{
    Vec normal;
    double offset = 0;

    void validate() const;
    bool contains(Vec const& x) const { return dot(x, normal) > offset; }
};

//---------------------------------------------------------------------------//
// FREE FUNCTIONS
//---------------------------------------------------------------------------//

// Membership test with dimension checking
bool contains(RadialDomain const& dom, Vec const& x);

// x0 + rho(theta) theta
Vec boundary_point(RadialDomain const& dom, Vec const& unit);

// Inward normal from central differences of rho (planar domains)
Vec inward_normal(RadialDomain const& dom, Vec const& unit);

// Boundary samples: the grid nodes (samples = 0) or a uniform planar resample
std::vector<Vec> boundary_samples(RadialDomain const& dom, std::size_t samples = 0);

// Minimum pairwise distance between sampled boundaries
double boundary_distance(RadialDomain const& a,
                         RadialDomain const& b,
                         std::size_t samples = 0);

// Largest uniform interior ball radius (balls: exact; otherwise d = 2)
double interior_ball_radius(RadialDomain const& dom);

// Convex hull (counterclockwise) of planar points
std::vector<Vec> convex_hull(std::span<Vec const> points);

// Point-in-convex-polygon test with absolute slack on the edges
bool convex_polygon_contains(std::span<Vec const> hull,
                             Vec const& x,
                             double slack = 1e-9);

// Membership in the convex hull of the sampled boundary
bool convex_hull_contains(RadialDomain const& dom, Vec const& x);

// Mirror image across the boundary hyperplane of h
Vec reflect(Vec const& x, Halfspace const& h);

// Unit vector at planar angle phi
inline Vec polar(double phi)
{
    return Vec{std::cos(phi), std::sin(phi)};
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
