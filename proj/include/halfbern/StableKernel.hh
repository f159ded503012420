//---------------------------------------------------------------------------//
//! \file halfbern/StableKernel.hh
//! \brief Exit law of the Cauchy (1-stable) process from a ball, and
//!        walk-on-spheres estimation of (-Delta)^{1/2}-harmonic functions
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "Geometry.hh"
#include "Random.hh"

namespace halfbern
{
//---------------------------------------------------------------------------//
/*!
 * Monte Carlo run parameters.
 *
 * \c threads only changes scheduling: every walk draws from its own stream
 * keyed by (base_seed, walk index), so results are bit-identical for any
 * thread count.
 */
struct WalkConfig
{
    std::size_t n_walks = 10000;
    std::size_t max_steps = 10000;
    double shrink = 0.95;  //!< WoS ball radius as a fraction of the gap
    std::uint64_t base_seed = 42;
    std::size_t parallel_chunk = 2048;
    unsigned threads = 1;

    void validate() const;
};

enum class WalkLabel
{
    in_core,        //!< landed in the closed core K
    outside_omega,  //!< landed outside the open domain
    censored        //!< hit max_steps
};

char const* to_string(WalkLabel label);

//! Terminal record of a single walk
struct WalkOutcome
{
    Vec terminal;
    WalkLabel label = WalkLabel::censored;
    std::size_t steps = 0;
};

//! Mean of a [0,1]-valued Monte Carlo functional
struct Estimate
{
    double mean = 0;
    double std_error = 0;
    std::size_t n = 0;
    std::size_t hits = 0;
    std::size_t censored = 0;
};

//! Paired (common random number) estimate of u(a) - u(b)
struct PairedEstimate
{
    double mean = 0;
    double std_error = 0;
    Estimate first;
    Estimate second;
};

//---------------------------------------------------------------------------//
// EXIT LAW
//---------------------------------------------------------------------------//

// Normalizing constant Gamma(d/2) pi^{-1-d/2} of the ball Poisson kernel
double poisson_constant(int dim);

// Poisson kernel P(x, y) of (-Delta)^{1/2} in B_rho(y0)
double poisson_kernel(double rho, Vec const& y0, Vec const& x, Vec const& y);

// Radial CDF of the exit point from the center: (2/pi) arccos(rho/s)
double exit_radius_cdf(double rho, double s);

// Inverse of exit_radius_cdf: rho / cos(pi u / 2)
double exit_radius_quantile(double rho, double u);

// Uniform direction on S^{d-1}
Vec sample_direction(int dim, StreamRng& rng);

// Exit point of a walk started at the center of B_rho(y0)
Vec sample_exit(double rho, Vec const& y0, StreamRng& rng);

//---------------------------------------------------------------------------//
// WALKS
//---------------------------------------------------------------------------//

/*!
 * Region U = Omega \ closure(K) on which the walker moves.
 *
 * Both domains must live in the same dimension and K must be a subset of
 * Omega; the region only stores references.
 */
class SolveRegion
{
  public:
    SolveRegion(RadialDomain const& omega, RadialDomain const& core);

    RadialDomain const& omega() const { return *omega_; }
    RadialDomain const& core() const { return *core_; }
    int dim() const { return omega_->dim(); }

    bool contains(Vec const& x) const
    {
        return omega_->contains(x) && !core_->contains_closed(x);
    }

    //! Lower bound on dist(x, boundary of U) for x in U
    double gap(Vec const& x) const
    {
        return std::min(omega_->boundary_distance_bound(x),
                        core_->boundary_distance_bound(x));
    }

  private:
    RadialDomain const* omega_;
    RadialDomain const* core_;
};

// Single walk; deterministic in (cfg.base_seed, walk_index)
WalkOutcome walk(Vec const& start,
                 SolveRegion const& region,
                 WalkConfig const& cfg,
                 std::uint64_t walk_index);

WalkOutcome walk(Vec const& start,
                 RadialDomain const& omega,
                 RadialDomain const& core,
                 WalkConfig const& cfg,
                 std::uint64_t walk_index);

// Visited points of one walk, start included
std::vector<Vec> walk_trace(Vec const& start,
                            SolveRegion const& region,
                            WalkConfig const& cfg,
                            std::uint64_t walk_index);

// CSV dump: walk_index, step, x_1..x_d
void write_walk_traces(std::ostream& os,
                       Vec const& start,
                       SolveRegion const& region,
                       WalkConfig const& cfg,
                       std::size_t count);

// Estimate of u(x) = P(walk lands in K) for x in U
Estimate harmonic_value(Vec const& x, SolveRegion const& region, WalkConfig const& cfg);

Estimate harmonic_value(Vec const& x,
                        RadialDomain const& omega,
                        RadialDomain const& core,
                        WalkConfig const& cfg);

// Same as harmonic_value but returns the boundary data outside U
Estimate potential_value(Vec const& x, SolveRegion const& region, WalkConfig const& cfg);

// u(a) - u(b) with common walk indices for both points
PairedEstimate paired_difference(Vec const& a,
                                 Vec const& b,
                                 SolveRegion const& region,
                                 WalkConfig const& cfg);

//---------------------------------------------------------------------------//
}  // namespace halfbern
