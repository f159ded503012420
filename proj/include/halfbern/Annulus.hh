//---------------------------------------------------------------------------//
//! \file halfbern/Annulus.hh
//! \brief Capacitary barrier on a concentric annulus and its D^{1/2} bracket
//---------------------------------------------------------------------------//
#pragma once

#include "Geometry.hh"
#include "StableKernel.hh"

namespace halfbern
{
//---------------------------------------------------------------------------//
/*!
 * Concentric pair B_r(x0) inside B_R(x0).
 *
 * The barrier b is (-Delta)^{1/2}-harmonic in the open annulus, equal to 1
 * on the closed inner ball and 0 outside the outer ball.
 */
struct AnnulusSpec
{
    Vec center;
    double r = 1;
    double R = 2;

    int dim() const { return center.dim(); }
    void validate() const;

    //! Boundary point x0 + R e_1 where the derivative is taken
    Vec outer_point() const;
};

// Radial grid used for both balls of the annulus in walk estimates
RadialDomain inner_ball(AnnulusSpec const& spec);
RadialDomain outer_ball(AnnulusSpec const& spec);

// Walk-on-spheres estimate of b(x) for r < |x - x0| < R
Estimate barrier_value(AnnulusSpec const& spec, Vec const& x, WalkConfig const& cfg);

// Explicit constant of the lower bound: 2/pi for d = 1, C_d for d >= 2
double lemma_constant(int dim);

// C_d/sqrt(R-r) (r/R)^{d-1/2}
double derivative_lower_bound(AnnulusSpec const& spec);

// 1/sqrt(R-r), sharpened for d = 1
double derivative_upper_bound(AnnulusSpec const& spec);

// Quadrature of the strict lower-bound integral at x0 + R e_1 (d = 1, 2)
double form1_quadrature(AnnulusSpec const& spec, double rel_tol = 1e-6);

//---------------------------------------------------------------------------//
}  // namespace halfbern
