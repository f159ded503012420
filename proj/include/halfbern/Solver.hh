//---------------------------------------------------------------------------//
//! \file halfbern/Solver.hh
//! \brief Trial free-boundary iteration for the exterior Bernoulli problem
//---------------------------------------------------------------------------//
#pragma once

#include <vector>

#include "BoundaryDerivative.hh"
#include "Geometry.hh"
#include "StableKernel.hh"

namespace halfbern
{
//---------------------------------------------------------------------------//
struct SolverConfig
{
    double tol_fb = 0.05;  //!< relative residual target
    int max_outer_iters = 40;
    double damping = 0.6;
    int smoothing_window = 5;  //!< odd; 1 disables smoothing
    double offset_cap = 10;  //!< initial offset <= offset_cap * r_K
    double offset_floor = 0.1;  //!< initial offset >= offset_floor / lambda^2
    WalkConfig walk;
    TGridRule t_grid;

    void validate() const;
};

//! Per-iteration diagnostics
struct SolverStep
{
    double residual = 0;  //!< on the smoothed derivative
    double raw_residual = 0;
    double min_gap = 0;
};

/*!
 * Approximate (Omega_lambda, u_lambda).
 *
 * \c derivative holds the raw per-direction estimates at the returned
 * domain, \c radius_error the induced radial uncertainty
 * 2 (rho - rho_K) sigma_D / D.
 */
struct BernoulliSolution
{
    double lambda = 0;
    RadialDomain domain;
    std::vector<DerivativeEstimate> derivative;
    std::vector<double> radius_error;
    double residual = 0;
    double raw_residual = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<SolverStep> history;
    SolverConfig config;

    //! Pooled relative error of D over directions
    double pooled_relative_error() const;
};

// r_K of the core; planar cores use the trigonometric interpolant of
// their radii
double core_inner_radius(RadialDomain const& core);

// K's radii plus a uniform offset min(1/lambda^2, cap r_K), floored
RadialDomain initial_guess(RadialDomain const& core,
                           double lambda,
                           SolverConfig const& cfg = {});

// Uniform offset used by initial_guess
double initial_offset(RadialDomain const& core, double lambda, SolverConfig const& cfg = {});

// Circular centered moving average (window clamped to the grid size)
std::vector<double> circular_smooth(std::vector<double> const& values, int window);

// Solve D^{1/2}_Omega u = lambda on dOmega for the given core (d = 1, 2)
BernoulliSolution solve(RadialDomain const& core, double lambda, SolverConfig const& cfg);

//---------------------------------------------------------------------------//
}  // namespace halfbern
