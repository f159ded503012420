//---------------------------------------------------------------------------//
//! \file halfbern/Verify.hh
//! \brief Statistical checks of the theorem-level claims and report assembly
//---------------------------------------------------------------------------//
#pragma once

#include <string>
#include <vector>

#include "Geometry.hh"
#include "Solver.hh"
#include "StableKernel.hh"

namespace halfbern
{
//---------------------------------------------------------------------------//
enum class Verdict
{
    pass,
    fail,
    inconclusive
};

char const* to_string(Verdict v);
Verdict verdict_from_string(std::string const& s);

/*!
 * Outcome of one check.
 *
 * \c margin is positive on the passing side; \c sigma is the Monte Carlo
 * standard error it was compared against and \c tolerance the multiple of
 * sigma (or absolute slack) used.
 */
struct CheckResult
{
    std::string name;
    Verdict status = Verdict::pass;
    double margin = 0;
    double sigma = 0;
    double tolerance = 3;
    std::string note;
};

//---------------------------------------------------------------------------//
// SOLUTION CHECKS
//---------------------------------------------------------------------------//

// Omega_{lambda_i} strictly contains Omega_{lambda_j} for lambda_i < lambda_j
CheckResult check_monotonicity(std::vector<BernoulliSolution> const& solutions);

// triangle metric <= 2 |ln lambda_2 - ln lambda_1| + 3 sigma
CheckResult check_triangle_bound(BernoulliSolution const& s1,
                                 BernoulliSolution const& s2,
                                 Vec const& x0);

// g_exact - 3 sigma <= dist(dOmega, dK) <= 1/lambda^2 + 3 sigma
CheckResult check_distance_bounds(BernoulliSolution const& s, RadialDomain const& core);

// dist(dOmega_lambda, dK) decreasing along increasing lambda
CheckResult check_distance_trend(std::vector<BernoulliSolution> const& solutions,
                                 RadialDomain const& core);

// Inward normal rays from every node meet conv(K); tangents for the control
CheckResult check_normal_rays(BernoulliSolution const& s,
                              RadialDomain const& core,
                              bool use_tangents = false);

// Largest rho with the boundary polygon starshaped about B_rho(center)
double starshaped_ball_radius(RadialDomain const& dom);

// Omega starshaped about every ball about x0 that K is starshaped about
CheckResult check_ball_starshaped(BernoulliSolution const& s, RadialDomain const& core);

// Angular margin of the ray x + t d (t >= 0) against a convex polygon
double ray_hull_margin(std::vector<Vec> const& hull, Vec const& x, Vec const& dir);

// u > 0 just inside dOmega at every node (strictly positive hit counts)
CheckResult check_interior_positivity(BernoulliSolution const& s,
                                      RadialDomain const& core,
                                      WalkConfig const& cfg);

//---------------------------------------------------------------------------//
// MOVING PLANES
//---------------------------------------------------------------------------//

struct MovingPlaneProfile
{
    Vec direction;
    double t1 = 0;
    double t0 = 0;
    bool omega_touch = false;
    bool omega_perpendicular = false;
    bool core_touch = false;
    bool core_perpendicular = false;
};

// Critical plane positions t1 >= t0 for direction e (d = 2)
MovingPlaneProfile moving_plane_profile(RadialDomain const& omega,
                                        RadialDomain const& core,
                                        Vec const& e);

// t0 < t1 for every direction
CheckResult check_moving_plane(std::vector<MovingPlaneProfile> const& profiles);

// u o Q_t - u > 0 at sample points of Omega_t minus closure(M_t)
CheckResult check_reflection_positivity(RadialDomain const& omega,
                                        RadialDomain const& core,
                                        Halfspace const& h,
                                        WalkConfig const& cfg,
                                        std::size_t samples = 20);

//---------------------------------------------------------------------------//
// SUITES
//---------------------------------------------------------------------------//

struct SolutionSummary
{
    double lambda = 0;
    bool converged = false;
    int iterations = 0;
    double residual = 0;
    double raw_residual = 0;
    double mean_radius = 0;
    double min_radius = 0;
    double max_radius = 0;
    double dist = 0;
    double g_exact = 0;
    double upper = 0;
    double triangle = 0;  //!< to the next solution in the lambda grid
    double pooled_error = 0;
};

struct VerificationReport
{
    std::string experiment;
    std::string version;
    std::uint64_t seed = 0;
    std::string config_hash;
    RadialDomain core;
    std::vector<double> lambdas;
    std::vector<SolutionSummary> solutions;
    std::vector<CheckResult> checks;

    //! fail if any check failed, else inconclusive if any, else pass
    Verdict overall() const;
};

// Suites: monotonicity, triangle, distance, rays, moving-plane, hopf, all
std::vector<std::string> const& suite_names();

VerificationReport run_suite(std::string const& suite,
                             RadialDomain const& core,
                             std::vector<double> lambdas,
                             SolverConfig const& cfg);

// Same, with solutions computed elsewhere (sorted by lambda)
VerificationReport run_suite(std::string const& suite,
                             RadialDomain const& core,
                             std::vector<BernoulliSolution> const& solutions,
                             SolverConfig const& cfg);

SolutionSummary summarize(BernoulliSolution const& s, RadialDomain const& core);

//---------------------------------------------------------------------------//
}  // namespace halfbern
