//---------------------------------------------------------------------------//
//! \file halfbern/BoundaryDerivative.hh
//! \brief Estimate of D^{1/2} u(x) = lim u(x + t n)/sqrt(t) from probe values
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <vector>

#include "StableKernel.hh"

namespace halfbern
{
//---------------------------------------------------------------------------//
//! Geometric probe grid t_k = t_0 ratio^k, t_0 = fraction * dist(x, dK)
struct TGridRule
{
    double fraction = 0.08;
    double ratio = 0.5;
    int points = 5;

    void validate() const;
    std::vector<double> make(double local_gap) const;
};

//---------------------------------------------------------------------------//
/*!
 * Extrapolated value of q(t) = u(x + t n)/sqrt(t) at t = 0.
 *
 * The fit is q = a + b t by weighted least squares. When the intercept comes
 * out non-positive (noise dominates at the smallest t) the estimator falls
 * back to the weighted mean of q and flags it.
 */
struct DerivativeEstimate
{
    double value = 0;
    double std_error = 0;
    double slope = 0;
    double slope_error = 0;
    bool constant_fit = false;
    std::vector<double> t_grid;
    std::vector<double> quotients;
    std::vector<double> quotient_errors;
    std::vector<Estimate> samples;
};

using ProbeFunction = std::function<Estimate(Vec const&, std::size_t)>;

// Fit probe values u(x + t_k n) (with standard errors) on a fixed t grid
DerivativeEstimate fit_dhalf(std::vector<double> const& t_grid,
                             std::vector<Estimate> const& samples);

// Evaluate the probe at x + t n for each t and fit; probe(y, k) gets the index
DerivativeEstimate estimate_dhalf(Vec const& x,
                                  Vec const& normal,
                                  std::vector<double> const& t_grid,
                                  ProbeFunction const& probe);

// Monte Carlo version; probe k uses seed derive_seed(cfg.base_seed, {k})
DerivativeEstimate estimate_dhalf(Vec const& x,
                                  Vec const& normal,
                                  SolveRegion const& region,
                                  WalkConfig const& cfg,
                                  std::vector<double> const& t_grid);

// Same, with the t grid built from dist(x, dK)
DerivativeEstimate estimate_dhalf(Vec const& x,
                                  Vec const& normal,
                                  SolveRegion const& region,
                                  WalkConfig const& cfg,
                                  TGridRule const& rule = {});

//---------------------------------------------------------------------------//
}  // namespace halfbern
