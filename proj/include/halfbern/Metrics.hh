//---------------------------------------------------------------------------//
//! \file halfbern/Metrics.hh
//! \brief Starshaped scaling metric and radial inclusion tests
//---------------------------------------------------------------------------//
#pragma once

#include <vector>

#include "Geometry.hh"

namespace halfbern
{
//---------------------------------------------------------------------------//
// Radii of dom about x0 along the directions of grid (bisection on rays)
std::vector<double>
anchored_radii(RadialDomain const& dom, Vec const& x0, DirectionGrid const& grid);

// Largest mu <= 1 with mu (a - x0) inside b - x0 and mu (b - x0) inside a - x0
double scaling_factor(RadialDomain const& a, RadialDomain const& b, Vec const& x0);

// |ln mu*|
double triangle_metric(RadialDomain const& a, RadialDomain const& b, Vec const& x0);

// a inside b: rho_a <= rho_b + slack_i on every grid direction
bool inclusion(RadialDomain const& a,
               RadialDomain const& b,
               std::vector<double> const& slack = {});

//---------------------------------------------------------------------------//
}  // namespace halfbern
