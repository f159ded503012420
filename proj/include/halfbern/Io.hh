//---------------------------------------------------------------------------//
//! \file halfbern/Io.hh
//! \brief JSON, CSV and SVG input/output
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "Bounds.hh"
#include "Solver.hh"
#include "Verify.hh"

namespace halfbern
{
using Json = nlohmann::ordered_json;

//---------------------------------------------------------------------------//
// DOMAINS
//---------------------------------------------------------------------------//

// {dimension, center, angles_or_directions, radii}
Json to_json(RadialDomain const& dom);
RadialDomain radial_domain_from_json(Json const& j);

/*!
 * Core specification: a serialized RadialDomain or one of the shorthands
 *
 *   {"type": "ball", "center": [...], "radius": r, "directions": n}
 *   {"type": "ellipse", "center": [x, y], "a": a, "b": b, "directions": n}
 */
RadialDomain domain_from_spec(Json const& j);

RadialDomain ellipse_domain(Vec const& center, double a, double b, std::size_t n);

// CSV: theta_index, x_1..x_d
void write_boundary_csv(std::ostream& os, RadialDomain const& dom);

//---------------------------------------------------------------------------//
// CONFIG, SOLUTIONS, REPORTS
//---------------------------------------------------------------------------//

// Thread count is scheduling only and is not serialized
Json to_json(WalkConfig const& cfg);
Json to_json(SolverConfig const& cfg);
WalkConfig walk_config_from_json(Json const& j, WalkConfig base = {});
SolverConfig solver_config_from_json(Json const& j, SolverConfig base = {});

Json to_json(DerivativeEstimate const& d);
Json to_json(BernoulliSolution const& s);
BernoulliSolution solution_from_json(Json const& j);

Json to_json(CheckResult const& c);
CheckResult check_from_json(Json const& j);
Json to_json(SolutionSummary const& s);
SolutionSummary summary_from_json(Json const& j);
Json to_json(VerificationReport const& r);
VerificationReport report_from_json(Json const& j);

Json to_json(BoundReport const& b);

//---------------------------------------------------------------------------//
// PROVENANCE AND TABLES
//---------------------------------------------------------------------------//

// 64-bit FNV-1a as 16 hex digits
std::string fnv1a_hex(std::string const& bytes);

// {tool, version, seed, config_hash}
Json provenance(std::uint64_t seed, Json const& config);

// "# halfbern <version> seed=<seed> config=<hash>"
std::string provenance_comment(std::uint64_t seed, Json const& config);

// lambda, dist, g_exact, upper, triangle, residual
void write_summary_csv(std::ostream& os, VerificationReport const& r);

// Core, free boundaries and (optionally) inward normal rays
void write_svg(std::ostream& os,
               RadialDomain const& core,
               std::vector<BernoulliSolution> const& solutions,
               bool rays);

// Read a whole file or throw
std::string read_file(std::string const& path);
Json read_json(std::string const& path);

//---------------------------------------------------------------------------//
}  // namespace halfbern
