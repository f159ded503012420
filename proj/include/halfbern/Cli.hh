//---------------------------------------------------------------------------//
//! \file halfbern/Cli.hh
//! \brief Command-line entry point
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace halfbern
{
//---------------------------------------------------------------------------//
/*!
 * Run the command line (args[0] is the program name).
 *
 * Exit codes: 0 success, 1 a check failed or the solver did not converge,
 * 2 usage or configuration error.
 */
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

int run(int argc, char const* const* argv);

//---------------------------------------------------------------------------//
}  // namespace halfbern
