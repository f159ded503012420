//---------------------------------------------------------------------------//
//! \file halfbern.cc
//---------------------------------------------------------------------------//
#include "halfbern/Cli.hh"

int main(int argc, char** argv)
{
    return halfbern::run(argc, argv);
}
