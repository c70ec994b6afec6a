//---------------------------------------------------------------------------//
//! \file hz.cpp
//! Command-line entry point.
//---------------------------------------------------------------------------//
#include <exception>
#include <iostream>

#include "hz/cli.hpp"

int main(int argc, char** argv)
{
    using namespace hz::cli;
    RunConfig config;
    try
    {
        config = parse_args({argv + 1, argv + argc});
    }
    catch (HelpRequested const& e)
    {
        std::cout << e.what();
        return kExitOk;
    }
    catch (UsageError const& e)
    {
        std::cerr << "hz: " << e.what() << '\n' << usage();
        return kExitUsage;
    }

    try
    {
        return run_command(config, std::cout);
    }
    catch (std::exception const& e)
    {
        std::cerr << "hz: " << e.what() << '\n';
        return kExitUnconverged;
    }
}
