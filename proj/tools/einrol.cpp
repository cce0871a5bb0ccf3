#include <iostream>
#include <string>
#include <vector>

#include "einrol/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return einrol::cli::run_command(std::move(args), std::cout, std::cerr);
}
