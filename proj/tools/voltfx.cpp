#include <iostream>
#include <string>
#include <vector>

#include "voltfx/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return voltfx::cli_dispatch(args, std::cout, std::cerr);
}
