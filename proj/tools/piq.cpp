#include <iostream>

#include "piq/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return piq::cli::run(args, std::cout, std::cerr);
}
