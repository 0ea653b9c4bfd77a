#include <iostream>

#include "pwmap/cli.hpp"

int main(int argc, char** argv)
{
    return pwmap::run_cli(argc, argv, std::cout, std::cerr);
}
