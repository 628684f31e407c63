#include <iostream>

#include "hashpebble/cli.hpp"

int main(int argc, char** argv)
{
    std::ios::sync_with_stdio(false);
    return hashpebble::run_cli(argc, argv, std::cout, std::cerr);
}
