#include <iostream>

#include "econe/cli.hpp"

int main(int argc, char** argv)
{
    return econe::cli::run(argc, argv, std::cout, std::cerr);
}
