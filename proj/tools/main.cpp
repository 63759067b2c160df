#include "strokelab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return strokelab::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
