#include <iostream>

#include "hypersum/cli.hpp"

int main(int argc, char** argv) {
    return hsum::cli::run(argc, argv, std::cout, std::cerr);
}
