#include <iostream>

#include "slabio/cli.hpp"

int main(int argc, char** argv) {
    return slabio::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
