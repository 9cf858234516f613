#include <iostream>

#include "wormsim/cli.hpp"

int main(int argc, char** argv) {
    return wormsim::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
