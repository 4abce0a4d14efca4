#include <iostream>

#include "mixcast/cli.hpp"

int main(int argc, char** argv) {
    return mixcast::cli::cli_main(argc, argv, std::cout, std::cerr);
}
