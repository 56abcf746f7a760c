#include "splayer/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return splayer::cli::main_entry(argc, argv, std::cout, std::cerr);
}
