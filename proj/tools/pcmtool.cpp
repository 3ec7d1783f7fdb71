#include <iostream>
#include <string>
#include <vector>

#include "pcm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return pcm::cli::run(std::move(args), std::cout, std::cerr);
}
