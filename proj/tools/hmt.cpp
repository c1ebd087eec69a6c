#include <iostream>

#include "hmt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hmt::run(args, std::cout, std::cerr);
}
