#include <iostream>

#include "kgw/cli.hpp"

int main(int argc, char** argv) {
    kgw::RunConfig config;
    if (auto status = kgw::parse_args(argc, argv, config, std::cout, std::cerr)) return *status;
    return kgw::run(config, std::cout, std::cerr);
}
