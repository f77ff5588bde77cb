#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <iostream>
#include <string>
#include <vector>

#include "support.hpp"

int main(int argc, char** argv) {
    // Strip --seed N / --seed=N before doctest sees the arguments.
    std::vector<char*> rest;
    for (int i = 0; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc) {
            kgw::test::seed_flag() = std::stoull(argv[++i]);
        } else if (arg.rfind("--seed=", 0) == 0) {
            kgw::test::seed_flag() = std::stoull(arg.substr(7));
        } else {
            rest.push_back(argv[i]);
        }
    }
    std::cout << "property seed " << kgw::test::seed() << "\n";
    doctest::Context context;
    context.applyCommandLine(static_cast<int>(rest.size()), rest.data());
    return context.run();
}
