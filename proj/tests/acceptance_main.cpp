// Runs the full verification battery and prints one line per criterion.

#include <cstdlib>
#include <iostream>

#include "symplat/acceptance.hpp"

int main() {
    symplat::RunConfig cfg;
    cfg.workers = 4;
    auto results = symplat::acceptance::run_all(cfg);
    std::cout << symplat::acceptance::format_report(results);
    for (const auto& r : results)
        if (!r.passed) return EXIT_FAILURE;
    return EXIT_SUCCESS;
}
