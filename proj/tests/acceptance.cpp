// Runs every acceptance criterion and prints one line per criterion.
#include <cstdio>
#include <cstring>

#include "mapgrp/acceptance.hpp"

int main(int argc, char** argv)
{
    const bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;
    int failed = 0;
    for (const auto& r : mapgrp::run_suite("all")) {
        std::printf("criterion %2d %s: %s (%.2fs)\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
        if (verbose || !r.pass)
            for (const auto& d : r.details)
                std::printf("    %s\n", d.c_str());
        failed += r.pass ? 0 : 1;
    }
    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed ? 1 : 0;
}
