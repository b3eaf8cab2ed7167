// Acceptance gate: one pass/fail line per criterion, exit 1 if any fail.
// Pass --quick for the reduced (but still meaningful) parameter sets.

#include <fdkp/acceptance.hpp>

#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) {
            quick = true;
        } else {
            std::cerr << "usage: fdkp_acceptance [--quick]\n";
            return 2;
        }
    }
    const auto results = fdkp::acceptance::run_all(quick, std::cout);
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}
