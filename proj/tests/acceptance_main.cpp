// Dedicated acceptance runner: one pass/fail line per criterion, nonzero exit
// on any failure.
#include <cstdio>
#include <iostream>

#include "zonoid/acceptance.hpp"

int main(int argc, char** argv) {
    const std::string suite = argc > 1 ? argv[1] : "all";
    std::vector<zonoid::acceptance::CheckResult> results;
    try {
        results = zonoid::acceptance::run_suite(suite);
    } catch (const std::exception& e) {
        std::cerr << "acceptance: " << e.what() << '\n';
        return 2;
    }
    bool all_pass = true;
    const int total = static_cast<int>(results.size());
    for (int i = 0; i < total; ++i) {
        std::cout << zonoid::acceptance::format_line(results[i], i + 1, total) << '\n';
        all_pass = all_pass && results[i].pass;
    }
    std::cout << (all_pass ? "acceptance: all criteria satisfied"
                           : "acceptance: FAILURES present")
              << '\n';
    return all_pass ? 0 : 1;
}
