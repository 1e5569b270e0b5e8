#pragma once

#include <string>
#include <vector>

namespace zonoid::acceptance {

/// One acceptance check: the measured error, the tolance it must meet and a
/// short account of what was measured.
struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string details;
};

/// Names of the acceptance checks, in suite order.
const std::vector<std::string>& suite_names();

/// Run one named check ("all" runs the full suite in order). The seed feeds
/// the randomized structure checks; everything else is deterministic.
std::vector<CheckResult> run_suite(const std::string& name, unsigned seed = 20260810u);

/// One formatted pass/fail line per check.
std::string format_line(const CheckResult& r, int index, int total);

}  // namespace zonoid::acceptance
