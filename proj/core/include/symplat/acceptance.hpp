#pragma once

#include <string>
#include <vector>

#include "symplat/config.hpp"

// End-to-end verification battery. Each criterion checks one contract of the
// library against independently computed values, with its tolerances and time
// limits pinned here rather than taken from the caller, so a passing run
// means the same thing everywhere.

namespace symplat::acceptance {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    double seconds = 0;
    std::string detail;  // measured values, one line
};

// Runs the full battery in order. Never throws for a failing criterion; an
// exception escaping a criterion is caught and reported as a failure.
std::vector<CriterionResult> run_all(const RunConfig& cfg = {});

// One line per criterion plus a summary line, as printed by the self test.
// Timings can be suppressed so reports under a fixed seed hash identically.
std::string format_report(const std::vector<CriterionResult>& results,
                          bool with_timings = true);

}  // namespace symplat::acceptance
