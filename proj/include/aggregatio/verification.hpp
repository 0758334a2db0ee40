#pragma once

#include <string>
#include <vector>

namespace aggregatio::verification {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

enum class Level { Quick, Full };

/// Cross-checks every closed-form operation against an independent oracle.
/// Quick keeps grids small enough to finish in well under a minute; Full
/// runs the complete property grids.
std::vector<CheckResult> run_battery(Level level);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace aggregatio::verification
