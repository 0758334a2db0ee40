#pragma once

#include <string>
#include <vector>

namespace aggregatio::io {

/// Parse "start:stop:step" into an increasing grid. Endpoints are
/// inclusive when the step divides the span within 1e-9.
std::vector<double> parse_grid(const std::string& spec);

/// Same, for integer grids.
std::vector<long> parse_int_grid(const std::string& spec);

}  // namespace aggregatio::io
