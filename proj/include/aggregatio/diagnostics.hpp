#pragma once

#include <utility>
#include <vector>

#include "aggregatio/errors.hpp"

namespace aggregatio {

/// A sequence of (n, value) pairs used to certify a two-sided asymptotic
/// rate: the normalized ratios must stay bounded away from 0 and infinity.
struct RateDiagnostic {
    std::vector<std::pair<long, double>> entries;

    double min_value() const;
    double max_value() const;
    double median_value() const;

    /// True when every entry lies within `factor` of the median.
    bool within_factor_of_median(double factor) const;

    /// True when max <= factor * min (all entries positive).
    bool within_factor(double factor) const;
};

}  // namespace aggregatio
