#include "aggregatio/diagnostics.hpp"

#include <algorithm>

namespace aggregatio {

namespace {
std::vector<double> sorted_values(const RateDiagnostic& d) {
    std::vector<double> v;
    v.reserve(d.entries.size());
    for (const auto& e : d.entries) v.push_back(e.second);
    std::sort(v.begin(), v.end());
    return v;
}
}  // namespace

double RateDiagnostic::min_value() const {
    if (entries.empty()) throw InvalidParameter("empty rate diagnostic");
    return sorted_values(*this).front();
}

double RateDiagnostic::max_value() const {
    if (entries.empty()) throw InvalidParameter("empty rate diagnostic");
    return sorted_values(*this).back();
}

double RateDiagnostic::median_value() const {
    if (entries.empty()) throw InvalidParameter("empty rate diagnostic");
    const auto v = sorted_values(*this);
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

bool RateDiagnostic::within_factor_of_median(double factor) const {
    const double med = median_value();
    if (!(med > 0.0)) return false;
    for (const auto& e : entries)
        if (e.second > factor * med || e.second < med / factor) return false;
    return true;
}

bool RateDiagnostic::within_factor(double factor) const {
    const double lo = min_value();
    const double hi = max_value();
    return lo > 0.0 && hi <= factor * lo;
}

}  // namespace aggregatio
