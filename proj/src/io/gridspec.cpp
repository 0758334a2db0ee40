#include "aggregatio/io/gridspec.hpp"

#include <cmath>

#include "aggregatio/errors.hpp"

namespace aggregatio::io {

namespace {
constexpr double kEndpointTol = 1e-9;

struct GridSpec {
    double start;
    double stop;
    double step;
};

GridSpec split(const std::string& spec) {
    const std::size_t c1 = spec.find(':');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                                   : spec.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        spec.find(':', c2 + 1) != std::string::npos)
        throw InvalidParameter("grid spec must be start:stop:step, got '" + spec + "'");
    const auto parse = [&](const std::string& s) {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || s.empty())
            throw InvalidParameter("bad number in grid spec: '" + s + "'");
        return v;
    };
    GridSpec g{parse(spec.substr(0, c1)), parse(spec.substr(c1 + 1, c2 - c1 - 1)),
               parse(spec.substr(c2 + 1))};
    if (!(g.step > 0.0)) throw InvalidParameter("grid step must be positive");
    if (g.stop < g.start - kEndpointTol)
        throw InvalidParameter("grid stop must not precede start");
    return g;
}
}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    const GridSpec g = split(spec);
    const double span = g.stop - g.start;
    const double ratio = span / g.step;
    long count = static_cast<long>(std::floor(ratio + kEndpointTol)) + 1;
    if (count < 1) count = 1;
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
        values.push_back(g.start + static_cast<double>(i) * g.step);
    return values;
}

std::vector<long> parse_int_grid(const std::string& spec) {
    std::vector<long> out;
    for (double v : parse_grid(spec)) {
        const double rounded = std::round(v);
        if (std::abs(v - rounded) > kEndpointTol)
            throw InvalidParameter("grid value is not an integer: " + std::to_string(v));
        out.push_back(static_cast<long>(rounded));
    }
    return out;
}

}  // namespace aggregatio::io
