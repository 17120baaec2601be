#include "gdd/lab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gdd::lab {

double percentile(std::span<const double> values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
    if (!(p >= 0.0 && p <= 100.0)) throw std::invalid_argument("percentile rank must lie in [0, 100]");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double pos = p / 100.0 * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    const double t = pos - static_cast<double>(lo);
    return v[lo] + t * (v[hi] - v[lo]);
}

double median(std::span<const double> values) { return percentile(values, 50.0); }

double percentile_spread(std::span<const double> values) {
    const double m = median(values);
    if (m == 0.0) throw std::invalid_argument("percentile spread is undefined for a zero median");
    return (percentile(values, 75.0) - percentile(values, 25.0)) / m;
}

}  // namespace gdd::lab
