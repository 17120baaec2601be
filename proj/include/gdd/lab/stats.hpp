#pragma once

#include <span>

namespace gdd::lab {

/// Percentile with linear interpolation between order statistics
/// (position p/100 * (n - 1)). Throws std::invalid_argument on empty input.
double percentile(std::span<const double> values, double p);

double median(std::span<const double> values);

/// (p75 - p25) / median. Throws std::invalid_argument for a zero median.
double percentile_spread(std::span<const double> values);

}  // namespace gdd::lab
