#pragma once

#include <vector>

namespace cookiescope::stats {

// Holm step-down adjustment, returned in input order. Throws StatsError for
// values outside [0, 1].
std::vector<double> holm_adjust(const std::vector<double>& p_values);

}  // namespace cookiescope::stats
