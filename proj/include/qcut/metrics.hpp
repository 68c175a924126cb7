#pragma once

#include <vector>

namespace qcut {

/// Chi-square loss between an execution distribution `a` and a ground-truth
/// distribution `b`: sum of (a_i - b_i)^2 / (a_i + b_i), entries with
/// a_i + b_i == 0 contributing zero. Smaller is closer.
double chi_squared(const std::vector<double>& a, const std::vector<double>& b);

/// Total-variation distance: half the L1 distance.
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qcut
