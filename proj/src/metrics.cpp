#include "qcut/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qcut {

double chi_squared(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("distribution sizes differ");
    double total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double denom = a[i] + b[i];
        if (denom == 0.0) continue;
        const double diff = a[i] - b[i];
        total += diff * diff / denom;
    }
    return total;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("distribution sizes differ");
    double total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) total += std::fabs(a[i] - b[i]);
    return total / 2;
}

}  // namespace qcut
