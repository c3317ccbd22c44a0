#include "tflats/estimate.hpp"

#include <cmath>

namespace tflats {

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 16) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MCEstimate summarize(std::span<const double> values, std::uint64_t seed) {
    MCEstimate e;
    e.seed = seed;
    e.samples = values.size();
    if (values.empty()) return e;
    const double n = static_cast<double>(values.size());
    e.mean = pairwise_sum(values) / n;
    if (values.size() > 1) {
        std::vector<double> sq(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double d = values[i] - e.mean;
            sq[i] = d * d;
        }
        e.variance = pairwise_sum(sq) / (n - 1.0);
        e.std_error = std::sqrt(e.variance / n);
    }
    return e;
}

}  // namespace tflats
