#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tflats {

/// Result of a Monte Carlo computation.
struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    double variance = 0.0;          ///< per-sample (unbiased) variance
    std::uint64_t samples = 0;      ///< samples that entered the mean
    std::uint64_t seed = 0;
    std::uint64_t degenerate = 0;   ///< samples discarded as degenerate
};

/// Sum with pairwise (cascade) reduction; the result depends only on the order of `values`.
double pairwise_sum(std::span<const double> values);

/// Mean, unbiased variance and standard error of `values`.
MCEstimate summarize(std::span<const double> values, std::uint64_t seed);

}  // namespace tflats
