#pragma once

#include <cstdint>
#include <random>

namespace tflats {

/// Deterministic random stream keyed by (seed, stream id).
///
/// Every Monte Carlo trial gets its own stream so results do not depend on
/// how trials are scheduled across workers.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    std::uint64_t bits() { return engine_(); }

    /// Child stream derived from this stream's key; does not consume draws.
    RngStream child(std::uint64_t index) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace tflats
