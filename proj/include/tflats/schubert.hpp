#pragma once

#include <cstdint>

#include "tflats/estimate.hpp"
#include "tflats/projective.hpp"

namespace tflats {

/// Incidence pairing of two lines of RP^3; zero iff the lines meet.
double meet_pairing(const PluckerVector& l, const PluckerVector& m);

/// The symmetric 6x6 matrix J with meet_pairing(l, m) = 2 l^T J m.
Mat plucker_form();

/// Real lines meeting four given lines of RP^3.
struct TransversalCount {
    enum class Kind { Zero, One, Two, Degenerate };
    Kind kind = Kind::Degenerate;
    double discriminant = 0.0;
    double condition = 0.0;  ///< sigma_max / sigma_4 of the meet system

    bool degenerate() const { return kind == Kind::Degenerate; }
    /// 0, 1 or 2; throws for degenerate configurations.
    int count() const;
};

/// Intersects the pencil cut out by the four meet conditions with the Plücker
/// quadric. One transversal is reported only inside the tangency band
/// |disc| < 1e-10 * scale^2.
TransversalCount transversal_count(const PluckerVector& l1, const PluckerVector& l2,
                                   const PluckerVector& l3, const PluckerVector& l4);

/// delta_{k,n}: exact 1 for k in {0, n-1}; Monte Carlo over 4 uniform lines
/// for (1,3) with trial i drawing from RngStream(seed, i). Degenerate draws
/// are discarded and counted. Other (k,n) throw Unsupported.
MCEstimate estimate_delta(int k, int n, std::uint64_t samples, std::uint64_t seed, unsigned workers = 0);

}  // namespace tflats
