#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "tflats/body.hpp"
#include "tflats/estimate.hpp"
#include "tflats/projective.hpp"
#include "tflats/random.hpp"

namespace tflats {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using CVec6 = Eigen::Matrix<std::complex<double>, 6, 1>;

/// Quadratic form on Plücker coordinates of lines in RP^3.
struct PluckerQuadric {
    Mat6 M = Mat6::Zero();

    double operator()(const Vec6& p) const { return p.dot(M * p); }
};

/// Tangency condition of lines to {x^T A x = 0}: the second compound of A,
/// so that (u^v)^T M (u^v) = (u^T A u)(v^T A v) - (u^T A v)^2. Secant lines
/// are negative, lines missing the real quadric positive.
PluckerQuadric tangency_quadric_of(const Mat& a);

struct SolverOptions {
    double dedup_tol = 1e-8;        ///< projective distance for merging endpoints
    double singular_cond = 1e8;     ///< endpoint Jacobian condition number threshold
    double reality_tol = 1e-6;      ///< |Im| / |Re| below this is real
    double ambiguous_tol = 1e-4;    ///< [reality_tol, ambiguous_tol) is borderline
    double degenerate_ratio = 0.5;  ///< (singular + merged) / tracked above this flags degeneracy
    double residual_tol = 1e-10;
    int max_steps = 4000;
    bool retry = true;              ///< one retry with a fresh start system on path failure
};

/// One endpoint of the homotopy.
struct TangentSolution {
    CVec6 p;                  ///< unit representative
    double residual = 0.0;    ///< max |equation| over the 5 normalized equations
    double condition = 0.0;   ///< condition number of the endpoint Jacobian
    double imag_ratio = 0.0;  ///< |Im| / |Re| after dividing by the largest coordinate
    int multiplicity = 1;
    bool singular = false;
    bool real = false;
    Vec6 real_p = Vec6::Zero();  ///< polished real line when `real`
};

struct PathStats {
    int tracked = 0;
    int finite = 0;    ///< endpoints reaching t = 1, counted with multiplicity
    int diverged = 0;
    int failed = 0;
    int singular = 0;  ///< finite endpoints with a singular Jacobian
    int merged = 0;    ///< regular endpoints coinciding with an earlier one
    int attempts = 0;
};

struct SolutionSet {
    std::vector<TangentSolution> solutions;  ///< distinct endpoints
    PathStats stats;
    std::vector<std::string> path_log;  ///< one line per path that did not finish cleanly
    bool degenerate = false;
    int real_count = 0;         ///< distinct real regular solutions
    int near_real_singular = 0; ///< singular endpoints that may be real
    int ambiguous = 0;          ///< regular solutions in the borderline reality band
    double max_residual = 0.0;  ///< over regular solutions
};

/// All lines tangent to four quadrics: 32-path total-degree homotopy in P^5
/// with a random complex gamma and patch drawn from `rng`. Throws
/// NumericalFailure with the path log when paths fail (after one retry).
SolutionSet solve_tangency_system(const std::array<PluckerQuadric, 4>& q, RngStream& rng,
                                  const SolverOptions& options = {});

/// Real tangent lines to g_1 X_1, ..., g_4 X_4 for quadric bodies in RP^3;
/// g.X has matrix g A g^T.
struct TangentCount {
    int count = 0;
    bool degenerate = false;
    std::string reason;
    PathStats stats;
};

TangentCount count_real_tangent_lines(const std::array<ConvexBody, 4>& bodies,
                                      const std::array<Rotation, 4>& rotations, RngStream& rng,
                                      const SolverOptions& options = {});

/// Mean real tangent count over Haar rotation 4-tuples; trial i uses
/// RngStream(seed, i). Degenerate draws (including solver failures) are
/// discarded and counted; more than 5% of them is an error.
MCEstimate tau_empirical(const std::array<ConvexBody, 4>& bodies, std::uint64_t trials, std::uint64_t seed,
                         unsigned workers = 0, const SolverOptions& options = {});

}  // namespace tflats
