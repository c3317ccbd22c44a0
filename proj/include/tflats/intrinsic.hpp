#pragma once

#include <vector>

#include "tflats/body.hpp"
#include "tflats/quadrature.hpp"

namespace tflats {

/// Intrinsic volumes and related volumes of a convex body, all on one lift to S^n.
struct IntrinsicProfile {
    int n = 0;
    int level = 0;
    std::vector<double> ratios;  ///< |Omega_k(dC)| / |Sch(k,n)|, k = 0..n-1
    std::vector<double> V;       ///< V_j(C), j = 0..n-1, with V_{n-1-k} = ratios[k] / 4
    double volume = 0.0;         ///< |C|
    double polar_volume = 0.0;   ///< |C°|
    double reach = 0.0;          ///< largest eps accepted by steiner_tube_volume
    double error = 0.0;          ///< largest quadrature error estimate among the above
};

QuadratureValue intrinsic_volume(const ConvexBody& body, int j, const QuadratureGrid& grid);

/// |C| by the radial formula about the body's interior point.
QuadratureValue body_volume(const ConvexBody& body, const QuadratureGrid& grid);

/// |C°| by the radial formula applied to the Gauss image of the surface.
QuadratureValue polar_volume(const ConvexBody& body, const QuadratureGrid& grid);

/// Conservative tube-validity radius: the smaller of min over nodes of
/// 1/max|d_i| (capped at pi/4) and (pi - diam C)/2, below which the tubes
/// around the two lifts stay disjoint.
double reach_proxy(const ConvexBody& body, const QuadratureGrid& grid);

IntrinsicProfile intrinsic_profile(const ConvexBody& body, const QuadratureGrid& grid);

/// |U(C, eps)| from Steiner's formula; throws InvalidArgument for eps above the reach proxy.
double steiner_tube_volume(const ConvexBody& body, double eps, const IntrinsicProfile& profile);

/// 4|C|/|S^n| + 4|C°|/|S^n| + sum_k ratio_k - 4.
double sum_identity_residual(const IntrinsicProfile& profile);
double sum_identity_check(const ConvexBody& body, const QuadratureGrid& grid);

/// True iff |Omega_k(dC)| / |Sch(k,n)| <= 4 + 1e-6.
bool bound_check(const ConvexBody& body, int k, const QuadratureGrid& grid);

}  // namespace tflats
