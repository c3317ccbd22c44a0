#pragma once

#include <cstdint>
#include <vector>

#include "tflats/body.hpp"
#include "tflats/estimate.hpp"
#include "tflats/projective.hpp"
#include "tflats/quadrature.hpp"
#include "tflats/random.hpp"

namespace tflats {

/// Second-order data of the lifted surface at a point of S^n.
struct CurvatureFrame {
    Vec x;          ///< surface point (unit)
    Vec nu;         ///< unit inward normal, tangent to S^n
    Vec principal;  ///< principal curvatures, descending
    Mat frame;      ///< principal directions as columns, matching `principal`
};

/// Shape operator of the lift with respect to the inward normal. Points off
/// the surface by less than 1e-6 (in |F|/|grad F|) are first projected back.
CurvatureFrame curvature_frame(const ConvexBody& body, const ProjectivePoint& x);

/// k-th elementary symmetric polynomial of `d`.
double elementary_symmetric(const Vec& d, int k);

double sigma_k(const CurvatureFrame& frame, int k);

/// Monte Carlo estimate of E|det B restricted to a uniform k-plane of T_xX|.
MCEstimate mean_abs_minor(const CurvatureFrame& frame, int k, int mc_samples, RngStream& rng);

/// Closed form of pi * E_{v in S^1} |B(v,v)| for principal curvatures d1, d2.
double h_curvature(double d1, double d2);

/// Gamma prefactor turning the integral of sigma_k into |Omega_k| / |Sch(k,n)|.
double omega_prefactor(int k, int n);

/// |Omega_k(X)| / |Sch(k,n)| for k = 0..n-1 from one pass over the grid.
/// Errors are differences to the next coarser level.
std::vector<QuadratureValue> omega_ratio_profile(const ConvexBody& body, const QuadratureGrid& grid);

QuadratureValue omega_ratio_convex(const ConvexBody& body, int k, const QuadratureGrid& grid);

/// |Omega_1(X)| in RP^3 as the integral of h(d1, d2).
QuadratureValue omega_volume_rp3(const ConvexBody& body, const QuadratureGrid& grid);

/// |Omega_k(X)| / |Sch(k,n)| through E|B_x(Lambda)|; valid without convexity.
/// Node i draws from rng.child(i).
MCEstimate omega_ratio_semialgebraic(const ConvexBody& body, int k, const QuadratureGrid& grid,
                                     int mc_samples, RngStream& rng);

}  // namespace tflats
