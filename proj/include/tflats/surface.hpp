#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "tflats/body.hpp"
#include "tflats/quadrature.hpp"

namespace tflats {

/// A quadrature node pushed through the body's chart.
struct SurfaceNode {
    std::size_t index = 0;
    Vec x;           ///< point of the lifted surface
    Mat dx;          ///< derivative columns with respect to the chart angles
    double weight = 0.0;       ///< quadrature weight times the chart area element
    double quad_weight = 0.0;  ///< bare quadrature weight
};

/// Sums fn over all grid nodes for `count` quantities at once. Nodes are
/// summed in fixed chunks and the chunk sums pairwise, so the result does not
/// depend on the worker count.
std::vector<double> integrate_surface(const ConvexBody& body, const QuadratureGrid& grid, int count,
                                      const std::function<void(const SurfaceNode&, double*)>& fn,
                                      unsigned workers = 0);

/// Grid one level coarser (level 1 when `grid` is at level 0) for error estimates.
QuadratureGrid comparison_grid(const QuadratureGrid& grid);

}  // namespace tflats
