#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace tflats {

/// Gauss-Legendre rule on [a, b].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int count, double a, double b);

/// Tensor-product rule on the parameter sphere S^m in hyperspherical angles:
/// Gauss-Legendre in the m-1 polar angles, periodic trapezoid in the azimuth.
/// Weights are products of the 1-D weights; the area element is left to the
/// caller, which computes it from the full chart Jacobian.
class QuadratureGrid {
public:
    /// Refinement level >= 0 uses 2*level+4 polar nodes and twice that in azimuth.
    static QuadratureGrid make(int sphere_dim, int level);

    int sphere_dim() const { return m_; }
    int level() const { return level_; }
    int polar_nodes() const { return polar_; }
    int azimuth_nodes() const { return azimuth_; }
    std::size_t size() const { return weights_.size(); }

    double weight(std::size_t i) const { return weights_[i]; }
    const double* angles(std::size_t i) const { return angles_.data() + i * static_cast<std::size_t>(m_); }

    /// Point of S^m (in R^{m+1}) and its derivative columns with respect to the m angles.
    void point(std::size_t i, Eigen::VectorXd& s, Eigen::MatrixXd& ds) const;

    /// Number of nodes at a given level, without building the grid.
    static std::size_t node_count(int sphere_dim, int level);

private:
    int m_ = 0;
    int level_ = 0;
    int polar_ = 0;
    int azimuth_ = 0;
    std::vector<double> angles_;
    std::vector<double> weights_;
};

/// Quadrature value with the difference to the next coarser level as error estimate.
struct QuadratureValue {
    double value = 0.0;
    double error = 0.0;
    int level = 0;
};

}  // namespace tflats
