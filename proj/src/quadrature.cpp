#include "tflats/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "tflats/errors.hpp"

namespace tflats {

namespace {

// Legendre P_count(x) and its derivative.
void legendre(int count, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= count; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = count * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

GaussRule gauss_legendre(int count, double a, double b) {
    if (count < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
    GaussRule rule;
    rule.nodes.resize(count);
    rule.weights.resize(count);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    if (count == 1) {
        rule.nodes[0] = mid;
        rule.weights[0] = 2.0 * half;
        return rule;
    }
    for (int i = 0; i < (count + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        double p = 0.0, dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            legendre(count, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        legendre(count, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[count - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[count - 1 - i] = half * w;
    }
    return rule;
}

std::size_t QuadratureGrid::node_count(int sphere_dim, int level) {
    if (sphere_dim == 0) return 2;
    const std::size_t q = 2 * static_cast<std::size_t>(level) + 4;
    std::size_t total = 2 * q;
    for (int j = 0; j < sphere_dim - 1; ++j) total *= q;
    return total;
}

QuadratureGrid QuadratureGrid::make(int sphere_dim, int level) {
    if (sphere_dim < 0) throw InvalidArgument("sphere dimension must be nonnegative");
    if (level < 0) throw InvalidArgument("refinement level must be nonnegative");
    QuadratureGrid g;
    g.m_ = sphere_dim;
    g.level_ = level;
    if (sphere_dim == 0) {
        g.weights_ = {1.0, 1.0};
        return g;
    }
    g.polar_ = 2 * level + 4;
    g.azimuth_ = 2 * g.polar_;
    const GaussRule polar = gauss_legendre(g.polar_, 0.0, std::numbers::pi);
    const double dphi = 2.0 * std::numbers::pi / g.azimuth_;

    const std::size_t total = node_count(sphere_dim, level);
    g.angles_.resize(total * sphere_dim);
    g.weights_.resize(total);
    std::vector<int> idx(sphere_dim, 0);
    for (std::size_t node = 0; node < total; ++node) {
        double w = dphi;
        double* a = g.angles_.data() + node * sphere_dim;
        for (int j = 0; j < sphere_dim - 1; ++j) {
            a[j] = polar.nodes[idx[j]];
            w *= polar.weights[idx[j]];
        }
        a[sphere_dim - 1] = (idx[sphere_dim - 1] + 0.5) * dphi;
        g.weights_[node] = w;
        // odometer, last angle fastest
        for (int j = sphere_dim - 1; j >= 0; --j) {
            const int limit = (j == sphere_dim - 1) ? g.azimuth_ : g.polar_;
            if (++idx[j] < limit) break;
            idx[j] = 0;
        }
    }
    return g;
}

void QuadratureGrid::point(std::size_t i, Eigen::VectorXd& s, Eigen::MatrixXd& ds) const {
    const int m = m_;
    s.resize(m + 1);
    ds.resize(m + 1, m);
    if (m == 0) {
        s[0] = (i == 0) ? 1.0 : -1.0;
        return;
    }
    const double* a = angles(i);
    double sn[16], cs[16];
    for (int j = 0; j < m; ++j) {
        sn[j] = std::sin(a[j]);
        cs[j] = std::cos(a[j]);
    }
    // s_i = (prod_{j<i} sin a_j) * cos a_i for i < m, s_m = prod_{j<m} sin a_j
    for (int c = 0; c <= m; ++c) {
        double prod = 1.0;
        for (int j = 0; j < c && j < m; ++j) prod *= sn[j];
        s[c] = (c < m) ? prod * cs[c] : prod;
        for (int l = 0; l < m; ++l) {
            double d;
            if (l < c) {
                d = (c < m) ? cs[c] : 1.0;
                for (int j = 0; j < c && j < m; ++j) d *= (j == l) ? cs[j] : sn[j];
            } else if (l == c && c < m) {
                d = -prod * sn[c];
            } else {
                d = 0.0;
            }
            ds(c, l) = d;
        }
    }
}

}  // namespace tflats
