#include "tflats/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "tflats/errors.hpp"
#include "tflats/surface.hpp"
#include "tflats/volumes.hpp"

namespace tflats {

namespace {

constexpr double kOnSurface = 1e-10;
constexpr double kProjectable = 1e-6;

// |F| / |grad F| at a unit vector, in the tangent directions of S^n.
double surface_offset(const ImplicitJet& j, const Vec& x) {
    const Vec g = j.grad - j.grad.dot(x) * x;
    return std::abs(j.value) / g.norm();
}

Vec project_to_surface(const ConvexBody& body, Vec x) {
    for (int it = 0; it < 30; ++it) {
        const ImplicitJet j = body.jet(x);
        const Vec g = j.grad - j.grad.dot(x) * x;
        const double g2 = g.squaredNorm();
        if (!(g2 > 0)) throw DegenerateInput("vanishing gradient near the surface");
        if (std::abs(j.value) / std::sqrt(g2) <= 1e-15) break;
        x -= (j.value / g2) * g;
        x.normalize();
    }
    return x;
}

}  // namespace

CurvatureFrame curvature_frame(const ConvexBody& body, const ProjectivePoint& p) {
    const int n = body.n();
    if (p.ambient_dim() != n) throw InvalidArgument("point dimension does not match body");
    Vec x = p.vector();
    ImplicitJet j = body.jet(x);
    const double off = surface_offset(j, x);
    if (!(off <= kOnSurface)) {
        if (!(off <= kProjectable)) throw InvalidArgument("point is not on the surface");
        x = project_to_surface(body, x);
        j = body.jet(x);
    }
    const Vec g = j.grad - j.grad.dot(x) * x;
    const double gn = g.norm();
    if (!(gn > 1e-14 * std::max(1.0, j.hess.cwiseAbs().maxCoeff())))
        throw DegenerateInput("gradient of the defining function vanishes on the surface");
    const Vec outward = g / gn;

    Mat xn(n + 1, 2);
    xn.col(0) = x;
    xn.col(1) = outward;
    const Mat t = orthogonal_complement(xn);
    Mat b = t.transpose() * j.hess * t / gn;
    b = 0.5 * (b + b.transpose()).eval();

    CurvatureFrame fr;
    fr.x = x;
    fr.nu = -outward;
    fr.principal.resize(n - 1);
    fr.frame.resize(n + 1, n - 1);
    if (n > 1) {
        Eigen::SelfAdjointEigenSolver<Mat> es(b);
        for (int i = 0; i < n - 1; ++i) {
            fr.principal[i] = es.eigenvalues()[n - 2 - i];
            fr.frame.col(i) = t * es.eigenvectors().col(n - 2 - i);
        }
    }
    return fr;
}

double elementary_symmetric(const Vec& d, int k) {
    const int m = static_cast<int>(d.size());
    if (k < 0 || k > m) throw InvalidArgument("elementary symmetric index out of range");
    std::vector<double> e(k + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = std::min(k, i + 1); j >= 1; --j) e[j] += d[i] * e[j - 1];
    return e[k];
}

double sigma_k(const CurvatureFrame& frame, int k) { return elementary_symmetric(frame.principal, k); }

MCEstimate mean_abs_minor(const CurvatureFrame& frame, int k, int mc_samples, RngStream& rng) {
    const int m = static_cast<int>(frame.principal.size());
    if (k < 0 || k > m) throw InvalidArgument("minor size out of range");
    if (mc_samples < 1) throw InvalidArgument("mc_samples must be at least 1");
    MCEstimate est;
    est.seed = rng.seed();
    est.samples = static_cast<std::uint64_t>(mc_samples);
    if (k == 0 || k == m) {
        est.mean = (k == 0) ? 1.0 : std::abs(frame.principal.prod());
        return est;
    }
    std::vector<double> values(mc_samples);
    Mat gauss(m, k);
    for (int s = 0; s < mc_samples; ++s) {
        for (int c = 0; c < k; ++c)
            for (int r = 0; r < m; ++r) gauss(r, c) = rng.normal();
        Eigen::HouseholderQR<Mat> qr(gauss);
        const Mat q = qr.householderQ() * Mat::Identity(m, k);
        const Mat restricted = q.transpose() * frame.principal.asDiagonal() * q;
        values[s] = std::abs(restricted.determinant());
    }
    MCEstimate out = summarize(values, rng.seed());
    return out;
}

double h_curvature(double d1, double d2) {
    // Order by magnitude so that the value is bitwise symmetric under swaps and sign flips.
    if (std::abs(d1) < std::abs(d2)) std::swap(d1, d2);
    const double sum = std::abs(d1 + d2);
    if (d1 * d2 >= 0.0) return 0.5 * M_PI * sum;
    return 2.0 * std::sqrt(-d1 * d2) + 2.0 * sum * std::abs(std::atan(std::sqrt(-d2 / d1)) - M_PI / 4);
}

double omega_prefactor(int k, int n) {
    if (k < 0 || k > n - 1) throw InvalidArgument("k must satisfy 0 <= k <= n-1");
    return std::tgamma((k + 1) / 2.0) * std::tgamma((n - k) / 2.0) / std::pow(M_PI, (n + 1) / 2.0);
}

namespace {

std::vector<double> sigma_integrals(const ConvexBody& body, const QuadratureGrid& grid) {
    const int n = body.n();
    return integrate_surface(body, grid, n, [&](const SurfaceNode& node, double* out) {
        const CurvatureFrame fr = curvature_frame(body, ProjectivePoint(node.x));
        if (n > 1) {
            if (fr.principal.minCoeff() <= 0.0)
                throw DegenerateInput("negative principal curvature at a quadrature node: body is not convex");
            if (std::abs(fr.principal.prod()) < 1e-12)
                throw DegenerateInput("degenerate curvature at a quadrature node");
        }
        for (int k = 0; k < n; ++k) out[k] = node.weight * elementary_symmetric(fr.principal, k);
    });
}

void check_grid(const ConvexBody& body, const QuadratureGrid& grid) {
    if (grid.sphere_dim() != body.n() - 1) throw InvalidArgument("quadrature grid dimension must be n-1");
}

}  // namespace

std::vector<QuadratureValue> omega_ratio_profile(const ConvexBody& body, const QuadratureGrid& grid) {
    check_grid(body, grid);
    if (!body.convex()) throw DegenerateInput("body is not declared convex");
    const int n = body.n();
    const auto fine = sigma_integrals(body, grid);
    const auto coarse = sigma_integrals(body, comparison_grid(grid));
    std::vector<QuadratureValue> out(n);
    for (int k = 0; k < n; ++k) {
        const double c = omega_prefactor(k, n);
        out[k] = {c * fine[k], std::abs(c * (fine[k] - coarse[k])), grid.level()};
    }
    return out;
}

QuadratureValue omega_ratio_convex(const ConvexBody& body, int k, const QuadratureGrid& grid) {
    if (k < 0 || k > body.n() - 1) throw InvalidArgument("k must satisfy 0 <= k <= n-1");
    return omega_ratio_profile(body, grid)[k];
}

QuadratureValue omega_volume_rp3(const ConvexBody& body, const QuadratureGrid& grid) {
    if (body.n() != 3) throw InvalidArgument("omega_volume_rp3 needs a surface in RP^3");
    check_grid(body, grid);
    auto run = [&](const QuadratureGrid& g) {
        // out: integral of h, total weight, weight of flat nodes
        return integrate_surface(body, g, 3, [&](const SurfaceNode& node, double* out) {
            const CurvatureFrame fr = curvature_frame(body, ProjectivePoint(node.x));
            out[0] = node.weight * h_curvature(fr.principal[0], fr.principal[1]);
            out[1] = node.weight;
            out[2] = fr.principal.cwiseAbs().maxCoeff() < 1e-12 ? node.weight : 0.0;
        });
    };
    const auto fine = run(grid);
    if (fine[2] > 0.5 * fine[1]) throw DegenerateInput("surface is flat on most of its area (not 1-non-degenerate)");
    const auto coarse = run(comparison_grid(grid));
    return {fine[0], std::abs(fine[0] - coarse[0]), grid.level()};
}

MCEstimate omega_ratio_semialgebraic(const ConvexBody& body, int k, const QuadratureGrid& grid,
                                     int mc_samples, RngStream& rng) {
    const int n = body.n();
    if (k < 0 || k > n - 1) throw InvalidArgument("k must satisfy 0 <= k <= n-1");
    if (mc_samples < 1) throw InvalidArgument("mc_samples must be at least 1");
    check_grid(body, grid);
    const auto sums = integrate_surface(body, grid, 2, [&](const SurfaceNode& node, double* out) {
        const CurvatureFrame fr = curvature_frame(body, ProjectivePoint(node.x));
        RngStream local = rng.child(node.index);
        const MCEstimate e = mean_abs_minor(fr, k, mc_samples, local);
        out[0] = node.weight * e.mean;
        out[1] = node.weight * node.weight * e.std_error * e.std_error;
    });
    const double c = binomial(n - 1, k) * omega_prefactor(k, n);
    MCEstimate est;
    est.mean = c * sums[0];
    est.std_error = c * std::sqrt(sums[1]);
    est.samples = static_cast<std::uint64_t>(grid.size()) * static_cast<std::uint64_t>(mc_samples);
    est.variance = est.std_error * est.std_error * static_cast<double>(est.samples);
    est.seed = rng.seed();
    return est;
}

}  // namespace tflats
