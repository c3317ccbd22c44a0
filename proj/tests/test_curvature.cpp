#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "tflats/curvature.hpp"
#include "tflats/errors.hpp"
#include "tflats/volumes.hpp"

using namespace tflats;

namespace {

// Shape operator of {x^T A x = 0} on S^n from finite differences of the unit
// outward normal field, independent of the library's curvature code.
Vec fd_principal(const Mat& a, const Vec& x) {
    const int dim = static_cast<int>(x.size());
    auto normal = [&](const Vec& y) {
        Vec g = 2.0 * a * y;
        g -= g.dot(y) / y.squaredNorm() * y;
        return Vec(g.normalized());
    };
    const Vec nvec = normal(x);
    Mat span(dim, 2);
    span << x, nvec;
    Eigen::JacobiSVD<Mat> svd(span.transpose(), Eigen::ComputeFullV);
    const Mat t = svd.matrixV().rightCols(dim - 2);
    const double h = 1e-5;
    Mat b(dim - 2, dim - 2);
    for (int i = 0; i < dim - 2; ++i) {
        Vec d = (normal(x + h * t.col(i)) - normal(x - h * t.col(i))) / (2 * h);
        d -= d.dot(x) * x;
        for (int j = 0; j < dim - 2; ++j) b(i, j) = d.dot(t.col(j));
    }
    b = 0.5 * (b + b.transpose());
    Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(b).eigenvalues();
    std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
    return ev;
}

Mat ellipsoid_matrix(const Vec& axes) {
    Mat a = Mat::Zero(axes.size() + 1, axes.size() + 1);
    a(0, 0) = -1;
    for (int i = 0; i < axes.size(); ++i) a(i + 1, i + 1) = 1 / (axes[i] * axes[i]);
    return a;
}

// point of the ellipsoid in direction (unit) u of the affine chart
Vec ellipsoid_point(const Vec& axes, const Vec& u) {
    double q = 0;
    for (int i = 0; i < axes.size(); ++i) q += u[i] * u[i] / (axes[i] * axes[i]);
    Vec x(axes.size() + 1);
    x << 1.0, u / std::sqrt(q);
    return x.normalized();
}

// pi * mean over theta of |d1 cos^2 + d2 sin^2|
double h_oracle(double d1, double d2) {
    return 0.5 * oracle::simpson(
        [=](double t) { return std::abs(d1 * std::cos(t) * std::cos(t) + d2 * std::sin(t) * std::sin(t)); }, 0.0,
        2 * M_PI, 400000);
}

}  // namespace

TEST_CASE("metric ball has principal curvatures cot r") {
    for (int n : {2, 3, 5}) {
        const double r = 0.7;
        const ConvexBody ball = ConvexBody::metric_sphere(n, r);
        const QuadratureGrid grid = QuadratureGrid::make(n - 1, 1);
        Vec s, x;
        Mat ds, dx;
        for (std::size_t i = 0; i < grid.size(); i += 7) {
            grid.point(i, s, ds);
            ball.chart(s, ds, x, dx);
            CHECK(std::abs(x[0] - std::cos(r)) < 1e-12);
            const CurvatureFrame fr = curvature_frame(ball, ProjectivePoint(x));
            CHECK(fr.principal.size() == n - 1);
            for (int j = 0; j < n - 1; ++j) CHECK(std::abs(fr.principal[j] - 1 / std::tan(r)) < 1e-10);
            // the inward normal points towards the centre
            CHECK(fr.nu[0] > 0);
            CHECK(std::abs(fr.nu.dot(x)) < 1e-12);
        }
    }
}

TEST_CASE("ellipsoid curvatures match finite differences of the normal field") {
    Vec axes(3);
    axes << 1.0, 2.0, 0.5;
    const ConvexBody e = ConvexBody::ellipsoid(3, axes);
    const Mat a = ellipsoid_matrix(axes);
    std::vector<Vec> dirs;
    for (int i = 0; i < 3; ++i) dirs.push_back(Vec::Unit(3, i));
    Vec g(3);
    g << 0.3, -0.8, 0.52;
    dirs.push_back(g.normalized());
    for (const Vec& u : dirs) {
        const Vec x = ellipsoid_point(axes, u);
        const CurvatureFrame fr = curvature_frame(e, ProjectivePoint(x));
        const Vec ref = fd_principal(a, x);
        CHECK((fr.principal - ref).cwiseAbs().maxCoeff() < 1e-5);
        // directions are eigenvectors of the shape operator, orthogonal to x and nu
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(fr.frame.col(j).dot(x)) < 1e-10);
            CHECK(std::abs(fr.frame.col(j).dot(fr.nu)) < 1e-10);
        }
    }
}

TEST_CASE("off-surface points are projected or rejected") {
    const ConvexBody ball = ConvexBody::metric_sphere(3, 0.5);
    Vec x(4);
    x << std::cos(0.5), std::sin(0.5), 0, 0;
    Vec y = x;
    y[1] += 1e-8;
    CHECK(std::abs(curvature_frame(ball, ProjectivePoint(y)).principal[0] - 1 / std::tan(0.5)) < 1e-6);
    y[1] += 1e-2;
    CHECK_THROWS(curvature_frame(ball, ProjectivePoint(y)));
}

TEST_CASE("elementary symmetric functions") {
    Vec d(3);
    d << 1, 2, 3;
    CHECK(elementary_symmetric(d, 0) == 1);
    CHECK(elementary_symmetric(d, 1) == 6);
    CHECK(elementary_symmetric(d, 2) == 11);
    CHECK(elementary_symmetric(d, 3) == 6);
    CHECK_THROWS_AS(elementary_symmetric(d, 4), InvalidArgument);
}

TEST_CASE("mean absolute minor") {
    CurvatureFrame fr;
    fr.principal = Vec(2);
    fr.principal << 1.0, -1.0;
    RngStream rng(3, 0);
    const MCEstimate e = mean_abs_minor(fr, 1, 200000, rng);
    CHECK(std::abs(e.mean - 2 / M_PI) < 4 * e.std_error);
    CHECK(mean_abs_minor(fr, 0, 10, rng).mean == 1.0);
    CHECK(mean_abs_minor(fr, 2, 10, rng).mean == 1.0);
    CHECK_THROWS_AS(mean_abs_minor(fr, 3, 10, rng), InvalidArgument);
    // positive curvatures: no cancellation, so the mean minor is the normalised sigma_k
    fr.principal = Vec(3);
    fr.principal << 2.0, 1.0, 0.5;
    const MCEstimate p = mean_abs_minor(fr, 1, 100000, rng);
    CHECK(std::abs(p.mean - 3.5 / 3) < 4 * p.std_error);
}

TEST_CASE("h matches the angular average") {
    const double cases[][2] = {{1, 1}, {2, 0.5}, {1, -1}, {3, -0.2}, {-0.2, 3}, {0.1, -4}, {-1, -2}, {1, 0}};
    for (const auto& c : cases) CHECK(std::abs(h_curvature(c[0], c[1]) - h_oracle(c[0], c[1])) < 1e-8);
    CHECK(h_curvature(1, -1) == doctest::Approx(2.0));
    // symmetric, even, continuous across the sign change
    CHECK(h_curvature(0.3, -1.7) == h_curvature(-1.7, 0.3));
    CHECK(h_curvature(0.3, -1.7) == h_curvature(-0.3, 1.7));
    CHECK(std::abs(h_curvature(1, 1e-9) - h_curvature(1, -1e-9)) < 1e-3);
    CHECK(std::abs(h_curvature(1, 1e-12) - h_curvature(1, 0)) < 1e-5);
}

TEST_CASE("omega ratio of a ball matches the closed form") {
    const QuadratureGrid grid = QuadratureGrid::make(2, 4);
    for (double r : {M_PI / 6, M_PI / 4, M_PI / 3}) {
        const ConvexBody ball = ConvexBody::metric_sphere(3, r);
        for (int k = 0; k < 3; ++k) {
            const double c = 2.0 * std::tgamma(2.0) / (std::tgamma(0.5 * (k + 2)) * std::tgamma(0.5 * (4 - k)));
            const double ref = c * std::pow(std::cos(r), k) * std::pow(std::sin(r), 2 - k);
            CHECK(std::abs(omega_ratio_convex(ball, k, grid).value / ref - 1) < 1e-6);
        }
    }
}

TEST_CASE("curvature data are rotation invariant") {
    Vec axes(3);
    axes << 1.0, 2.0, 0.5;
    Vec c(3);
    c << 0.2, 0.0, -0.1;
    const ConvexBody e = ConvexBody::ellipsoid(3, axes, c, 0);
    RngStream rng(12, 0);
    const Rotation g = haar_rotation(3, rng);
    const ConvexBody moved = e.rotated(g);
    const QuadratureGrid grid = QuadratureGrid::make(2, 2);
    Vec s, x;
    Mat ds, dx;
    for (std::size_t i = 0; i < grid.size(); i += 5) {
        grid.point(i, s, ds);
        e.chart(s, ds, x, dx);
        const Vec gx = g.matrix() * x;
        CHECK(std::abs(moved.value(gx)) < 1e-10);
        const CurvatureFrame a = curvature_frame(e, ProjectivePoint(x));
        const CurvatureFrame b = curvature_frame(moved, ProjectivePoint(gx));
        CHECK((a.principal - b.principal).cwiseAbs().maxCoeff() < 1e-8);
    }
    const QuadratureGrid fine = QuadratureGrid::make(2, 6);
    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(omega_ratio_convex(e, k, fine).value - omega_ratio_convex(moved, k, fine).value) < 1e-8);
}

TEST_CASE("semialgebraic estimate agrees with the convex formula") {
    Vec axes(3);
    axes << 1.0, 2.0, 0.5;
    const ConvexBody e = ConvexBody::ellipsoid(3, axes);
    const QuadratureGrid grid = QuadratureGrid::make(2, 4);
    for (int k = 0; k < 3; ++k) {
        const QuadratureValue exact = omega_ratio_convex(e, k, grid);
        RngStream rng(5, 0);
        const MCEstimate mc = omega_ratio_semialgebraic(e, k, grid, 200, rng);
        CHECK(std::abs(mc.mean - exact.value) < 4 * mc.std_error + exact.error + 1e-12);
    }
}

TEST_CASE("h integral agrees with sigma_1 on convex surfaces") {
    Vec axes(3);
    axes << 1.0, 2.0, 0.5;
    const ConvexBody e = ConvexBody::ellipsoid(3, axes);
    const QuadratureGrid grid = QuadratureGrid::make(2, 5);
    const double a = omega_volume_rp3(e, grid).value / schubert_volume(1, 3);
    const double b = omega_ratio_convex(e, 1, grid).value;
    CHECK(std::abs(a / b - 1) < 1e-6);
}

TEST_CASE("convex formula refuses non-convex bodies") {
    // x1^2 + x2^2 - x3^2 - x0^2 <= 0 is a one-sheeted hyperboloid: wrong signature
    Mat a = Mat::Identity(4, 4);
    a(0, 0) = a(3, 3) = -1;
    CHECK_THROWS_AS(ConvexBody::quadric(a), DegenerateInput);
    CHECK(omega_prefactor(1, 3) == doctest::Approx(std::tgamma(1.0) * std::tgamma(1.0) / (M_PI * M_PI)));
}
