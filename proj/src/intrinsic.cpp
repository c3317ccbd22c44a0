#include "tflats/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tflats/curvature.hpp"
#include "tflats/errors.hpp"
#include "tflats/surface.hpp"
#include "tflats/volumes.hpp"

namespace tflats {

namespace {

// Volume of the star-shaped region about unit p whose boundary is y(theta),
// with derivative columns dy: integral of Phi(rho) over the radial directions.
double radial_contribution(const Vec& p, const Vec& y, const Mat& dy, int n) {
    const double cosr = std::clamp(y.dot(p), -1.0, 1.0);
    const double rho = std::acos(cosr);
    const Vec perp = y - cosr * p;
    const double pn = perp.norm();
    if (!(pn > 1e-300)) throw DegenerateInput("boundary passes through the radial center");
    const Vec omega = perp / pn;
    const Mat dperp = dy - p * (p.transpose() * dy);
    const Mat domega = (dperp - omega * (omega.transpose() * dperp)) / pn;
    const Mat gram = domega.transpose() * domega;
    return sin_power_integral(n - 1, rho) * std::sqrt(std::max(0.0, gram.determinant()));
}

void require_convex(const ConvexBody& body) {
    if (!body.convex()) throw DegenerateInput("body is not declared convex");
}

QuadratureValue with_error(const ConvexBody& body, const QuadratureGrid& grid,
                           const std::function<void(const SurfaceNode&, double*)>& fn) {
    const double fine = integrate_surface(body, grid, 1, fn)[0];
    const double coarse = integrate_surface(body, comparison_grid(grid), 1, fn)[0];
    return {fine, std::abs(fine - coarse), grid.level()};
}

}  // namespace

QuadratureValue intrinsic_volume(const ConvexBody& body, int j, const QuadratureGrid& grid) {
    const int n = body.n();
    if (j < 0 || j > n - 1) throw InvalidArgument("j must satisfy 0 <= j <= n-1");
    QuadratureValue v = omega_ratio_convex(body, n - 1 - j, grid);
    v.value /= 4.0;
    v.error /= 4.0;
    return v;
}

QuadratureValue body_volume(const ConvexBody& body, const QuadratureGrid& grid) {
    require_convex(body);
    const int n = body.n();
    const Vec p = body.center();
    return with_error(body, grid, [&](const SurfaceNode& node, double* out) {
        out[0] = node.quad_weight * radial_contribution(p, node.x, node.dx, n);
    });
}

QuadratureValue polar_volume(const ConvexBody& body, const QuadratureGrid& grid) {
    require_convex(body);
    const int n = body.n();
    const Vec p = -body.center();
    return with_error(body, grid, [&](const SurfaceNode& node, double* out) {
        if (!(node.x.dot(body.center()) > 0.0))
            throw DegenerateInput("body leaves the hemisphere about its interior point; polar center invalid");
        const ImplicitJet j = body.jet(node.x);
        const Vec g = j.grad - j.grad.dot(node.x) * node.x;
        const double gn = g.norm();
        const Vec normal = g / gn;
        const Mat hdx = j.hess * node.dx;
        const Mat dn = (hdx - normal * (normal.transpose() * hdx)) / gn;
        out[0] = node.quad_weight * radial_contribution(p, normal, dn, n);
    });
}

double reach_proxy(const ConvexBody& body, const QuadratureGrid& grid) {
    const int n = body.n();
    // Curvature bound over all nodes; points kept for the diameter estimate.
    std::vector<Vec> points;
    const std::size_t stride = std::max<std::size_t>(1, grid.size() / 1500);
    double curvature_bound = M_PI / 4;
    Vec s, x;
    Mat ds, dx;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.point(i, s, ds);
        body.chart(s, ds, x, dx);
        if (n > 1) {
            const CurvatureFrame fr = curvature_frame(body, ProjectivePoint(x));
            const double dmax = fr.principal.cwiseAbs().maxCoeff();
            if (dmax > 0) curvature_bound = std::min(curvature_bound, 1.0 / dmax);
        }
        if (i % stride == 0) points.push_back(x);
    }
    double min_dot = 1.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) min_dot = std::min(min_dot, points[i].dot(points[j]));
    const double diam = std::acos(std::clamp(min_dot, -1.0, 1.0));
    return std::min(curvature_bound, 0.5 * (M_PI - diam));
}

IntrinsicProfile intrinsic_profile(const ConvexBody& body, const QuadratureGrid& grid) {
    IntrinsicProfile p;
    p.n = body.n();
    p.level = grid.level();
    const auto ratios = omega_ratio_profile(body, grid);
    p.ratios.resize(p.n);
    p.V.resize(p.n);
    for (int k = 0; k < p.n; ++k) {
        p.ratios[k] = ratios[k].value;
        p.V[p.n - 1 - k] = ratios[k].value / 4.0;
        p.error = std::max(p.error, ratios[k].error);
    }
    const QuadratureValue vol = body_volume(body, grid);
    const QuadratureValue pol = polar_volume(body, grid);
    p.volume = vol.value;
    p.polar_volume = pol.value;
    p.error = std::max({p.error, vol.error, pol.error});
    p.reach = reach_proxy(body, grid);
    return p;
}

double steiner_tube_volume(const ConvexBody& body, double eps, const IntrinsicProfile& profile) {
    const int n = body.n();
    if (profile.n != n) throw InvalidArgument("profile does not belong to this body");
    if (!(eps >= 0.0)) throw InvalidArgument("tube radius must be nonnegative");
    if (eps > profile.reach)
        throw InvalidArgument("tube radius exceeds the reach estimate; Steiner's formula may not apply");
    double total = profile.volume;
    for (int k = 0; k < n; ++k)
        total += f_universal(k, n, eps) * sphere_volume(k) * sphere_volume(n - k - 1) * profile.V[k];
    return total;
}

double sum_identity_residual(const IntrinsicProfile& profile) {
    const double sn = sphere_volume(profile.n);
    double lhs = 4.0 * profile.volume / sn + 4.0 * profile.polar_volume / sn;
    for (double r : profile.ratios) lhs += r;
    return lhs - 4.0;
}

double sum_identity_check(const ConvexBody& body, const QuadratureGrid& grid) {
    IntrinsicProfile p;
    p.n = body.n();
    const auto ratios = omega_ratio_profile(body, grid);
    for (const auto& r : ratios) p.ratios.push_back(r.value);
    p.volume = body_volume(body, grid).value;
    p.polar_volume = polar_volume(body, grid).value;
    return sum_identity_residual(p);
}

bool bound_check(const ConvexBody& body, int k, const QuadratureGrid& grid) {
    return omega_ratio_convex(body, k, grid).value <= 4.0 + 1e-6;
}

}  // namespace tflats
