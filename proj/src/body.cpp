#include "tflats/body.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <sstream>

#include "tflats/curvature.hpp"
#include "tflats/errors.hpp"
#include "tflats/quadrature.hpp"

namespace tflats {

std::string to_string(BodyKind kind) {
    switch (kind) {
        case BodyKind::MetricSphere: return "metric_sphere";
        case BodyKind::AffineSphere: return "affine_sphere";
        case BodyKind::Ellipsoid: return "ellipsoid";
        case BodyKind::Quadric: return "quadric";
        case BodyKind::ImplicitHomogeneous: return "implicit";
    }
    return "unknown";
}

HomogeneousPolynomial::HomogeneousPolynomial(int variables, std::vector<Term> terms)
    : vars_(variables), terms_(std::move(terms)) {
    if (variables < 1) throw InvalidArgument("polynomial needs at least one variable");
    if (terms_.empty()) throw InvalidArgument("polynomial has no terms");
    degree_ = -1;
    for (const auto& t : terms_) {
        if (static_cast<int>(t.exponents.size()) != variables)
            throw InvalidArgument("polynomial term has wrong number of exponents");
        int d = 0;
        for (int e : t.exponents) {
            if (e < 0) throw InvalidArgument("negative exponent in polynomial term");
            d += e;
        }
        if (degree_ < 0) degree_ = d;
        if (d != degree_) throw InvalidArgument("polynomial is not homogeneous");
    }
}

double HomogeneousPolynomial::value(const Vec& x) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        double m = t.coef;
        for (int i = 0; i < vars_; ++i) m *= std::pow(x[i], t.exponents[i]);
        sum += m;
    }
    return sum;
}

void HomogeneousPolynomial::evaluate(const Vec& x, double& value, Vec& grad, Mat& hess) const {
    value = 0.0;
    grad = Vec::Zero(vars_);
    hess = Mat::Zero(vars_, vars_);
    auto pw = [&](int i, int e) { return e <= 0 ? (e == 0 ? 1.0 : 0.0) : std::pow(x[i], e); };
    for (const auto& t : terms_) {
        const auto& e = t.exponents;
        double m = t.coef;
        for (int i = 0; i < vars_; ++i) m *= pw(i, e[i]);
        value += m;
        for (int i = 0; i < vars_; ++i) {
            if (e[i] == 0) continue;
            double gi = t.coef * e[i];
            for (int j = 0; j < vars_; ++j) gi *= pw(j, j == i ? e[j] - 1 : e[j]);
            grad[i] += gi;
            for (int l = i; l < vars_; ++l) {
                double h;
                if (l == i) {
                    if (e[i] < 2) continue;
                    h = t.coef * e[i] * (e[i] - 1);
                    for (int j = 0; j < vars_; ++j) h *= pw(j, j == i ? e[j] - 2 : e[j]);
                } else {
                    if (e[l] == 0) continue;
                    h = t.coef * e[i] * e[l];
                    for (int j = 0; j < vars_; ++j) h *= pw(j, (j == i || j == l) ? e[j] - 1 : e[j]);
                }
                hess(i, l) += h;
                if (l != i) hess(l, i) += h;
            }
        }
    }
}

namespace {

Mat affine_quadric(int n, const Vec& center, const Vec& weights, double rhs, int chart) {
    if (chart < 0 || chart > n) throw InvalidArgument("chart index out of range");
    if (center.size() != n) throw InvalidArgument("affine center must have n coordinates");
    Mat a = Mat::Zero(n + 1, n + 1);
    int c = 0;
    for (int i = 0; i <= n; ++i) {
        if (i == chart) continue;
        Vec u = Vec::Zero(n + 1);
        u[i] = 1.0;
        u[chart] = -center[c];
        a += weights[c] * u * u.transpose();
        ++c;
    }
    a(chart, chart) -= rhs;
    return a;
}

void canonical_sign(Vec& v) {
    Eigen::Index i;
    v.cwiseAbs().maxCoeff(&i);
    if (v[i] < 0) v = -v;
}

}  // namespace

void ConvexBody::setup_quadric() {
    const int dim = n_ + 1;
    if (a_.rows() != dim || a_.cols() != dim) throw InvalidArgument("quadric matrix has wrong size");
    if (!a_.allFinite()) throw InvalidArgument("quadric matrix is not finite");
    a_ = 0.5 * (a_ + a_.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(a_);
    Vec lam = es.eigenvalues();
    const double scale = lam.cwiseAbs().maxCoeff();
    if (!(scale > 0)) throw DegenerateInput("quadric matrix is zero");
    int neg = 0, pos = 0;
    for (int i = 0; i < dim; ++i) {
        if (lam[i] < -1e-12 * scale) ++neg;
        else if (lam[i] > 1e-12 * scale) ++pos;
    }
    if (neg == n_ && pos == 1) {
        a_ = -a_;
        es.compute(a_);
        lam = es.eigenvalues();
        std::swap(neg, pos);
    }
    if (neg != 1 || pos != n_)
        throw DegenerateInput("quadric does not bound a strictly convex region (signature must be (1, n))");
    const Mat& q = es.eigenvectors();
    Vec q0 = q.col(0);
    canonical_sign(q0);
    center_ = q0;
    chart_offset_ = q0 / std::sqrt(-lam[0]);
    chart_map_.resize(dim, n_);
    for (int i = 1; i < dim; ++i) chart_map_.col(i - 1) = q.col(i) / std::sqrt(lam[i]);
}

ConvexBody ConvexBody::metric_sphere(int n, double r) {
    if (n < 1) throw InvalidArgument("dimension must be at least 1");
    Vec c = Vec::Zero(n + 1);
    c[0] = 1.0;
    return metric_sphere(n, r, c);
}

ConvexBody ConvexBody::metric_sphere(int n, double r, const Vec& center) {
    if (n < 1) throw InvalidArgument("dimension must be at least 1");
    if (!(r > 0.0 && r < M_PI / 2)) throw InvalidArgument("metric sphere radius must lie in (0, pi/2)");
    if (center.size() != n + 1) throw InvalidArgument("sphere center must have n+1 coordinates");
    ConvexBody b;
    b.kind_ = BodyKind::MetricSphere;
    b.n_ = n;
    b.radius_ = r;
    b.center_ = ProjectivePoint(center).vector();
    const double sec = 1.0 / std::cos(r);
    b.a_ = Mat::Identity(n + 1, n + 1) - sec * sec * b.center_ * b.center_.transpose();
    // geodesic polar coordinates about the center
    b.chart_offset_ = std::cos(r) * b.center_;
    b.chart_map_ = std::sin(r) * orthogonal_complement(b.center_);
    return b;
}

ConvexBody ConvexBody::affine_sphere(int n, const Vec& center, double radius, int chart) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("affine sphere radius must be positive");
    ConvexBody b;
    b.kind_ = BodyKind::AffineSphere;
    b.n_ = n;
    b.radius_ = radius;
    b.a_ = affine_quadric(n, center, Vec::Ones(n), radius * radius, chart);
    b.setup_quadric();
    return b;
}

ConvexBody ConvexBody::ellipsoid(int n, const Vec& semiaxes, int chart) {
    return ellipsoid(n, semiaxes, Vec::Zero(n), chart);
}

ConvexBody ConvexBody::ellipsoid(int n, const Vec& semiaxes, const Vec& center, int chart) {
    if (semiaxes.size() != n) throw InvalidArgument("ellipsoid needs n semiaxes");
    for (int i = 0; i < n; ++i)
        if (!(semiaxes[i] > 0.0) || !std::isfinite(semiaxes[i]))
            throw InvalidArgument("ellipsoid semiaxes must be positive");
    ConvexBody b;
    b.kind_ = BodyKind::Ellipsoid;
    b.n_ = n;
    b.a_ = affine_quadric(n, center, semiaxes.cwiseInverse().cwiseAbs2(), 1.0, chart);
    b.setup_quadric();
    return b;
}

ConvexBody ConvexBody::quadric(const Mat& a) {
    if (a.rows() < 2 || a.rows() != a.cols()) throw InvalidArgument("quadric matrix must be square of size n+1 >= 2");
    ConvexBody b;
    b.kind_ = BodyKind::Quadric;
    b.n_ = static_cast<int>(a.rows()) - 1;
    b.a_ = a;
    b.setup_quadric();
    return b;
}

ConvexBody ConvexBody::implicit(int n, HomogeneousPolynomial f, const Vec& interior, bool declared_convex) {
    if (n < 2) throw InvalidArgument("implicit bodies need n >= 2");
    if (f.variables() != n + 1) throw InvalidArgument("polynomial must have n+1 variables");
    if (f.degree() < 2 || f.degree() % 2 != 0)
        throw InvalidArgument("defining polynomial must have positive even degree");
    if (interior.size() != n + 1) throw InvalidArgument("interior point must have n+1 coordinates");
    ConvexBody b;
    b.kind_ = BodyKind::ImplicitHomogeneous;
    b.n_ = n;
    b.poly_ = std::move(f);
    b.center_ = ProjectivePoint(interior).vector();
    if (!(b.poly_.value(b.center_) < 0.0)) throw InvalidArgument("interior point must satisfy F < 0");
    b.orientation_ = Mat::Identity(n + 1, n + 1);
    b.tangent_basis_ = orthogonal_complement(b.center_);

    // Smoothness and convexity are sampled on a coarse grid.
    const QuadratureGrid grid = QuadratureGrid::make(n - 1, 1);
    bool sampled_convex = true;
    Vec s, x;
    Mat ds, dx;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.point(i, s, ds);
        b.chart(s, ds, x, dx);
        const CurvatureFrame fr = curvature_frame(b, ProjectivePoint(x));
        if (fr.principal.size() > 0 && fr.principal.minCoeff() <= 0.0) sampled_convex = false;
    }
    b.convex_ = declared_convex && sampled_convex;
    return b;
}

double ConvexBody::radius() const {
    if (kind_ != BodyKind::MetricSphere && kind_ != BodyKind::AffineSphere)
        throw InvalidArgument("radius is only defined for spheres");
    return radius_;
}

const Mat& ConvexBody::quadric_matrix() const {
    if (!is_quadric()) throw InvalidArgument("implicit body has no quadric matrix");
    return a_;
}

ImplicitJet ConvexBody::jet(const Vec& x) const {
    ImplicitJet j;
    if (is_quadric()) {
        const Vec ax = a_ * x;
        j.value = x.dot(ax);
        j.grad = 2.0 * ax;
        j.hess = 2.0 * a_;
    } else {
        const Vec y = orientation_.transpose() * x;
        Vec g;
        Mat h;
        poly_.evaluate(y, j.value, g, h);
        j.grad = orientation_ * g;
        j.hess = orientation_ * h * orientation_.transpose();
    }
    return j;
}

double ConvexBody::value(const Vec& x) const {
    if (is_quadric()) return x.dot(a_ * x);
    return poly_.value(orientation_.transpose() * x);
}

ConvexBody ConvexBody::rotated(const Rotation& g) const {
    if (g.n() != n_) throw InvalidArgument("rotation dimension does not match body");
    const Mat& m = g.matrix();
    ConvexBody b = *this;
    b.center_ = m * center_;
    if (is_quadric()) {
        b.a_ = m * a_ * m.transpose();
        b.chart_offset_ = m * chart_offset_;
        b.chart_map_ = m * chart_map_;
    } else {
        b.orientation_ = m * orientation_;
        b.tangent_basis_ = m * tangent_basis_;
    }
    return b;
}

double ConvexBody::radial_root(const Vec& omega) const {
    auto g = [&](double t) { return value(std::cos(t) * center_ + std::sin(t) * omega); };
    constexpr int kScan = 96;
    double lo = 0.0;
    for (int i = 1; i <= kScan; ++i) {
        const double t = M_PI * i / kScan;
        if (g(t) >= 0.0) {
            std::uintmax_t iters = 200;
            auto tol = [](double a, double b) { return std::abs(b - a) <= 4e-16 * std::max(1.0, std::abs(a)); };
            auto r = boost::math::tools::toms748_solve(g, lo, t, g(lo), g(t), tol, iters);
            return 0.5 * (r.first + r.second);
        }
        lo = t;
    }
    throw DegenerateInput("ray from the interior point never leaves the body");
}

void ConvexBody::chart(const Vec& s, const Mat& ds, Vec& x, Mat& dx) const {
    if (is_quadric()) {
        const Vec z = chart_offset_ + chart_map_ * s;
        const double nz = z.norm();
        x = z / nz;
        const Mat dz = chart_map_ * ds;
        dx = (dz - x * (x.transpose() * dz)) / nz;
        return;
    }
    const Vec omega = tangent_basis_ * s;
    const double rho = radial_root(omega);
    const double cr = std::cos(rho), sr = std::sin(rho);
    x = cr * center_ + sr * omega;
    const Vec grad = jet(x).grad;
    const Vec radial = -sr * center_ + cr * omega;
    const double denom = grad.dot(radial);
    if (std::abs(denom) < 1e-14 * grad.norm())
        throw DegenerateInput("surface is tangent to a ray from the interior point (not star-shaped)");
    const Mat domega = tangent_basis_ * ds;
    const Eigen::RowVectorXd drho = -sr * (grad.transpose() * domega) / denom;
    dx = radial * drho + sr * domega;
}

std::string ConvexBody::describe() const {
    std::ostringstream os;
    os << to_string(kind_) << " in RP^" << n_;
    if (kind_ == BodyKind::MetricSphere || kind_ == BodyKind::AffineSphere) os << ", radius " << radius_;
    if (kind_ == BodyKind::ImplicitHomogeneous) os << ", degree " << poly_.degree() << ", " << poly_.terms().size() << " terms";
    return os.str();
}

}  // namespace tflats
