#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "tflats/projective.hpp"

namespace tflats {

enum class BodyKind { MetricSphere, AffineSphere, Ellipsoid, Quadric, ImplicitHomogeneous };

std::string to_string(BodyKind kind);

/// Homogeneous polynomial in n+1 variables given as a list of monomials.
class HomogeneousPolynomial {
public:
    struct Term {
        double coef = 0.0;
        std::vector<int> exponents;
    };

    HomogeneousPolynomial() = default;
    /// Throws InvalidArgument when terms have different degrees or variable counts.
    HomogeneousPolynomial(int variables, std::vector<Term> terms);

    int variables() const { return vars_; }
    int degree() const { return degree_; }
    const std::vector<Term>& terms() const { return terms_; }

    double value(const Vec& x) const;
    /// Value, gradient and Hessian at x.
    void evaluate(const Vec& x, double& value, Vec& grad, Mat& hess) const;

private:
    int vars_ = 0;
    int degree_ = 0;
    std::vector<Term> terms_;
};

/// Value, gradient and Hessian of the defining homogeneous function.
struct ImplicitJet {
    double value = 0.0;
    Vec grad;
    Mat hess;
};

/// A smooth hypersurface of RP^n bounding the region {F < 0}, together with a
/// chart of one lift to S^n. Quadric kinds are parametrized through the
/// eigenframe of their matrix; implicit polynomial bodies radially about a
/// declared interior point.
class ConvexBody {
public:
    /// Geodesic sphere of radius r in (0, pi/2) about `center` (default e_0).
    static ConvexBody metric_sphere(int n, double r);
    static ConvexBody metric_sphere(int n, double r, const Vec& center);
    /// Euclidean sphere |y - center| = radius in the affine chart x_chart = 1.
    static ConvexBody affine_sphere(int n, const Vec& center, double radius, int chart = 0);
    /// Axis-aligned ellipsoid sum ((y_i - c_i)/a_i)^2 = 1 in the affine chart x_chart = 1.
    static ConvexBody ellipsoid(int n, const Vec& semiaxes, int chart = 0);
    static ConvexBody ellipsoid(int n, const Vec& semiaxes, const Vec& center, int chart);
    /// {x^T A x = 0}; A must have exactly one eigenvalue of one sign.
    static ConvexBody quadric(const Mat& a);
    /// {F = 0} for an even-degree F with F(interior) < 0; convexity is
    /// sampled on a coarse grid and combined with the declaration.
    static ConvexBody implicit(int n, HomogeneousPolynomial f, const Vec& interior, bool declared_convex);

    BodyKind kind() const { return kind_; }
    int n() const { return n_; }
    bool convex() const { return convex_; }
    bool is_quadric() const { return kind_ != BodyKind::ImplicitHomogeneous; }

    /// Unit interior point of the parametrized lift.
    const Vec& center() const { return center_; }
    /// Radius of a metric sphere; throws for other kinds.
    double radius() const;
    /// Quadric matrix with exactly one negative eigenvalue; throws for implicit bodies.
    const Mat& quadric_matrix() const;

    ImplicitJet jet(const Vec& x) const;
    double value(const Vec& x) const;

    /// The body g.X = {g x : x in X}.
    ConvexBody rotated(const Rotation& g) const;

    /// Chart of the lift: parameter s on S^{n-1} (with derivative columns ds)
    /// to surface point x on S^n (with derivative columns dx).
    void chart(const Vec& s, const Mat& ds, Vec& x, Mat& dx) const;

    std::string describe() const;

private:
    ConvexBody() = default;
    void setup_quadric();
    double radial_root(const Vec& omega) const;

    BodyKind kind_ = BodyKind::Quadric;
    int n_ = 0;
    bool convex_ = true;
    double radius_ = 0.0;
    Vec center_;
    // quadric data
    Mat a_;
    Mat chart_map_;  // (n+1) x n, maps s to the positive-eigenvalue part
    Vec chart_offset_;
    // implicit data
    HomogeneousPolynomial poly_;
    Mat orientation_;  // F_body(x) = F(orientation^T x)
    Mat tangent_basis_;  // (n+1) x n orthonormal basis of center^perp
};

}  // namespace tflats
