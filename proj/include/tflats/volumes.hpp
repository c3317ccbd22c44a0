#pragma once

#include <utility>
#include <vector>

namespace tflats {

/// Dimension of the Grassmannian of projective k-flats in RP^n: (k+1)(n-k).
int flat_grassmannian_dim(int k, int n);

/// Volume of the unit sphere S^n.
double sphere_volume(int n);

/// Volume of O(n) in the metric <A,B> = tr(A^T B)/2, by |O(m+1)| = |S^m| |O(m)|, |O(1)| = 2.
/// |O(0)| is taken as 1.
double orthogonal_volume(int n);

/// |Gr(k,n)| = |O(n)| / (|O(k)| |O(n-k)|), k-planes in R^n.
double grassmannian_volume(int k, int n);

/// |G(k,n)| for projective k-flats in RP^n, i.e. |Gr(k+1,n+1)|.
double flat_grassmannian_volume(int k, int n);

/// |Sch(k,n)| / |G(k,n)|, the relative volume of the special Schubert variety.
struct GammaRatio {
    double value = 0.0;
    int k = 0;
    int n = 0;
};

GammaRatio schubert_ratio(int k, int n);

/// |Sch(k,n)|.
double schubert_volume(int k, int n);

/// f_k(eps) = int_0^eps cos^k(t) sin^{n-1-k}(t) dt by adaptive Gauss-Kronrod.
double f_universal(int k, int n, double eps);

/// int_0^rho sin^m(t) dt in closed form (any rho).
double sin_power_integral(int m, double rho);

/// Volume of a geodesic ball of radius r in S^n (r <= pi).
double cap_volume(int n, double r);

/// |Omega_k(S_r)| / |Sch(k,n)| for a metric sphere of radius r in RP^n.
double sphere_omega_ratio(int k, int n, double r);

/// Maximizer and maximum of sphere_omega_ratio(1, n, .) over (0, pi/2).
std::pair<double, double> max_sphere_line_ratio(int n);

/// Leading term of the large-n asymptotic of delta_{1,n}; an approximation only.
double delta_asymptotic_1n(int n);

/// alpha(k+1, n-k) = delta / (|G(k,n)| * schubert_ratio^{d_{k,n}}).
double alpha_from_delta(int k, int n, double delta);

/// Inputs to the product formula for tau_k.
struct TauInputs {
    int k = 0;
    int n = 0;
    std::vector<double> ratios;  ///< |Omega_k(X_i)| / |Sch(k,n)|, one per body
    double delta = 0.0;          ///< expected degree delta_{k,n}
};

/// tau_k = delta * prod ratios.
double tau_formula(const TauInputs& inputs);

/// delta_{k,n} when it is known exactly (k = 0 or k = n-1), otherwise throws Unsupported.
double exact_delta(int k, int n);

/// Binomial coefficient as a double.
double binomial(int n, int k);

}  // namespace tflats
