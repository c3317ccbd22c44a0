#include "tflats/volumes.hpp"


#include <cmath>
#include <numbers>

#include "tflats/errors.hpp"
#include "tflats/quadrature.hpp"

namespace tflats {

using std::numbers::pi;

namespace {

void check_flat(int k, int n) {
    if (n < 1 || k < 0 || k > n - 1)
        throw InvalidArgument("need 0 <= k <= n-1 and n >= 1 (got k=" + std::to_string(k) +
                              ", n=" + std::to_string(n) + ")");
}

double gamma_ratio(double a, double b) { return std::exp(std::lgamma(a) - std::lgamma(b)); }

}  // namespace

int flat_grassmannian_dim(int k, int n) { return (k + 1) * (n - k); }

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

double sphere_volume(int n) {
    if (n < 0) throw InvalidArgument("sphere_volume requires n >= 0");
    const double h = 0.5 * (n + 1);
    return 2.0 * std::pow(pi, h) / std::tgamma(h);
}

double orthogonal_volume(int n) {
    if (n < 0) throw InvalidArgument("orthogonal_volume requires n >= 0");
    if (n == 0) return 1.0;
    double v = 2.0;
    for (int m = 1; m < n; ++m) v *= sphere_volume(m);
    return v;
}

double grassmannian_volume(int k, int n) {
    if (k < 0 || k > n) throw InvalidArgument("grassmannian_volume requires 0 <= k <= n");
    return orthogonal_volume(n) / (orthogonal_volume(k) * orthogonal_volume(n - k));
}

double flat_grassmannian_volume(int k, int n) { return grassmannian_volume(k + 1, n + 1); }

GammaRatio schubert_ratio(int k, int n) {
    check_flat(k, n);
    GammaRatio r;
    r.k = k;
    r.n = n;
    r.value = gamma_ratio(0.5 * (k + 2), 0.5 * (k + 1)) * gamma_ratio(0.5 * (n - k + 1), 0.5 * (n - k));
    return r;
}

double schubert_volume(int k, int n) { return flat_grassmannian_volume(k, n) * schubert_ratio(k, n).value; }

double f_universal(int k, int n, double eps) {
    check_flat(k, n);
    if (!(eps >= 0.0 && eps < 0.5 * pi)) throw InvalidArgument("f_universal requires 0 <= eps < pi/2");
    if (eps == 0.0) return 0.0;
    const int sin_power = n - 1 - k;
    auto integrand = [=](double t) { return std::pow(std::cos(t), k) * std::pow(std::sin(t), sin_power); };
    // The integrand is entire: composite Gauss-Legendre converges geometrically, and
    // the gap to a rule of half the order bounds the error.
    auto rule = [&](int nodes) {
        double sum = 0.0;
        for (int p = 0; p < 4; ++p) {
            const GaussRule g = gauss_legendre(nodes, 0.25 * p * eps, 0.25 * (p + 1) * eps);
            for (std::size_t i = 0; i < g.nodes.size(); ++i) sum += g.weights[i] * integrand(g.nodes[i]);
        }
        return sum;
    };
    const double value = rule(40);
    if (std::abs(value - rule(20)) > 1e-12) throw NumericalFailure("f_universal did not reach 1e-12 absolute accuracy");
    return value;
}

double sin_power_integral(int m, double rho) {
    if (m < 0) throw InvalidArgument("sin_power_integral requires m >= 0");
    // I_m = -sin^{m-1} cos / m + (m-1)/m I_{m-2}
    double even = rho;
    double odd = 1.0 - std::cos(rho);
    if (m == 0) return even;
    if (m == 1) return odd;
    const double s = std::sin(rho);
    const double c = std::cos(rho);
    double prev = (m % 2 == 0) ? even : odd;
    for (int j = (m % 2 == 0) ? 2 : 3; j <= m; j += 2)
        prev = -std::pow(s, j - 1) * c / j + (j - 1.0) / j * prev;
    return prev;
}

double cap_volume(int n, double r) {
    if (n < 1) throw InvalidArgument("cap_volume requires n >= 1");
    return sphere_volume(n - 1) * sin_power_integral(n - 1, r);
}

double sphere_omega_ratio(int k, int n, double r) {
    check_flat(k, n);
    if (!(r > 0.0 && r < 0.5 * pi)) throw InvalidArgument("sphere radius must lie in (0, pi/2)");
    const double c = 2.0 * std::exp(std::lgamma(0.5 * (n + 1)) - std::lgamma(0.5 * (k + 2)) -
                                    std::lgamma(0.5 * (n - k + 1)));
    return c * std::pow(std::cos(r), k) * std::pow(std::sin(r), n - k - 1);
}

std::pair<double, double> max_sphere_line_ratio(int n) {
    if (n < 3) throw InvalidArgument("max_sphere_line_ratio requires n >= 3");
    const double r = std::acos(1.0 / std::sqrt(n - 1.0));
    const double value = 4.0 / std::sqrt(pi) * std::pow((n - 2.0) / (n - 1.0), 0.5 * (n - 2)) /
                         std::sqrt(n - 1.0) * gamma_ratio(0.5 * (n + 1), 0.5 * n);
    return {r, value};
}

double delta_asymptotic_1n(int n) {
    if (n < 2) throw InvalidArgument("delta_asymptotic_1n requires n >= 2");
    return 8.0 / (3.0 * std::pow(pi, 2.5)) / std::sqrt(static_cast<double>(n)) *
           std::pow(pi * pi / 4.0, n);
}

double alpha_from_delta(int k, int n, double delta) {
    if (delta < 0.0) throw InvalidArgument("delta must be nonnegative");
    const double ratio = schubert_ratio(k, n).value;
    return delta / (flat_grassmannian_volume(k, n) * std::pow(ratio, flat_grassmannian_dim(k, n)));
}

double tau_formula(const TauInputs& in) {
    check_flat(in.k, in.n);
    const auto d = static_cast<std::size_t>(flat_grassmannian_dim(in.k, in.n));
    if (in.ratios.size() != d)
        throw InvalidArgument("tau formula needs exactly " + std::to_string(d) + " tangent ratios, got " +
                              std::to_string(in.ratios.size()));
    if (in.delta < 0.0) throw InvalidArgument("delta must be nonnegative");
    double tau = in.delta;
    for (double r : in.ratios) {
        if (r < 0.0) throw InvalidArgument("tangent ratios must be nonnegative");
        tau *= r;
    }
    return tau;
}

double exact_delta(int k, int n) {
    check_flat(k, n);
    if (k == 0 || k == n - 1) return 1.0;
    throw Unsupported("delta_{k,n} is only known exactly for k = 0 or k = n-1 (got k=" +
                      std::to_string(k) + ", n=" + std::to_string(n) + ")");
}

}  // namespace tflats
