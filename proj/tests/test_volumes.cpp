#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tflats/errors.hpp"
#include "tflats/volumes.hpp"

using namespace tflats;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Gamma(a + 1/2) / Gamma(a) via the Wallis integrals, no gamma function involved:
// int_0^pi sin^m = sqrt(pi) Gamma((m+1)/2) / Gamma(m/2 + 1).
double wallis(int m) {
    return oracle::simpson([m](double t) { return std::pow(std::sin(t), m); }, 0.0, M_PI);
}

// |Omega_k(C)| / |Sch(k,n)| for a metric ball, written out from scratch
double sphere_ratio_oracle(int k, int n, double r) {
    const double c = 2.0 * std::tgamma(0.5 * (n + 1)) / (std::tgamma(0.5 * (k + 2)) * std::tgamma(0.5 * (n - k + 1)));
    return c * std::pow(std::cos(r), k) * std::pow(std::sin(r), n - k - 1);
}

}  // namespace

TEST_CASE("sphere volumes match the sin-power recursion") {
    for (int n = 0; n <= 10; ++n) CHECK(rel(sphere_volume(n), oracle::sphere_volume(n)) < 1e-10);
    CHECK(sphere_volume(1) == doctest::Approx(2 * M_PI));
    CHECK(sphere_volume(2) == doctest::Approx(4 * M_PI));
    CHECK_THROWS_AS(sphere_volume(-1), InvalidArgument);
}

TEST_CASE("orthogonal group volumes follow |O(n+1)| = |S^n| |O(n)|") {
    CHECK(orthogonal_volume(1) == 2.0);
    for (int n = 1; n < 8; ++n)
        CHECK(rel(orthogonal_volume(n + 1), oracle::sphere_volume(n) * orthogonal_volume(n)) < 1e-10);
}

TEST_CASE("Grassmannian volumes") {
    // G(1,3) of lines in RP^3 has volume 2 pi^2 (the Grassmannian of 2-planes in R^4)
    CHECK(rel(flat_grassmannian_volume(1, 3), 2 * M_PI * M_PI) < 1e-12);
    // points of RP^n: half a sphere
    for (int n = 1; n < 7; ++n) CHECK(rel(flat_grassmannian_volume(0, n), 0.5 * oracle::sphere_volume(n)) < 1e-10);
    // duality G(k,n) = G(n-1-k,n)
    for (int n = 2; n < 8; ++n)
        for (int k = 0; k < n; ++k) CHECK(rel(flat_grassmannian_volume(k, n), flat_grassmannian_volume(n - 1 - k, n)) < 1e-12);
    CHECK(flat_grassmannian_dim(1, 3) == 4);
    CHECK(flat_grassmannian_dim(2, 6) == 12);
}

TEST_CASE("Schubert ratio agrees with Wallis integrals") {
    for (int n = 1; n < 9; ++n)
        for (int k = 0; k < n; ++k) {
            const double a = std::sqrt(M_PI) / wallis(k);          // Gamma((k+2)/2) / Gamma((k+1)/2)
            const double b = std::sqrt(M_PI) / wallis(n - k - 1);  // Gamma((n-k+1)/2) / Gamma((n-k)/2)
            CHECK(rel(schubert_ratio(k, n).value, a * b) < 1e-9);
        }
    CHECK(rel(schubert_ratio(1, 3).value, M_PI / 4) < 1e-14);
    CHECK(rel(schubert_volume(1, 3), std::pow(M_PI, 3) / 2) < 1e-12);
    CHECK_THROWS_AS(schubert_ratio(3, 3), InvalidArgument);
}

TEST_CASE("f_k matches Simpson") {
    for (int n = 1; n < 7; ++n)
        for (int k = 0; k < n; ++k)
            for (double eps : {0.01, 0.3, 1.0, 1.5}) {
                const double ref = oracle::simpson(
                    [=](double t) { return std::pow(std::cos(t), k) * std::pow(std::sin(t), n - 1 - k); }, 0.0, eps);
                CHECK(std::abs(f_universal(k, n, eps) - ref) < 1e-12);
            }
    CHECK(f_universal(0, 3, 0.0) == 0.0);
    CHECK_THROWS_AS(f_universal(0, 3, 2.0), InvalidArgument);
    CHECK_THROWS_AS(f_universal(0, 3, -0.1), InvalidArgument);
}

TEST_CASE("cap volumes") {
    for (int n = 1; n < 8; ++n) {
        for (double r : {0.2, M_PI / 4, 1.3}) {
            const double sn1 = oracle::sphere_volume(n - 1);
            const double ref = sn1 * oracle::simpson([n](double t) { return std::pow(std::sin(t), n - 1); }, 0.0, r);
            CHECK(rel(cap_volume(n, r), ref) < 1e-10);
        }
        // the ball of radius pi/2 is all of RP^n
        CHECK(rel(cap_volume(n, M_PI / 2), 0.5 * oracle::sphere_volume(n)) < 1e-12);
    }
}

TEST_CASE("metric ball ratios: closed form, boundary cases and duality") {
    for (int n = 2; n < 9; ++n) {
        for (double r : {M_PI / 6, M_PI / 4, M_PI / 3}) {
            // tangent points = the boundary sphere: |S^{n-1}| sin^{n-1} r over |RP^{n-1}|
            CHECK(rel(sphere_omega_ratio(0, n, r), 2 * std::pow(std::sin(r), n - 1)) < 1e-12);
            // tangent hyperplanes form the polar ball of radius pi/2 - r
            CHECK(rel(sphere_omega_ratio(n - 1, n, r), 2 * std::pow(std::cos(r), n - 1)) < 1e-12);
            for (int k = 0; k < n; ++k) {
                CHECK(rel(sphere_omega_ratio(k, n, r), sphere_ratio_oracle(k, n, r)) < 1e-12);
                CHECK(rel(sphere_omega_ratio(k, n, r), sphere_omega_ratio(n - 1 - k, n, M_PI / 2 - r)) < 1e-12);
            }
        }
    }
    CHECK(rel(sphere_omega_ratio(1, 3, M_PI / 4), 4 / M_PI) < 1e-12);
    CHECK_THROWS_AS(sphere_omega_ratio(1, 3, 0.0), InvalidArgument);
    CHECK_THROWS_AS(sphere_omega_ratio(1, 3, M_PI / 2), InvalidArgument);
}

TEST_CASE("the line ratio of a ball peaks at arccos(1/sqrt(n-1))") {
    for (int n = 3; n <= 10; ++n) {
        // golden-section search on the independent closed form
        double a = 0.01, b = M_PI / 2 - 0.01;
        const double g = (std::sqrt(5.0) - 1) / 2;
        for (int it = 0; it < 200; ++it) {
            const double c = b - g * (b - a), d = a + g * (b - a);
            if (sphere_ratio_oracle(1, n, c) > sphere_ratio_oracle(1, n, d)) b = d;
            else a = c;
        }
        const auto [r, v] = max_sphere_line_ratio(n);
        CHECK(std::abs(r - 0.5 * (a + b)) < 1e-7);
        CHECK(std::abs(r - std::acos(1 / std::sqrt(n - 1.0))) < 1e-14);
        CHECK(rel(v, sphere_ratio_oracle(1, n, r)) < 1e-12);
    }
}

TEST_CASE("tau formula") {
    const double ratio = 4 / M_PI;
    const double tau = tau_formula({1, 3, {ratio, ratio, ratio, ratio}, 1.7262});
    CHECK(tau == doctest::Approx(4.536).epsilon(2e-4));
    CHECK_THROWS_AS(tau_formula({1, 3, {1.0, 1.0, 1.0}, 1.7262}), InvalidArgument);
    CHECK_THROWS_AS(tau_formula({1, 3, {1.0, 1.0, 1.0, -1.0}, 1.7262}), InvalidArgument);
}

TEST_CASE("exact delta only where it is known") {
    CHECK(exact_delta(0, 5) == 1.0);
    CHECK(exact_delta(4, 5) == 1.0);
    CHECK_THROWS_AS(exact_delta(1, 3), Unsupported);
}

TEST_CASE("alpha for hyperplanes is the mean absolute determinant of unit vectors") {
    // delta_{0,n} = 1, so alpha(1, n) = E|det(v_1 .. v_n)| with v_i uniform on S^{n-1}
    std::mt19937_64 gen(17);
    std::normal_distribution<double> nd;
    for (int n : {2, 3, 4}) {
        std::vector<double> dets;
        for (int s = 0; s < 200000; ++s) {
            Eigen::MatrixXd m(n, n);
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < n; ++i) m(i, j) = nd(gen);
                m.col(j).normalize();
            }
            dets.push_back(std::abs(m.determinant()));
        }
        const auto st = oracle::stats(dets);
        CHECK(std::abs(alpha_from_delta(n - 1, n, 1.0) - st.mean) < 4 * st.se);
    }
    // n = 2: E|sin(angle)| = 2/pi
    CHECK(rel(alpha_from_delta(1, 2, 1.0), 2 / M_PI) < 1e-12);
}

TEST_CASE("binomial") {
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(4, 5) == 0);
}

TEST_CASE("small cases by hand") {
    CHECK(rel(sphere_volume(3), 2 * M_PI * M_PI) < 1e-14);
    CHECK(rel(orthogonal_volume(2), 4 * M_PI) < 1e-14);
    CHECK(rel(orthogonal_volume(3), 16 * M_PI * M_PI) < 1e-14);
    CHECK(rel(grassmannian_volume(1, 2), M_PI) < 1e-14);
    CHECK(rel(grassmannian_volume(2, 4), orthogonal_volume(4) / std::pow(orthogonal_volume(2), 2)) < 1e-14);
    CHECK(rel(schubert_ratio(0, 1).value, 1 / M_PI) < 1e-14);
    CHECK(std::abs(f_universal(1, 3, M_PI / 4) - 0.25) < 1e-13);
    CHECK(std::abs(f_universal(0, 1, 0.7) - 0.7) < 1e-13);
    const auto [r3, v3] = max_sphere_line_ratio(3);
    CHECK(std::abs(r3 - M_PI / 4) < 1e-15);
    CHECK(rel(v3, 4 / M_PI) < 1e-14);
    // the maximum tends to sqrt(8/(e pi)) (1 + 1/(2n))
    const double limit = std::sqrt(8 / (std::exp(1.0) * M_PI));
    CHECK(std::abs(max_sphere_line_ratio(2000).second / limit - 1 - 1 / 4000.0) < 1e-6);
    CHECK_THROWS_AS(max_sphere_line_ratio(2), InvalidArgument);
}
