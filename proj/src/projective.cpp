#include "tflats/projective.hpp"

#include <algorithm>
#include <cmath>

#include "tflats/errors.hpp"

namespace tflats {

namespace {

constexpr double kSignZero = 1e-12;

void next_subset(std::vector<int>& s, int set_size, bool& done) {
    const int m = static_cast<int>(s.size());
    int i = m - 1;
    while (i >= 0 && s[i] == set_size - m + i) --i;
    if (i < 0) {
        done = true;
        return;
    }
    ++s[i];
    for (int j = i + 1; j < m; ++j) s[j] = s[j - 1] + 1;
}

// Sign of the permutation sorting `seq`, or 0 when `seq` has a repeat.
int sort_sign(std::vector<int>& seq) {
    int sign = 1;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        for (std::size_t j = i; j > 0 && seq[j - 1] >= seq[j]; --j) {
            if (seq[j - 1] == seq[j]) return 0;
            std::swap(seq[j - 1], seq[j]);
            sign = -sign;
        }
    }
    return sign;
}

}  // namespace

ProjectivePoint::ProjectivePoint(const Vec& v) {
    const double norm = v.norm();
    if (!(norm > 1e-300)) throw InvalidArgument("projective point from zero vector");
    v_ = v / norm;
}

bool ProjectivePoint::same_point(const ProjectivePoint& other, double tol) const {
    if (other.v_.size() != v_.size()) return false;
    return std::min((v_ - other.v_).norm(), (v_ + other.v_).norm()) <= tol;
}

Mat orthonormalize_rows(const Mat& m) {
    Eigen::HouseholderQR<Mat> qr(m.transpose());
    const Mat r = qr.matrixQR().topRows(m.rows()).triangularView<Eigen::Upper>();
    const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (std::abs(r(i, i)) < 1e-12 * scale)
            throw InvalidArgument("flat frame rows are linearly dependent");
    }
    Mat q = qr.householderQ() * Mat::Identity(m.cols(), m.rows());
    return q.transpose();
}

Mat orthogonal_complement(const Mat& m) {
    Eigen::HouseholderQR<Mat> qr(m);
    const Mat q = qr.householderQ();
    return q.rightCols(m.rows() - m.cols());
}

FlatFrame FlatFrame::from_rows(int n, int k, const Mat& rows) {
    if (k < 0 || k > n) throw InvalidArgument("flat dimension k must satisfy 0 <= k <= n");
    if (rows.rows() != k + 1 || rows.cols() != n + 1)
        throw InvalidArgument("flat frame must be (k+1) x (n+1)");
    return FlatFrame(n, k, orthonormalize_rows(rows));
}

bool FlatFrame::same_span(const FlatFrame& other, double tol) const {
    if (other.n_ != n_ || other.k_ != k_) return false;
    return (projector() - other.projector()).norm() <= tol;
}

Rotation::Rotation(Mat g) : g_(std::move(g)) {
    if (g_.rows() != g_.cols() || g_.rows() < 1) throw InvalidArgument("rotation must be square");
    const Mat defect = g_.transpose() * g_ - Mat::Identity(g_.rows(), g_.cols());
    if (defect.cwiseAbs().maxCoeff() > 1e-10) throw InvalidArgument("matrix is not orthogonal");
}

Rotation Rotation::identity(int n) { return Rotation(Mat::Identity(n + 1, n + 1), Unchecked{}); }

Rotation Rotation::operator*(const Rotation& other) const {
    if (other.g_.rows() != g_.rows()) throw InvalidArgument("rotation dimension mismatch");
    return Rotation(g_ * other.g_, Unchecked{});
}

std::vector<std::vector<int>> index_subsets(int set_size, int size) {
    std::vector<std::vector<int>> out;
    if (size < 0 || size > set_size) return out;
    std::vector<int> s(size);
    for (int i = 0; i < size; ++i) s[i] = i;
    bool done = false;
    while (!done) {
        out.push_back(s);
        next_subset(s, set_size, done);
    }
    return out;
}

Mat compound_matrix(const Mat& g, int m) {
    const auto rows = index_subsets(static_cast<int>(g.rows()), m);
    const auto cols = index_subsets(static_cast<int>(g.cols()), m);
    Mat c(rows.size(), cols.size());
    Mat minor(m, m);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) minor(a, b) = g(rows[i][a], cols[j][b]);
            c(i, j) = m == 0 ? 1.0 : minor.determinant();
        }
    }
    return c;
}

PluckerVector plucker_embed(const FlatFrame& f) {
    const int m = f.k() + 1;
    const auto sets = index_subsets(f.n() + 1, m);
    PluckerVector p;
    p.n = f.n();
    p.k = f.k();
    p.coords.resize(static_cast<Eigen::Index>(sets.size()));
    Mat minor(m, m);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) minor(a, b) = f.frame()(a, sets[i][b]);
        p.coords[static_cast<Eigen::Index>(i)] = minor.determinant();
    }
    p.coords.normalize();
    for (Eigen::Index i = 0; i < p.coords.size(); ++i) {
        if (std::abs(p.coords[i]) > kSignZero) {
            if (p.coords[i] < 0) p.coords = -p.coords;
            break;
        }
    }
    return p;
}

double plucker_relation_residual(const PluckerVector& p) {
    const int m = p.k + 1;
    const int dim = p.n + 1;
    if (m < 2 || m > dim - 2) return 0.0;  // every vector is decomposable there
    const auto sets = index_subsets(dim, m);
    auto coord = [&](std::vector<int> seq) {
        const int sign = sort_sign(seq);
        if (sign == 0) return 0.0;
        const auto it = std::lower_bound(sets.begin(), sets.end(), seq);
        return sign * p.coords[it - sets.begin()];
    };
    double worst = 0.0;
    for (const auto& I : index_subsets(dim, m - 1)) {
        for (const auto& J : index_subsets(dim, m + 1)) {
            double rel = 0.0;
            for (int l = 0; l <= m; ++l) {
                std::vector<int> left = I;
                left.push_back(J[l]);
                std::vector<int> right;
                for (int t = 0; t <= m; ++t)
                    if (t != l) right.push_back(J[t]);
                rel += ((l % 2) ? -1.0 : 1.0) * coord(left) * coord(right);
            }
            worst = std::max(worst, std::abs(rel));
        }
    }
    return worst;
}

Rotation haar_rotation(int n, RngStream& rng) {
    if (n < 1) throw InvalidArgument("haar_rotation requires n >= 1");
    const int d = n + 1;
    Mat z(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) z(i, j) = rng.normal();
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ();
    const auto& r = qr.matrixQR();
    for (int j = 0; j < d; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    return Rotation(std::move(q));
}

FlatFrame sample_flat(int k, int n, RngStream& rng) {
    if (k < 0 || k > n) throw InvalidArgument("sample_flat requires 0 <= k <= n");
    const Rotation g = haar_rotation(n, rng);
    return FlatFrame::from_rows(n, k, g.matrix().leftCols(k + 1).transpose());
}

FlatFrame apply_rotation(const Rotation& g, const FlatFrame& f) {
    if (g.n() != f.n()) throw InvalidArgument("rotation and flat live in different dimensions");
    return FlatFrame::from_rows(f.n(), f.k(), f.frame() * g.matrix().transpose());
}

}  // namespace tflats
