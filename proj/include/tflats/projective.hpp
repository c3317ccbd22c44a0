#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "tflats/random.hpp"

namespace tflats {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A point of RP^n, stored as a unit representative on the double cover S^n.
class ProjectivePoint {
public:
    /// Normalizes `v`; throws InvalidArgument for a (near) zero vector.
    explicit ProjectivePoint(const Vec& v);

    const Vec& vector() const { return v_; }
    int ambient_dim() const { return static_cast<int>(v_.size()) - 1; }

    /// Projective equality: v == +-w up to `tol`.
    bool same_point(const ProjectivePoint& other, double tol = 1e-10) const;

private:
    Vec v_;
};

/// A projective k-flat in RP^n, i.e. a (k+1)-plane of R^{n+1}, stored as a
/// row-orthonormal (k+1) x (n+1) frame.
class FlatFrame {
public:
    /// Orthonormalizes the rows of `rows`; throws if they are dependent.
    static FlatFrame from_rows(int n, int k, const Mat& rows);

    int n() const { return n_; }
    int k() const { return k_; }
    const Mat& frame() const { return frame_; }

    /// Orthogonal projector onto the row span.
    Mat projector() const { return frame_.transpose() * frame_; }

    /// Span-level equality.
    bool same_span(const FlatFrame& other, double tol = 1e-10) const;

private:
    FlatFrame(int n, int k, Mat frame) : n_(n), k_(k), frame_(std::move(frame)) {}

    int n_;
    int k_;
    Mat frame_;
};

/// Unit, sign-canonical Plücker coordinates of a flat. Coordinates are the
/// (k+1)-minors of the frame, indexed by increasing column subsets in
/// lexicographic order (for lines in RP^3: 01, 02, 03, 12, 13, 23).
struct PluckerVector {
    int n = 0;
    int k = 0;
    Vec coords;
};

/// Orthogonal transformation of R^{n+1}.
class Rotation {
public:
    /// Validates g^T g = I within 1e-10.
    explicit Rotation(Mat g);

    static Rotation identity(int n);

    const Mat& matrix() const { return g_; }
    int n() const { return static_cast<int>(g_.rows()) - 1; }
    Rotation inverse() const { return Rotation(g_.transpose(), Unchecked{}); }
    Rotation operator*(const Rotation& other) const;

private:
    struct Unchecked {};
    Rotation(Mat g, Unchecked) : g_(std::move(g)) {}

    Mat g_;
};

/// Sorted (size)-subsets of {0,...,set_size-1} in lexicographic order.
std::vector<std::vector<int>> index_subsets(int set_size, int size);

/// Signed Plücker coordinates of the wedge of the frame rows, normalized and
/// with the first coordinate of magnitude above 1e-12 made positive.
PluckerVector plucker_embed(const FlatFrame& f);

/// Largest absolute residual over all quadratic Plücker relations.
double plucker_relation_residual(const PluckerVector& p);

/// m-th compound matrix: entry (I,J) is the minor of g on rows I, columns J.
Mat compound_matrix(const Mat& g, int m);

/// Haar-distributed element of O(n+1): QR of a Gaussian matrix with the
/// signs of diag(R) folded into Q.
Rotation haar_rotation(int n, RngStream& rng);

/// Uniformly distributed k-flat of RP^n: a Haar rotation applied to span(e_0..e_k).
FlatFrame sample_flat(int k, int n, RngStream& rng);

/// Row span of the result is g applied to the row span of f.
FlatFrame apply_rotation(const Rotation& g, const FlatFrame& f);

/// Rows of `m` replaced by an orthonormal basis of their span.
Mat orthonormalize_rows(const Mat& m);

/// Orthonormal basis (as columns) of the orthogonal complement of the columns of `m`.
Mat orthogonal_complement(const Mat& m);

}  // namespace tflats
