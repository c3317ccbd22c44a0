#include "tflats/schubert.hpp"

#include <algorithm>
#include <cmath>

#include "tflats/errors.hpp"
#include "tflats/parallel.hpp"
#include "tflats/volumes.hpp"

namespace tflats {

namespace {

void require_line(const PluckerVector& l) {
    if (l.n != 3 || l.k != 1 || l.coords.size() != 6) throw InvalidArgument("expected a line in RP^3");
}

constexpr double kRankTol = 1e-10;
constexpr double kTangencyTol = 1e-10;

}  // namespace

Mat plucker_form() {
    // coordinate order 01, 02, 03, 12, 13, 23
    Mat j = Mat::Zero(6, 6);
    j(0, 5) = j(5, 0) = 0.5;
    j(1, 4) = j(4, 1) = -0.5;
    j(2, 3) = j(3, 2) = 0.5;
    return j;
}

double meet_pairing(const PluckerVector& l, const PluckerVector& m) {
    require_line(l);
    require_line(m);
    const Vec& p = l.coords;
    const Vec& q = m.coords;
    return p[0] * q[5] - p[1] * q[4] + p[2] * q[3] + p[5] * q[0] - p[4] * q[1] + p[3] * q[2];
}

int TransversalCount::count() const {
    switch (kind) {
        case Kind::Zero: return 0;
        case Kind::One: return 1;
        case Kind::Two: return 2;
        case Kind::Degenerate: break;
    }
    throw DegenerateInput("degenerate configuration has no transversal count");
}

TransversalCount transversal_count(const PluckerVector& l1, const PluckerVector& l2,
                                   const PluckerVector& l3, const PluckerVector& l4) {
    const PluckerVector* lines[4] = {&l1, &l2, &l3, &l4};
    const Mat j = plucker_form();
    Mat system(4, 6);
    for (int i = 0; i < 4; ++i) {
        require_line(*lines[i]);
        system.row(i) = (2.0 * j * lines[i]->coords).transpose();
    }
    Eigen::JacobiSVD<Mat> svd(system, Eigen::ComputeFullV);
    const Vec& sv = svd.singularValues();
    TransversalCount out;
    out.condition = sv[3] > 0 ? sv[0] / sv[3] : INFINITY;
    if (!(sv[3] > kRankTol * sv[0])) return out;  // kernel of dimension > 2

    const Vec a = svd.matrixV().col(4);
    const Vec b = svd.matrixV().col(5);
    // (s a + t b)^T J (s a + t b) = qa s^2 + 2 qab s t + qb t^2
    const double qa = a.dot(j * a), qb = b.dot(j * b), qab = a.dot(j * b);
    const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qab)});
    out.discriminant = qab * qab - qa * qb;
    if (std::abs(out.discriminant) < kTangencyTol * scale * scale) out.kind = TransversalCount::Kind::One;
    else out.kind = out.discriminant > 0 ? TransversalCount::Kind::Two : TransversalCount::Kind::Zero;
    return out;
}

MCEstimate estimate_delta(int k, int n, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
    if (n < 1 || k < 0 || k > n - 1) throw InvalidArgument("flat dimension must satisfy 0 <= k <= n-1");
    if (samples < 1) throw InvalidArgument("samples must be at least 1");
    MCEstimate est;
    est.seed = seed;
    if (k == 0 || k == n - 1) {
        est.mean = exact_delta(k, n);
        est.samples = samples;
        return est;
    }
    if (k != 1 || n != 3)
        throw Unsupported("Monte Carlo delta_{k,n} is only implemented for (k,n) = (1,3); got (" +
                          std::to_string(k) + "," + std::to_string(n) + ")");

    struct Tally {
        std::uint64_t used = 0, degenerate = 0, sum = 0, sum_sq = 0;
    };
    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    const auto tallies = parallel_map<Tally>(chunks, workers, [&](std::size_t c) {
        Tally t;
        const std::uint64_t end = std::min<std::uint64_t>(samples, (c + 1) * kChunk);
        for (std::uint64_t i = c * kChunk; i < end; ++i) {
            RngStream rng(seed, i);
            PluckerVector l[4];
            for (auto& line : l) line = plucker_embed(sample_flat(1, 3, rng));
            const TransversalCount tc = transversal_count(l[0], l[1], l[2], l[3]);
            if (tc.degenerate()) {
                ++t.degenerate;
                continue;
            }
            const std::uint64_t v = static_cast<std::uint64_t>(tc.count());
            ++t.used;
            t.sum += v;
            t.sum_sq += v * v;
        }
        return t;
    });
    Tally total;
    for (const auto& t : tallies) {
        total.used += t.used;
        total.degenerate += t.degenerate;
        total.sum += t.sum;
        total.sum_sq += t.sum_sq;
    }
    est.samples = total.used;
    est.degenerate = total.degenerate;
    if (total.used == 0) throw NumericalFailure("every Monte Carlo draw was degenerate");
    const double m = static_cast<double>(total.used);
    est.mean = static_cast<double>(total.sum) / m;
    if (total.used > 1) {
        est.variance = (static_cast<double>(total.sum_sq) - m * est.mean * est.mean) / (m - 1.0);
        est.std_error = std::sqrt(est.variance / m);
    }
    return est;
}

}  // namespace tflats
