#include "tflats/tangency.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tflats/errors.hpp"
#include "tflats/parallel.hpp"
#include "tflats/schubert.hpp"

namespace tflats {

namespace {

using C = std::complex<double>;
using CMat6 = Eigen::Matrix<C, 6, 6>;

constexpr int kPaths = 32;

C bilinear(const CVec6& a, const CVec6& p) { return a.cwiseProduct(p).sum(); }

// H_i(p, t) = (1 - t) gamma (a_i.p)(b_i.p) + t p^T Q_i p for i < 5, plus the
// patch row c.p = 1.
struct Homotopy {
    std::array<CMat6, 5> q;
    std::array<CVec6, 5> a, b;
    C gamma;

    void eval(const CVec6& p, double t, const CVec6& c, CVec6& h, CMat6& hp, CVec6* ht) const {
        for (int i = 0; i < 5; ++i) {
            const C ap = bilinear(a[i], p), bp = bilinear(b[i], p);
            const CVec6 qp = q[i] * p;
            const C f = bilinear(p, qp);
            h[i] = (1.0 - t) * gamma * ap * bp + t * f;
            hp.row(i) = ((1.0 - t) * gamma * (bp * a[i] + ap * b[i]) + 2.0 * t * qp).transpose();
            if (ht) (*ht)[i] = f - gamma * ap * bp;
        }
        h[5] = bilinear(c, p) - 1.0;
        hp.row(5) = c.transpose();
        if (ht) (*ht)[5] = 0.0;
    }
};

CVec6 random_cvec(RngStream& rng) {
    CVec6 v;
    for (int i = 0; i < 6; ++i) v[i] = C(rng.normal(), rng.normal());
    return v;
}

enum class PathEnd { Finished, Stalled, Failed };

struct PathResult {
    CVec6 p;
    PathEnd end = PathEnd::Failed;
    double t = 0.0;
    int steps = 0;
};

PathResult track(const Homotopy& hom, CVec6 p, const SolverOptions& opt) {
    constexpr double kMaxStep = 0.1, kMinStep = 1e-14, kTol = 1e-9;
    PathResult res;
    double t = 0.0, h = 0.02;
    int streak = 0;
    p /= p.norm();
    CVec6 c = p.conjugate();
    CVec6 hv, htv;
    CMat6 hp;
    auto velocity = [&](const CVec6& x, double tt, CVec6& v) {
        hom.eval(x, tt, c, hv, hp, &htv);
        v = -hp.partialPivLu().solve(htv);
        return v.allFinite();
    };
    for (res.steps = 0; res.steps < opt.max_steps && t < 1.0; ++res.steps) {
        const bool last = h >= 1.0 - t;
        const double step = last ? 1.0 - t : h;
        CVec6 k1, k2, k3, k4;
        bool ok = velocity(p, t, k1) && velocity(p + 0.5 * step * k1, t + 0.5 * step, k2) &&
                  velocity(p + 0.5 * step * k2, t + 0.5 * step, k3) && velocity(p + step * k3, t + step, k4);
        CVec6 x = p + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double tn = last ? 1.0 : t + step;
        if (ok) {
            ok = false;
            double prev = INFINITY;
            for (int it = 0; it < 3; ++it) {
                hom.eval(x, tn, c, hv, hp, nullptr);
                const CVec6 dx = -hp.partialPivLu().solve(hv);
                const double nd = dx.norm();
                if (!std::isfinite(nd) || (it == 0 && nd > 0.1) || (it > 0 && nd > 0.5 * prev)) break;
                x += dx;
                prev = nd;
                if (nd < kTol) {
                    ok = true;
                    break;
                }
            }
        }
        if (ok) {
            t = tn;
            p = x / x.norm();
            c = p.conjugate();
            if (++streak >= 3) {
                h = std::min(2.0 * h, kMaxStep);
                streak = 0;
            }
        } else {
            h *= 0.5;
            streak = 0;
            if (h < kMinStep) break;
        }
    }
    res.p = p;
    res.t = t;
    if (t >= 1.0) res.end = PathEnd::Finished;
    else if (t >= 1.0 - 1e-6) res.end = PathEnd::Stalled;
    else res.end = PathEnd::Failed;
    return res;
}

// Distance between projective points, phase-aligned.
double projective_distance(const CVec6& p, const CVec6& q) {
    const C ip = q.dot(p);  // conj(q) . p
    const C phase = std::abs(ip) > 0 ? ip / std::abs(ip) : C(1.0);
    return (p - phase * q).norm();
}

double residual_of(const std::array<Mat6, 5>& q, const CVec6& p) {
    const CVec6 u = p / p.norm();
    double r = 0.0;
    for (const auto& m : q) r = std::max(r, std::abs(bilinear(u, m.cast<C>() * u)));
    return r;
}

double residual_of(const std::array<Mat6, 5>& q, const Vec6& p) {
    const Vec6 u = p / p.norm();
    double r = 0.0;
    for (const auto& m : q) r = std::max(r, std::abs(u.dot(m * u)));
    return r;
}

// Newton at t = 1 with the unitary patch; returns the endpoint Jacobian's condition number.
double polish(const Homotopy& hom, CVec6& p, int iterations) {
    CVec6 hv;
    CMat6 hp;
    for (int it = 0; it < iterations; ++it) {
        p /= p.norm();
        const CVec6 c = p.conjugate();
        hom.eval(p, 1.0, c, hv, hp, nullptr);
        const CVec6 dx = -hp.partialPivLu().solve(hv);
        if (!dx.allFinite()) break;
        p += dx;
        if (dx.norm() < 1e-15) break;
    }
    p /= p.norm();
    hom.eval(p, 1.0, p.conjugate(), hv, hp, nullptr);
    Eigen::JacobiSVD<CMat6> svd(hp);
    const auto& s = svd.singularValues();
    return s[5] > 0 ? s[0] / s[5] : INFINITY;
}

// Real Newton in the chart where the largest coordinate is 1.
Vec6 real_polish(const std::array<Mat6, 5>& q, Vec6 x, int fixed) {
    for (int it = 0; it < 8; ++it) {
        Eigen::Matrix<double, 5, 1> f;
        Eigen::Matrix<double, 5, 5> jac;
        for (int i = 0; i < 5; ++i) {
            const Vec6 qx = q[i] * x;
            f[i] = x.dot(qx);
            for (int j = 0, col = 0; j < 6; ++j)
                if (j != fixed) jac(i, col++) = 2.0 * qx[j];
        }
        const Eigen::Matrix<double, 5, 1> dx = -jac.partialPivLu().solve(f);
        if (!dx.allFinite()) break;
        for (int j = 0, col = 0; j < 6; ++j)
            if (j != fixed) x[j] += dx[col++];
        if (dx.norm() < 1e-15 * x.norm()) break;
    }
    return x / x.norm();
}

std::array<Mat6, 5> normalized_equations(const std::array<PluckerQuadric, 4>& quadrics) {
    std::array<Mat6, 5> q;
    for (int i = 0; i < 4; ++i) {
        const double norm = quadrics[i].M.norm();
        if (!(norm > 0) || !quadrics[i].M.allFinite()) throw InvalidArgument("tangency quadric is zero or not finite");
        q[i] = quadrics[i].M / norm;
    }
    const Mat j = plucker_form();
    q[4] = j / j.norm();
    return q;
}

struct Attempt {
    SolutionSet set;
    bool clean = false;
};

Attempt run_attempt(const std::array<Mat6, 5>& q, RngStream& rng, const SolverOptions& opt) {
    Homotopy hom;
    for (int i = 0; i < 5; ++i) {
        hom.q[i] = q[i].cast<C>();
        hom.a[i] = random_cvec(rng);
        hom.b[i] = random_cvec(rng);
    }
    const double angle = 2.0 * M_PI * rng.uniform();
    hom.gamma = C(std::cos(angle), std::sin(angle));
    const CVec6 patch = random_cvec(rng);

    Attempt at;
    SolutionSet& out = at.set;
    out.stats.tracked = kPaths;
    std::vector<TangentSolution> regular;
    for (int path = 0; path < kPaths; ++path) {
        CMat6 lin;
        for (int i = 0; i < 5; ++i) lin.row(i) = ((path >> i) & 1 ? hom.b[i] : hom.a[i]).transpose();
        lin.row(5) = patch.transpose();
        CVec6 rhs = CVec6::Zero();
        rhs[5] = 1.0;
        const CVec6 start = lin.fullPivLu().solve(rhs);
        PathResult pr = track(hom, start, opt);
        std::ostringstream log;
        log << "path " << path << ": t=" << pr.t << " steps=" << pr.steps;
        if (pr.end == PathEnd::Failed) {
            ++out.stats.failed;
            log << " failed";
            out.path_log.push_back(log.str());
            continue;
        }
        ++out.stats.finite;
        TangentSolution s;
        s.p = pr.p;
        s.condition = polish(hom, s.p, pr.end == PathEnd::Finished ? 6 : 3);
        s.residual = residual_of(q, s.p);
        s.singular = pr.end == PathEnd::Stalled || !(s.condition < opt.singular_cond);
        Eigen::Index big;
        s.p.cwiseAbs().maxCoeff(&big);
        const CVec6 chart = s.p / s.p[big];
        s.imag_ratio = chart.imag().norm() / chart.real().norm();
        if (s.singular) {
            ++out.stats.singular;
            if (s.imag_ratio < opt.ambiguous_tol) ++out.near_real_singular;
            log << " singular endpoint (cond " << s.condition << ", imag ratio " << s.imag_ratio << ")";
            out.path_log.push_back(log.str());
            out.solutions.push_back(s);
            continue;
        }
        bool merged = false;
        for (auto& r : regular) {
            if (projective_distance(r.p, s.p) < opt.dedup_tol) {
                ++r.multiplicity;
                merged = true;
                break;
            }
        }
        if (merged) {
            ++out.stats.merged;
            log << " merged with an earlier endpoint";
            out.path_log.push_back(log.str());
            continue;
        }
        if (s.imag_ratio < opt.reality_tol) {
            s.real = true;
            s.real_p = real_polish(q, chart.real(), static_cast<int>(big));
            s.residual = std::max(s.residual, residual_of(q, s.real_p));
        } else if (s.imag_ratio < opt.ambiguous_tol) {
            ++out.ambiguous;
        }
        regular.push_back(s);
    }
    for (auto& r : regular) {
        out.max_residual = std::max(out.max_residual, r.residual);
        if (r.real) ++out.real_count;
        out.solutions.push_back(r);
    }
    out.degenerate = out.stats.singular + out.stats.merged > opt.degenerate_ratio * out.stats.tracked;
    at.clean = out.stats.failed == 0 && out.stats.merged == 0;
    return at;
}

}  // namespace

PluckerQuadric tangency_quadric_of(const Mat& a) {
    if (a.rows() != 4 || a.cols() != 4) throw InvalidArgument("tangency quadrics need a 4x4 matrix");
    const Mat sym = 0.5 * (a + a.transpose());
    Eigen::JacobiSVD<Mat> svd(sym);
    const auto& s = svd.singularValues();
    if (!(s[3] > 1e-12 * s[0])) throw InvalidArgument("quadric matrix is singular");
    PluckerQuadric q;
    q.M = compound_matrix(sym, 2);
    return q;
}

SolutionSet solve_tangency_system(const std::array<PluckerQuadric, 4>& quadrics, RngStream& rng,
                                  const SolverOptions& opt) {
    const auto q = normalized_equations(quadrics);
    const int attempts = opt.retry ? 2 : 1;
    Attempt at;
    for (int a = 1; a <= attempts; ++a) {
        at = run_attempt(q, rng, opt);
        at.set.stats.attempts = a;
        if (at.clean) break;
    }
    if (at.set.stats.failed > 0) {
        std::ostringstream os;
        os << at.set.stats.failed << " of " << kPaths << " homotopy paths failed";
        for (const auto& line : at.set.path_log) os << "\n  " << line;
        throw NumericalFailure(os.str());
    }
    return at.set;
}

constexpr int kSphereExcess = 20;

TangentCount count_real_tangent_lines(const std::array<ConvexBody, 4>& bodies,
                                      const std::array<Rotation, 4>& rotations, RngStream& rng,
                                      const SolverOptions& opt) {
    std::array<PluckerQuadric, 4> q;
    bool spheres = true;
    for (int i = 0; i < 4; ++i) {
        const ConvexBody& b = bodies[i];
        if (!b.is_quadric() || b.n() != 3) throw InvalidArgument("tangent line counting needs quadric bodies in RP^3");
        if (b.kind() != BodyKind::MetricSphere && b.kind() != BodyKind::AffineSphere) spheres = false;
        q[i] = tangency_quadric_of(b.rotated(rotations[i]).quadric_matrix());
    }
    const SolutionSet set = solve_tangency_system(q, rng, opt);
    TangentCount tc;
    tc.count = set.real_count;
    tc.stats = set.stats;
    if (set.ambiguous > 0) {
        tc.degenerate = true;
        tc.reason = "solution in the borderline reality band";
    } else if (set.near_real_singular > 0) {
        tc.degenerate = true;
        tc.reason = "singular endpoint close to a real line";
    } else if (set.stats.merged > 0) {
        tc.degenerate = true;
        tc.reason = "coinciding regular endpoints";
    } else if (spheres ? set.stats.singular + set.stats.merged > kSphereExcess : set.degenerate) {
        // Spheres always share an excess non-real component with the absolute quadric,
        // absorbing kSphereExcess endpoints; anything beyond that is a genuine degeneracy.
        tc.degenerate = true;
        tc.reason = "non-isolated solution set";
    }
    return tc;
}

MCEstimate tau_empirical(const std::array<ConvexBody, 4>& bodies, std::uint64_t trials, std::uint64_t seed,
                         unsigned workers, const SolverOptions& opt) {
    if (trials < 1) throw InvalidArgument("trials must be at least 1");
    struct Trial {
        int count = 0;
        bool degenerate = false;
    };
    const auto results = parallel_map<Trial>(trials, workers, [&](std::size_t i) {
        RngStream rng(seed, i);
        std::array<Rotation, 4> g = {haar_rotation(3, rng), haar_rotation(3, rng), haar_rotation(3, rng),
                                     haar_rotation(3, rng)};
        try {
            const TangentCount tc = count_real_tangent_lines(bodies, g, rng, opt);
            return Trial{tc.count, tc.degenerate};
        } catch (const NumericalFailure&) {
            return Trial{0, true};
        }
    });
    std::vector<double> counts;
    std::uint64_t degenerate = 0;
    for (const auto& r : results) {
        if (r.degenerate) ++degenerate;
        else counts.push_back(r.count);
    }
    if (static_cast<double>(degenerate) > 0.05 * static_cast<double>(trials))
        throw NumericalFailure(std::to_string(degenerate) + " of " + std::to_string(trials) +
                               " tangent-count draws were degenerate (limit 5%)");
    MCEstimate est = summarize(counts, seed);
    est.degenerate = degenerate;
    return est;
}

}  // namespace tflats
