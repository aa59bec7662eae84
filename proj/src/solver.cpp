#include "hexcurv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "hexcurv/curvature.hpp"

namespace hexcurv {

const char* const kUnprovenNote =
    "existence is not established for this structure; NotConverged is not evidence either way";

namespace {

constexpr int kDenseLimit = 512;

double inf_norm(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// K(u), or nothing when u is outside the admissible space.
bool try_curvature(const StructureSpec& spec, const Triangulation& tri, const std::vector<double>& u,
                   std::vector<double>& K)
{
    if (!admissible(spec, tri, u).ok)
        return false;
    try {
        K = curvature_map(spec, tri, f_from_u(spec, u));
    } catch (const Error&) {
        return false;
    }
    for (double k : K) {
        if (!std::isfinite(k))
            return false;
    }
    return true;
}

double max_abs(const Eigen::SparseMatrix<double>& m)
{
    double out = 0.0;
    for (int k = 0; k < m.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
            out = std::max(out, std::abs(it.value()));
    }
    return out;
}

// Shifted A3 weights break the symmetry in u, so fall back to LU when needed.
Eigen::VectorXd newton_step(const GlobalJacobian& J, const Eigen::VectorXd& rhs)
{
    const Eigen::SparseMatrix<double> asym = J.sparse - Eigen::SparseMatrix<double>(J.sparse.transpose());
    const bool symmetric = max_abs(asym) <= 1e-9 * std::max(1.0, max_abs(J.sparse));
    if (J.sparse.rows() <= kDenseLimit) {
        const Eigen::MatrixXd d = J.dense();
        if (!symmetric)
            return Eigen::PartialPivLU<Eigen::MatrixXd>(d).solve(rhs);
        return Eigen::LDLT<Eigen::MatrixXd>(0.5 * (d + d.transpose())).solve(rhs);
    }
    if (!symmetric) {
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(J.sparse);
        if (lu.info() != Eigen::Success)
            fail(Err::NotConverged, "sparse factorization failed");
        return lu.solve(rhs);
    }
    Eigen::SparseMatrix<double> s = 0.5 * (J.sparse + Eigen::SparseMatrix<double>(J.sparse.transpose()));
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(s);
    if (ldlt.info() != Eigen::Success)
        fail(Err::NotConverged, "sparse factorization failed");
    return ldlt.solve(rhs);
}

double chart_center(Chart c)
{
    const double lo = chart_lo(c), hi = chart_hi(c);
    if (std::isfinite(lo) && std::isfinite(hi))
        return 0.5 * (lo + hi);
    if (std::isfinite(lo))
        return lo + 1.0;
    if (std::isfinite(hi))
        return hi - 1.0;
    return 0.0;
}

double clamp_chart(Chart c, double u)
{
    const double lo = chart_lo(c), hi = chart_hi(c);
    const double width = std::isfinite(lo) && std::isfinite(hi) ? hi - lo : 1.0;
    const double m = 0.05 * std::min(1.0, width);
    if (std::isfinite(hi) && u >= hi - m * 1e-3)
        u = hi - m;
    if (std::isfinite(lo) && u <= lo + m * 1e-3)
        u = lo + m;
    return u;
}

}  // namespace

std::vector<double> default_initial(const StructureSpec& spec, const Triangulation& tri)
{
    require_weights(spec, tri);
    const int n = tri.n_boundary;
    const auto ch = charts(spec);
    const auto cons = all_constraints(spec, tri);
    std::vector<double> sum(n, 0.0);
    std::vector<int> cnt(n, 0);
    for (const auto& c : cons) {
        const double lo = std::max(c.lo, c.wa * chart_lo(ch[c.a]) + c.wb * chart_lo(ch[c.b]));
        const double hi = std::min(c.hi, c.wa * chart_hi(ch[c.a]) + c.wb * chart_hi(ch[c.b]));
        double center;
        if (std::isfinite(lo) && std::isfinite(hi))
            center = 0.5 * (lo + hi);
        else if (std::isfinite(lo))
            center = lo + 1.0;
        else
            center = hi - 1.0;
        const double ca = chart_center(ch[c.a]), cb = chart_center(ch[c.b]);
        const double shift = 0.5 * (center - c.wa * ca - c.wb * cb);
        sum[c.a] += ca + shift / c.wa;
        ++cnt[c.a];
        sum[c.b] += cb + shift / c.wb;
        ++cnt[c.b];
    }
    std::vector<double> u(n);
    for (int v = 0; v < n; ++v)
        u[v] = clamp_chart(ch[v], cnt[v] ? sum[v] / cnt[v] : chart_center(ch[v]));

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (admissible(spec, tri, u).ok)
            return u;
        for (const auto& c : cons) {
            const double lo = std::max(c.lo, c.wa * chart_lo(ch[c.a]) + c.wb * chart_lo(ch[c.b]));
            const double hi = std::min(c.hi, c.wa * chart_hi(ch[c.a]) + c.wb * chart_hi(ch[c.b]));
            const double width = std::isfinite(lo) && std::isfinite(hi) ? hi - lo : 4.0;
            if (!(width > 0.0))
                continue;
            const double margin = std::min(0.5, 0.25 * width);
            const double s = c.value(u);
            double delta = 0.0;
            if (!(s > c.lo))
                delta = c.lo + margin - s;
            else if (!(s < c.hi))
                delta = c.hi - margin - s;
            if (delta != 0.0) {
                u[c.a] = clamp_chart(ch[c.a], u[c.a] + 0.5 * delta / c.wa);
                u[c.b] = clamp_chart(ch[c.b], u[c.b] + 0.5 * delta / c.wb);
            }
        }
    }
    if (admissible(spec, tri, u).ok)
        return u;
    fail(Err::NoFeasibleStart, "no admissible starting point found after 100 projection sweeps");
}

SolveResult solve_prescribed_curvature(const StructureSpec& spec, const Triangulation& tri,
                                       const std::vector<double>& K_target, const SolveOptions& opts)
{
    const int n = tri.n_boundary;
    if (static_cast<int>(K_target.size()) != n)
        fail(Err::PreconditionViolated, fmt::format("target has {} entries, expected {}", K_target.size(), n));
    for (int i = 0; i < n; ++i) {
        if (!(K_target[i] > 0.0) || !std::isfinite(K_target[i]))
            fail(Err::PreconditionViolated, fmt::format("target curvature K{} = {:.17g} must be positive", i,
                                                        K_target[i]));
    }
    if (!(opts.tol_K > 0.0) || !(opts.damping > 0.0 && opts.damping < 1.0))
        fail(Err::PreconditionViolated, "tolerance must be positive and damping in (0,1)");
    require_weights(spec, tri);

    SolveResult res;
    res.report.existence_unproven = !existence_proven(spec, tri);
    if (opts.initial == Initial::UserSupplied) {
        if (static_cast<int>(opts.u0.size()) != n)
            fail(Err::PreconditionViolated, "initial point has the wrong size");
        res.u = opts.u0;
    } else {
        res.u = default_initial(spec, tri);
    }
    std::vector<double> K;
    if (!try_curvature(spec, tri, res.u, K))
        fail(Err::NotAdmissible, "initial point is not admissible");
    double r = inf_norm(K, K_target);
    res.report.trajectory.push_back(r);

    std::string failure;
    while (true) {
        if (r <= opts.tol_K) {
            res.report.converged = true;
            break;
        }
        if (res.report.iterations >= opts.max_iter) {
            failure = fmt::format("no convergence within {} iterations", opts.max_iter);
            break;
        }
        const GlobalJacobian J = assemble_jacobian(spec, tri, f_from_u(spec, res.u));
        res.report.length_chain_faces = std::max(res.report.length_chain_faces, J.stats.length_chain);
        Eigen::VectorXd rhs(n);
        for (int i = 0; i < n; ++i)
            rhs(i) = K_target[i] - K[i];
        const Eigen::VectorXd step = newton_step(J, rhs);
        if (!step.allFinite()) {
            failure = "singular Jacobian";
            break;
        }
        double lambda = 1.0;
        bool accepted = false;
        std::vector<double> trial(n), Kt;
        for (int h = 0; h <= opts.max_halvings; ++h, lambda *= opts.damping) {
            for (int i = 0; i < n; ++i)
                trial[i] = res.u[i] + lambda * step(i);
            if (!try_curvature(spec, tri, trial, Kt)) {
                ++res.report.boundary_hits;
                continue;
            }
            const double rt = inf_norm(Kt, K_target);
            if (rt < r) {
                res.u = trial;
                K = Kt;
                r = rt;
                accepted = true;
                break;
            }
        }
        ++res.report.iterations;
        if (!accepted) {
            failure = fmt::format("step rejected after {} halvings", opts.max_halvings);
            break;
        }
        res.report.trajectory.push_back(r);
    }
    res.report.residual = r;
    res.f = f_from_u(spec, res.u);
    if (!res.report.converged) {
        if (res.report.existence_unproven)
            res.report.diagnostic = std::string(err_name(Err::InfeasibleTarget)) + ": " + kUnprovenNote;
        throw NotConvergedError(fmt::format("{} (residual {:.3g})", failure, r), res);
    }
    if (res.report.existence_unproven)
        res.report.diagnostic = kUnprovenNote;
    return res;
}

double energy_face(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& u_from,
                   const std::vector<double>& u_to)
{
    if (!face_admissible(spec, tri, face, u_from) || !face_admissible(spec, tri, face, u_to))
        fail(Err::PathLeavesDomain, fmt::format("segment endpoint outside the admissible space of face {}", face));
    const Face& fc = tri.faces[face];
    std::array<double, 3> du{};
    bool zero = true;
    for (int r = 0; r < 3; ++r) {
        du[r] = u_to[fc.v[r]] - u_from[fc.v[r]];
        zero = zero && du[r] == 0.0;
    }
    if (zero)
        return 0.0;
    const auto ch = charts(spec);
    auto integrand = [&](double t) {
        std::vector<double> f(u_from.size(), 0.0);
        for (int r = 0; r < 3; ++r) {
            const int v = fc.v[r];
            const double u = u_from[v] + t * (u_to[v] - u_from[v]);
            f[v] = f_of_u(ch[v], u);
        }
        HexAngles th;
        try {
            th = face_angles(spec, tri, face, f);
        } catch (const Error& e) {
            fail(Err::PathLeavesDomain, fmt::format("segment leaves the admissible space: {}", e.detail()));
        }
        return th[0] * du[0] + th[1] * du[1] + th[2] * du[2];
    };
    double err = 0.0;
    const double val =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 20, 1e-13, &err);
    if (!std::isfinite(val))
        fail(Err::PathLeavesDomain, "energy integral diverged");
    return val;
}

}  // namespace hexcurv
