#include "hexcurv/hexagon.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hexcurv/error.hpp"
#include "hexcurv/tolerances.hpp"

namespace hexcurv {

namespace {

constexpr const char* kTable[13] = {
    "+-+++-", "+++++-", "-++++-", "-+++++", "-+++-+", "++++-+", "++-+-+",
    "++-+++", "++--++", "+++-++", "+-+-++", "+-++++", "++++++",
};
constexpr const char* kUpper[6] = {"DI", "DII", "DIII", "DIV", "DV", "DVI"};
constexpr const char* kLower[6] = {"Di", "Dii", "Diii", "Div", "Dv", "Dvi"};

int third(int a, int b) { return 3 - a - b; }

MinkowskiVec unit_space(const MinkowskiVec& x)
{
    return x / std::sqrt(std::abs(minkowski_dot(x, x)));
}

int sgn(double x)
{
    if (std::abs(x) < tol::sign)
        return 0;
    return x > 0 ? 1 : -1;
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

double partial(const Splits& s, int a, int b)
{
    if (a == b || a < 0 || b < 0 || a > 2 || b > 2)
        fail(Err::PreconditionViolated, "partial length needs two distinct corners");
    if ((b - a + 3) % 3 == 1)
        return s[a].d_ij;
    return s[b].d_ji;
}

double HexagonGeometry::dual_partial(int a, int b) const
{
    if (!dual)
        fail(Err::DualCenterOutside, dual_error.empty() ? "dual splits unavailable" : dual_error);
    const int r = third(a, b);
    const auto& arc = (*dual)[r];
    return a == (r + 1) % 3 ? arc.theta_st : arc.theta_ts;
}

HexAngles angles_from_lengths(const HexLengths& l)
{
    for (int r = 0; r < 3; ++r) {
        if (!std::isfinite(l.edge(r)) || l.edge(r) <= tol::len)
            fail(Err::DegenerateHexagon, fmt::format("edge length {:.17g} is not positive", l.edge(r)));
    }
    auto law = [](double opp, double a, double b) {
        return std::acosh((std::cosh(opp) + std::cosh(a) * std::cosh(b)) / (std::sinh(a) * std::sinh(b)));
    };
    HexAngles t;
    t.theta_i = law(l.l_jk, l.l_ij, l.l_ki);
    t.theta_j = law(l.l_ki, l.l_ij, l.l_jk);
    t.theta_k = law(l.l_ij, l.l_jk, l.l_ki);
    if (!std::isfinite(t.theta_i) || !std::isfinite(t.theta_j) || !std::isfinite(t.theta_k))
        fail(Err::DegenerateHexagon, "cosine law overflow");
    return t;
}

Eigen::Matrix3d dtheta_dl(const HexLengths& l)
{
    const HexAngles t = angles_from_lengths(l);
    const double L[3] = {l.l_jk, l.l_ki, l.l_ij};
    const double A = std::sinh(L[0]) * std::sinh(L[1]) * std::sinh(t.theta_k);
    const double c0 = std::cosh(t.theta_i), c1 = std::cosh(t.theta_j), c2 = std::cosh(t.theta_k);
    Eigen::Matrix3d q1;
    q1 << -1, c2, c1,
          c2, -1, c0,
          c1, c0, -1;
    Eigen::Matrix3d byOpp;
    for (int r = 0; r < 3; ++r)
        byOpp.row(r) = -std::sinh(L[r]) / A * q1.row(r);
    // columns of byOpp follow opposite lengths (jk, ki, ij)
    Eigen::Matrix3d out;
    out.col(0) = byOpp.col(2);
    out.col(1) = byOpp.col(0);
    out.col(2) = byOpp.col(1);
    return out;
}

HexLengths lengths_from_angles(const HexAngles& a)
{
    for (int r = 0; r < 3; ++r) {
        if (!std::isfinite(a[r]) || a[r] <= 0.0)
            fail(Err::NoSolution, fmt::format("angle {:.17g} is not positive", a[r]));
    }
    Eigen::Vector3d target(a.theta_i, a.theta_j, a.theta_k);
    Eigen::Vector3d x = target;  // edges ij, jk, ki; start from the opposite angle
    x << a.theta_k, a.theta_i, a.theta_j;
    auto residual = [&](const Eigen::Vector3d& y, Eigen::Vector3d& out) {
        try {
            const HexAngles t = angles_from_lengths({y(0), y(1), y(2)});
            out << t.theta_i - target(0), t.theta_j - target(1), t.theta_k - target(2);
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    Eigen::Vector3d F;
    if (!residual(x, F))
        fail(Err::NoSolution, "bad starting point");
    const double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
    for (int it = 0; it < 100; ++it) {
        if (F.cwiseAbs().maxCoeff() <= 1e-15 * scale)
            return {x(0), x(1), x(2)};
        const Eigen::Matrix3d Jm = dtheta_dl({x(0), x(1), x(2)});
        const Eigen::Vector3d step = Jm.partialPivLu().solve(-F);
        double lambda = 1.0;
        bool accepted = false;
        for (int h = 0; h < 60; ++h, lambda *= 0.5) {
            const Eigen::Vector3d y = x + lambda * step;
            Eigen::Vector3d Fy;
            if (y.minCoeff() > 0.0 && residual(y, Fy) && Fy.cwiseAbs().maxCoeff() < F.cwiseAbs().maxCoeff()) {
                x = y;
                F = Fy;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (F.cwiseAbs().maxCoeff() <= 1e-12 * scale)
                return {x(0), x(1), x(2)};
            break;
        }
    }
    if (F.cwiseAbs().maxCoeff() <= 1e-12 * scale)
        return {x(0), x(1), x(2)};
    fail(Err::NoSolution, "Newton inversion of the cosine law did not converge");
}

std::array<MinkowskiVec, 3> embed(const HexLengths& l)
{
    for (int r = 0; r < 3; ++r) {
        if (!(l.edge(r) > 0.0))
            fail(Err::PreconditionViolated, "lengths must be positive");
    }
    const double chij = std::cosh(l.l_ij), shij = std::sinh(l.l_ij);
    const double chki = std::cosh(l.l_ki), chjk = std::cosh(l.l_jk);
    const MinkowskiVec vi{1.0, 0.0, 0.0};
    const MinkowskiVec vj{-chij, 0.0, shij};
    const double c = (chij * chki + chjk) / shij;
    const double disc = 1.0 - chki * chki + c * c;
    if (!(disc > 0.0) || !std::isfinite(disc))
        fail(Err::GramSignature, "Gram matrix does not have signature (2,1)");
    const MinkowskiVec vk{-chki, -std::sqrt(disc), c};
    return {vi, vj, vk};
}

std::array<MinkowskiVec, 3> polar(const std::array<MinkowskiVec, 3>& v)
{
    return {unit_space(minkowski_cross(v[2], v[1])),
            unit_space(minkowski_cross(v[0], v[2])),
            unit_space(minkowski_cross(v[1], v[0]))};
}

namespace {

// log|1 + rho e^t| without cancellation.
double log_abs_1p_exp(double rho, double t)
{
    if (rho > 0.0) {
        const double z = std::log(rho) + t;
        return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    }
    const double w = std::log(-rho) + t;
    return w < 0.0 ? std::log1p(-std::exp(w)) : w + std::log(-std::expm1(-w));
}

}  // namespace

EdgeSplit split_edge(double l, double rho)
{
    if (!(l > 0.0) || rho == 0.0 || !std::isfinite(rho))
        fail(Err::PreconditionViolated, "split_edge needs l > 0 and a finite non-zero ratio");
    // tanh d = rho sinh l / (1 + rho cosh l), so e^{2d} = (1 + rho e^l) / (1 + rho e^-l)
    const double a = 1.0 + rho * std::exp(l), b = 1.0 + rho * std::exp(-l);
    if (!(a * b > 0.0) || !std::isfinite(a))
        fail(Err::InconsistentRatio, fmt::format("no real split for l={:.17g}, rho={:.17g}", l, rho));
    // each part from its own closed form, so the short one keeps full relative precision
    const double d = 0.5 * (log_abs_1p_exp(rho, l) - log_abs_1p_exp(rho, -l));
    const double e = 0.5 * (log_abs_1p_exp(1.0 / rho, l) - log_abs_1p_exp(1.0 / rho, -l));
    if (!std::isfinite(d) || !std::isfinite(e))
        fail(Err::InconsistentRatio, fmt::format("no real split for l={:.17g}, rho={:.17g}", l, rho));
    return {d, e};
}

double compat_residual(const Splits& s)
{
    return std::sinh(s[0].d_ij) * std::sinh(s[1].d_ij) * std::sinh(s[2].d_ij)
         - std::sinh(s[0].d_ji) * std::sinh(s[1].d_ji) * std::sinh(s[2].d_ji);
}

MinkowskiVec edge_center(const MinkowskiVec& va, const MinkowskiVec& vb, const EdgeSplit& split)
{
    const double g11 = minkowski_dot(va, va), g12 = minkowski_dot(va, vb), g22 = minkowski_dot(vb, vb);
    const double r1 = -std::sinh(split.d_ij), r2 = -std::sinh(split.d_ji);
    const double det = g11 * g22 - g12 * g12;
    if (std::abs(det) <= tol::rank)
        fail(Err::NoRealCenter, "edge span is degenerate");
    const double x = (r1 * g22 - r2 * g12) / det;
    const double y = (g11 * r2 - g12 * r1) / det;
    const MinkowskiVec c = va * x + vb * y;
    const double n = minkowski_dot(c, c);
    const double en = euclid_norm(c);
    if (!(n < 0.0) || c.x3 <= 0.0 || std::abs(n + 1.0) > 1e-7 * std::max(1.0, en * en))
        fail(Err::NoRealCenter, fmt::format("edge center {} is not on the upper sheet", to_string(c)));
    return c / std::sqrt(-n);
}

FaceCenter face_center(const std::array<MinkowskiVec, 3>& vp, const std::array<MinkowskiVec, 3>& centers,
                       const Splits& splits)
{
    double p1 = 1.0, p2 = 1.0;
    for (const auto& s : splits) {
        p1 *= std::sinh(s.d_ij);
        p2 *= std::sinh(s.d_ji);
    }
    if (std::abs(p1 - p2) > tol::compat * std::max({1.0, std::abs(p1), std::abs(p2)}))
        fail(Err::IncompatibleSplits, fmt::format("compatibility residual {:.3g}", p1 - p2));
    const MinkowskiVec raw = plane_intersection(vp[2], centers[0], vp[1], centers[2]);
    MinkowskiVec c = raw / euclid_norm(raw);
    const MinkowskiVec n3 = minkowski_cross(vp[0], centers[1]);
    if (std::abs(minkowski_dot(c, n3)) > 1e-7 * euclid_norm(n3))
        fail(Err::IncompatibleSplits, "the three perpendicular planes do not share a line");
    const double n = minkowski_dot(c, c);
    FaceCenter out{c, causal_class(c), n};
    if (c.x3 < 0.0)
        c = -c;
    switch (out.cls) {
    case CausalClass::TimeLike: out.c = c / std::sqrt(-n); break;
    case CausalClass::SpaceLike: out.c = c / std::sqrt(n); break;
    case CausalClass::LightLike: out.c = c; break;
    }
    return out;
}

void signed_distances(HexagonGeometry& g)
{
    if (g.center_class == CausalClass::LightLike) {
        g.has_distances = false;
        return;
    }
    const MinkowskiVec& c = g.face_center;
    for (int r = 0; r < 3; ++r) {
        const double a = minkowski_dot(g.v[r], c);
        const double b = minkowski_dot(g.vp[r], c);
        if (g.center_class == CausalClass::TimeLike) {
            g.q[r] = std::asinh(-a);
            g.h[r] = std::asinh(-b);
        } else {
            if (std::abs(a) < 1.0 - 1e-9 || std::abs(b) < 1.0 - 1e-9)
                fail(Err::UnclassifiableSigns, "space-like center is not separated from a side geodesic");
            g.q[r] = (a > 0 ? -1.0 : 1.0) * std::acosh(std::max(1.0, std::abs(a)));
            g.h[r] = (b > 0 ? -1.0 : 1.0) * std::acosh(std::max(1.0, std::abs(b)));
        }
    }
    g.has_distances = true;
}

std::string classify_domain(const HexagonGeometry& g, bool* ambiguous)
{
    if (ambiguous)
        *ambiguous = false;
    if (g.center_class == CausalClass::LightLike)
        return "LightCone";
    if (!g.has_distances)
        fail(Err::UnclassifiableSigns, "signed distances missing");
    const double vals[6] = {g.h[0], g.h[1], g.h[2], g.q[0], g.q[1], g.q[2]};
    int found = -1;
    int matches = 0;
    bool zero = false;
    for (int col = 0; col < 13; ++col) {
        if (g.center_class == CausalClass::SpaceLike && col == 12)
            continue;
        bool ok = true;
        for (int s = 0; s < 6 && ok; ++s) {
            const int sg = sgn(vals[s]);
            if (sg == 0) {
                zero = true;
                continue;
            }
            ok = (sg > 0) == (kTable[col][s] == '+');
        }
        if (ok) {
            if (found < 0)
                found = col;
            ++matches;
        }
    }
    if (found < 0) {
        fail(Err::UnclassifiableSigns,
             fmt::format("signs (h: {:.3g} {:.3g} {:.3g}, q: {:.3g} {:.3g} {:.3g}) match no row", vals[0], vals[1],
                         vals[2], vals[3], vals[4], vals[5]));
    }
    if (ambiguous)
        *ambiguous = zero || matches > 1;
    if (g.center_class == CausalClass::TimeLike)
        return fmt::format("D{}", found + 1);
    // even-numbered columns carry one negative sign, odd-numbered ones two
    const int d = found + 1;
    return d % 2 == 0 ? kUpper[d / 2 - 1] : kLower[(d - 1) / 2];
}

std::array<BoundarySplit, 3> dual_splits(const HexagonGeometry& g)
{
    std::array<BoundarySplit, 3> out{};
    for (int r = 0; r < 3; ++r) {
        const int s = (r + 1) % 3, t = (r + 2) % 3;
        MinkowskiVec cp = g.face_center - minkowski_dot(g.face_center, g.v[r]) * g.v[r];
        const double en = euclid_norm(cp);
        if (en == 0.0)
            fail(Err::DualCenterOutside, "dual edge center vanishes");
        cp = cp / en;
        const double n = minkowski_dot(cp, cp);
        if (!(n < -tol::causal))
            fail(Err::DualCenterOutside, fmt::format("dual edge center at corner {} is not time-like", r));
        cp = cp / std::sqrt(-n);
        if (cp.x3 < 0.0)
            cp = -cp;
        out[r].theta_st = std::asinh(-minkowski_dot(g.vp[s], cp));
        out[r].theta_ts = std::asinh(-minkowski_dot(g.vp[t], cp));
    }
    return out;
}

HexagonGeometry build_hexagon(const HexLengths& lengths, const Splits& splits)
{
    HexagonGeometry g;
    g.lengths = lengths;
    g.angles = angles_from_lengths(lengths);
    for (int r = 0; r < 3; ++r) {
        const double l = lengths.edge(r);
        if (std::abs(splits[r].d_ij + splits[r].d_ji - l) > 1e-9 * std::max(1.0, l))
            fail(Err::PreconditionViolated, fmt::format("split of edge {} does not sum to its length", r));
    }
    g.splits = splits;
    g.v = embed(lengths);
    g.vp = polar(g.v);
    for (int r = 0; r < 3; ++r)
        g.edge_centers[r] = edge_center(g.v[r], g.v[(r + 1) % 3], splits[r]);
    const FaceCenter fc = face_center(g.vp, g.edge_centers, splits);
    g.face_center = fc.c;
    g.center_class = fc.cls;
    g.center_norm = fc.norm2;
    signed_distances(g);
    g.domain = classify_domain(g, &g.sign_ambiguous);
    try {
        g.dual = dual_splits(g);
    } catch (const Error& e) {
        g.dual_error = e.what();
    }
    return g;
}

HexagonGeometry build_hexagon_from_ratios(const HexLengths& lengths, const std::array<double, 3>& rho)
{
    Splits s;
    for (int r = 0; r < 3; ++r)
        s[r] = split_edge(lengths.edge(r), rho[r]);
    return build_hexagon(lengths, s);
}

IdentityCheck appendix_identities(const HexagonGeometry& g)
{
    IdentityCheck out;
    if (g.center_class == CausalClass::LightLike || !g.has_distances) {
        out.lemma = "light-like";
        return out;
    }
    auto record = [&](double lhs, double rhs) {
        out.max_residual = std::max(out.max_residual, rel(lhs, rhs));
        ++out.checked;
    };
    const bool haveDual = g.dual.has_value();

    for (int r = 0; r < 3; ++r) {
        for (int s = 0; s < 3; ++s) {
            if (s == r)
                continue;
            const int qs = sgn(g.q[r]), ds = sgn(g.partial(r, s));
            if (qs != 0 && ds != 0 && qs != ds)
                out.signs_coherent = false;
            if (haveDual) {
                const int hs = sgn(g.h[r]), ts = sgn(g.dual_partial(r, s));
                if (hs != 0 && ts != 0 && hs != ts)
                    out.signs_coherent = false;
            }
        }
    }

    if (haveDual) {
        double p1 = 1.0, p2 = 1.0;
        for (int r = 0; r < 3; ++r) {
            const int s = (r + 1) % 3;
            p1 *= std::sinh(g.dual_partial(r, s));
            p2 *= std::sinh(g.dual_partial(s, r));
            const auto& arc = (*g.dual)[r];
            out.dual_sum = std::max(out.dual_sum, std::abs(arc.theta_st + arc.theta_ts - g.angles[r]));
        }
        out.dual_compat = std::abs(p1 - p2);
    }

    if (g.center_class == CausalClass::TimeLike) {
        out.lemma = "time-like";
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                if (a == b)
                    continue;
                const int c = third(a, b);
                record(std::sinh(g.q[a]), std::cosh(g.h[b]) * std::sinh(g.partial(a, c)));
                if (haveDual)
                    record(std::sinh(g.h[a]), std::cosh(g.q[b]) * std::sinh(g.dual_partial(a, c)));
            }
        }
        return out;
    }

    int negQ = -1, negH = -1, count = 0;
    for (int r = 0; r < 3; ++r) {
        if (g.q[r] < 0) {
            negQ = r;
            ++count;
        }
        if (g.h[r] < 0) {
            negH = r;
            ++count;
        }
    }
    if (count == 1)
        out.lemma = "space-like-1";
    else if (count == 2 && negQ >= 0 && negH >= 0 && negQ != negH)
        out.lemma = "space-like-2";
    else {
        out.lemma = "uncovered";
        out.max_residual = INFINITY;
        return out;
    }
    auto sign_of = [](double x) { return x < 0 ? -1.0 : 1.0; };
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            if (a == b)
                continue;
            const int c = third(a, b);
            const double s1 = sign_of(g.h[b]) * sign_of(g.q[a]);
            record(std::cosh(g.q[a]), s1 * std::sinh(g.h[b]) * std::sinh(g.partial(a, c)));
            if (haveDual) {
                const double s2 = sign_of(g.q[b]) * sign_of(g.h[a]);
                record(std::cosh(g.h[a]), s2 * std::sinh(g.q[b]) * std::sinh(g.dual_partial(a, c)));
            }
        }
    }
    return out;
}

}  // namespace hexcurv
