#include "hexcurv/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace hexcurv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = std::numbers::pi / 2.0;

const char* kRoman[19] = {"", "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX",
                          "X", "XI", "XII", "XIII", "XIV", "XV", "XVI", "XVII", "XVIII"};

void domain_error(Chart c, const char* what, double x)
{
    fail(Err::DomainViolation, fmt::format("{} {:.17g} outside the {} chart", what, x, chart_name(c)));
}

}  // namespace

const char* chart_name(Chart c)
{
    switch (c) {
    case Chart::Identity: return "identity";
    case Chart::Negated: return "negated";
    case Chart::ExpNeg: return "exp-neg";
    case Chart::ExpPos: return "exp-pos";
    case Chart::CoshNeg: return "cosh-neg";
    case Chart::CoshPos: return "cosh-pos";
    case Chart::SinhNeg: return "sinh-neg";
    case Chart::SinhPos: return "sinh-pos";
    case Chart::SinNeg: return "sin-neg";
    case Chart::CosNeg: return "cos-neg";
    }
    return "?";
}

Chart chart_for(Family fam, int alpha, bool special)
{
    switch (base_type(fam)) {
    case 1:
        if (alpha == 0)
            return special ? Chart::Negated : Chart::Identity;
        if (alpha == -1)
            return special ? Chart::CoshPos : Chart::CoshNeg;
        return special ? Chart::SinhPos : Chart::SinhNeg;
    case 2:
        return special ? Chart::CosNeg : Chart::SinNeg;
    default:
        return special ? Chart::ExpPos : Chart::ExpNeg;
    }
}

double chart_lo(Chart c)
{
    switch (c) {
    case Chart::Identity:
    case Chart::Negated:
    case Chart::ExpNeg:
    case Chart::CoshNeg:
    case Chart::SinhNeg: return -kInf;
    case Chart::ExpPos:
    case Chart::CoshPos:
    case Chart::SinhPos: return 0.0;
    case Chart::SinNeg:
    case Chart::CosNeg: return -kHalfPi;
    }
    return -kInf;
}

double chart_hi(Chart c)
{
    switch (c) {
    case Chart::Identity:
    case Chart::Negated:
    case Chart::ExpPos:
    case Chart::CoshPos:
    case Chart::SinhPos: return kInf;
    default: return 0.0;
    }
}

bool in_chart(Chart c, double u)
{
    return std::isfinite(u) && u > chart_lo(c) && u < chart_hi(c);
}

double u_of_f(Chart c, double f)
{
    if (!std::isfinite(f))
        domain_error(c, "f", f);
    switch (c) {
    case Chart::Identity: return f;
    case Chart::Negated: return -f;
    case Chart::ExpNeg: return -std::exp(-f);
    case Chart::ExpPos: return std::exp(-f);
    case Chart::CoshNeg:
    case Chart::CoshPos: {
        if (!(f < 0.0))
            domain_error(c, "f", f);
        const double a = std::log1p(std::expm1(-f) + std::sqrt(std::expm1(-2.0 * f)));
        return c == Chart::CoshNeg ? -a : a;
    }
    case Chart::SinhNeg: return -std::asinh(std::exp(-f));
    case Chart::SinhPos: return std::asinh(std::exp(-f));
    case Chart::SinNeg:
        if (!(f > 0.0))
            domain_error(c, "f", f);
        return -std::asin(std::exp(-f));
    case Chart::CosNeg:
        if (!(f > 0.0))
            domain_error(c, "f", f);
        return -std::acos(std::exp(-f));
    }
    return f;
}

double f_of_u(Chart c, double u)
{
    if (!in_chart(c, u))
        domain_error(c, "u", u);
    switch (c) {
    case Chart::Identity: return u;
    case Chart::Negated: return -u;
    case Chart::ExpNeg: return -std::log(-u);
    case Chart::ExpPos: return -std::log(u);
    case Chart::CoshNeg:
    case Chart::CoshPos: return -std::log(std::cosh(u));
    case Chart::SinhNeg: return -std::log(-std::sinh(u));
    case Chart::SinhPos: return -std::log(std::sinh(u));
    case Chart::SinNeg: return -std::log(-std::sin(u));
    case Chart::CosNeg: return -std::log(std::cos(u));
    }
    return u;
}

double dfdu_chart(Chart c, double f)
{
    switch (c) {
    case Chart::Identity: return 1.0;
    case Chart::Negated: return -1.0;
    case Chart::ExpNeg: return std::exp(f);
    case Chart::ExpPos: return -std::exp(f);
    case Chart::CoshNeg:
    case Chart::CoshPos: {
        if (!(f < 0.0))
            domain_error(c, "f", f);
        const double r = std::sqrt(-std::expm1(2.0 * f));
        return c == Chart::CoshNeg ? r : -r;
    }
    case Chart::SinhNeg: return std::sqrt(1.0 + std::exp(2.0 * f));
    case Chart::SinhPos: return -std::sqrt(1.0 + std::exp(2.0 * f));
    case Chart::SinNeg:
    case Chart::CosNeg: {
        if (!(f > 0.0))
            domain_error(c, "f", f);
        const double r = std::sqrt(std::expm1(2.0 * f));
        return c == Chart::SinNeg ? r : -r;
    }
    }
    return 1.0;
}

EdgeEval eval_edge(Family fam, int alpha_a, int alpha_b, bool special_a, bool special_b, double eta, double fa,
                   double fb, double c)
{
    if (special_a && special_b)
        fail(Err::FamilyConstraint, "edge joins two special vertices");
    const bool bEdge = special_a || special_b;
    if (bEdge && !is_mixed(fam))
        fail(Err::FamilyConstraint, fmt::format("family {} has no special vertices", family_name(fam)));
    if (special_b) {
        EdgeEval r = eval_edge(fam, alpha_b, alpha_a, true, false, eta, fb, fa, -c);
        std::swap(r.dl_dfa, r.dl_dfb);
        r.rho = 1.0 / r.rho;
        return r;
    }
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(eta))
        fail(Err::DomainViolation, "non-finite edge input");

    EdgeEval out;
    out.b_edge = bEdge;
    const double E = std::exp(fa + fb);
    double dca = eta * E, dcb = eta * E;
    switch (base_type(fam)) {
    case 1: {
        const double Sa = 1.0 + alpha_a * std::exp(2.0 * fa);
        const double Sb = 1.0 + alpha_b * std::exp(2.0 * fb);
        if (!(Sa > 0.0) || !(Sb > 0.0))
            fail(Err::DomainViolation, fmt::format("1+alpha e^(2f) must be positive (f={:.17g},{:.17g})", fa, fb));
        const double sg = bEdge ? 1.0 : -1.0;
        out.cosh_l = sg * std::sqrt(Sa * Sb) + eta * E;
        dca += sg * alpha_a * std::exp(2.0 * fa) * std::sqrt(Sb / Sa);
        dcb += sg * alpha_b * std::exp(2.0 * fb) * std::sqrt(Sa / Sb);
        out.rho = (bEdge ? -1.0 : 1.0) * std::sqrt(Sa / Sb);
        break;
    }
    case 2: {
        if (!(fa > 0.0) || !(fb > 0.0))
            fail(Err::DomainViolation, fmt::format("f must be positive (f={:.17g},{:.17g})", fa, fb));
        const double Sa = std::expm1(2.0 * fa);
        const double Sb = std::expm1(2.0 * fb);
        const double sg = bEdge ? -1.0 : 1.0;
        out.cosh_l = sg * std::sqrt(Sa * Sb) + eta * E;
        dca += sg * std::exp(2.0 * fa) * std::sqrt(Sb / Sa);
        dcb += sg * std::exp(2.0 * fb) * std::sqrt(Sa / Sb);
        out.rho = (bEdge ? -1.0 : 1.0) * std::sqrt(Sa / Sb);
        break;
    }
    default: {
        const double x = fb - fa - c;
        const double sg = bEdge ? 1.0 : -1.0;
        out.cosh_l = sg * std::cosh(x) + eta * E;
        dca += -sg * std::sinh(x);
        dcb += sg * std::sinh(x);
        out.rho = (bEdge ? -1.0 : 1.0) * std::exp(c + fa - fb);
        break;
    }
    }
    if (!(out.cosh_l > 1.0))
        fail(Err::NotAdmissible, fmt::format("cosh l = {:.17g} <= 1", out.cosh_l));
    out.l = std::acosh(out.cosh_l);
    const double sh = std::sqrt((out.cosh_l - 1.0) * (out.cosh_l + 1.0));
    out.dl_dfa = dca / sh;
    out.dl_dfb = dcb / sh;
    return out;
}

EdgeEval edge_eval(const StructureSpec& spec, const Triangulation& tri, int edge, const std::vector<double>& f)
{
    if (edge < 0 || edge >= static_cast<int>(tri.edges.size()))
        fail(Err::OutOfRange, fmt::format("edge {} out of range", edge));
    const Edge& e = tri.edges[edge];
    return eval_edge(spec.family, spec.alpha[e.a], spec.alpha[e.b], spec.is_special(e.a), spec.is_special(e.b),
                     spec.eta[edge], f[e.a], f[e.b], spec.shift(edge));
}

double edge_length(const StructureSpec& spec, const Triangulation& tri, int edge, const std::vector<double>& f)
{
    return edge_eval(spec, tri, edge, f).l;
}

double partial_ratio(const StructureSpec& spec, const Triangulation& tri, int edge, const std::vector<double>& f)
{
    try {
        return edge_eval(spec, tri, edge, f).rho;
    } catch (const Error& e) {
        if (e.code() == Err::NotAdmissible) {
            // the ratio is defined whenever the square roots are; rebuild it without the length
            const Edge& ed = tri.edges[edge];
            const bool sa = spec.is_special(ed.a), sb = spec.is_special(ed.b);
            const double fa = sa || !sb ? f[ed.a] : f[ed.b];
            const double fb = sa || !sb ? f[ed.b] : f[ed.a];
            const int aa = sa || !sb ? spec.alpha[ed.a] : spec.alpha[ed.b];
            const int ab = sa || !sb ? spec.alpha[ed.b] : spec.alpha[ed.a];
            const double sg = (sa || sb) ? -1.0 : 1.0;
            double rho = 0.0;
            switch (base_type(spec.family)) {
            case 1: rho = sg * std::sqrt((1.0 + aa * std::exp(2 * fa)) / (1.0 + ab * std::exp(2 * fb))); break;
            case 2: rho = sg * std::sqrt(std::expm1(2 * fa) / std::expm1(2 * fb)); break;
            default: {
                const double c = (sa || !sb) ? spec.shift(edge) : -spec.shift(edge);
                rho = sg * std::exp(c + fa - fb);
            }
            }
            return sb && !sa ? 1.0 / rho : rho;
        }
        throw;
    }
}

std::vector<Chart> charts(const StructureSpec& spec)
{
    std::vector<Chart> out(spec.alpha.size());
    for (std::size_t v = 0; v < out.size(); ++v)
        out[v] = chart_for(spec.family, spec.alpha[v], spec.is_special(static_cast<int>(v)));
    return out;
}

std::vector<double> u_from_f(const StructureSpec& spec, const std::vector<double>& f)
{
    const auto ch = charts(spec);
    std::vector<double> u(f.size());
    for (std::size_t v = 0; v < f.size(); ++v)
        u[v] = u_of_f(ch[v], f[v]);
    return u;
}

std::vector<double> f_from_u(const StructureSpec& spec, const std::vector<double>& u)
{
    const auto ch = charts(spec);
    std::vector<double> f(u.size());
    for (std::size_t v = 0; v < u.size(); ++v)
        f[v] = f_of_u(ch[v], u[v]);
    return f;
}

double dfdu(const StructureSpec& spec, int vertex, double f)
{
    return dfdu_chart(chart_for(spec.family, spec.alpha[vertex], spec.is_special(vertex)), f);
}

int mixed1_type(int alpha_special, int alpha_j, int alpha_k)
{
    auto rank = [](int a) { return a == 0 ? 0 : (a == 1 ? 1 : 2); };
    int lo = std::min(rank(alpha_j), rank(alpha_k));
    int hi = std::max(rank(alpha_j), rank(alpha_k));
    // pair order: (0,0) (0,1) (0,-1) (1,1) (1,-1) (-1,-1)
    static const int pairIndex[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return 3 * pairIndex[lo][hi] + rank(alpha_special) + 1;
}

std::string roman(int n)
{
    return n >= 1 && n <= 18 ? kRoman[n] : std::to_string(n);
}

namespace {

struct FaceRoles {
    int special = -1;  // corner index
};

FaceRoles face_roles(const StructureSpec& spec, const Face& fc)
{
    FaceRoles r;
    for (int c = 0; c < 3; ++c) {
        if (spec.is_special(fc.v[c]))
            r.special = c;
    }
    return r;
}

void add(std::vector<WeightIssue>& out, Err code, std::string msg)
{
    out.push_back({code, std::move(msg)});
}

void check_a1_edge(std::vector<WeightIssue>& out, int edge, int aa, int ab, double eta)
{
    if (!(eta > 0.0))
        add(out, Err::FamilyConstraint, fmt::format("edge {}: eta={:.17g} must be positive", edge, eta));
    else if (aa == ab && aa != 0 && !(eta > 1.0))
        add(out, Err::FamilyConstraint,
            fmt::format("edge {}: eta={:.17g} must exceed alpha_a*alpha_b = 1", edge, eta));
}

void check_mixed1_b_edge(std::vector<WeightIssue>& out, int edge, int as, int ao, double eta)
{
    auto genuine = [&](bool ok, const char* rule) {
        if (!ok)
            add(out, Err::FamilyConstraint,
                fmt::format("edge {}: eta={:.17g} violates {} for alpha (special,other)=({},{})", edge, eta, rule,
                            as, ao));
    };
    auto simplicity = [&](bool ok, const char* rule) {
        if (!ok)
            add(out, Err::UnsupportedWeightRange,
                fmt::format("edge {}: eta={:.17g} outside the supported window {} for alpha (special,other)=({},{})",
                            edge, eta, rule, as, ao));
    };
    if (as == 0 && ao == 0)
        genuine(eta > 0.0, "eta > 0");
    else if (as == 1 && ao == 0)
        simplicity(eta >= 0.0, "eta >= 0");
    else if (as == -1 && ao == 0)
        genuine(eta > 0.0, "eta > 0");
    else if (as == 1 && ao == 1)
        simplicity(eta > -1.0, "eta > -1");
    else if (as == 0 && ao == -1)
        genuine(eta > 0.0, "eta > 0");
    else if (as == -1 && ao == -1)
        genuine(eta > 1.0, "eta > 1");
}

}  // namespace

std::vector<WeightIssue> check_weights(const StructureSpec& spec, const Triangulation& tri)
{
    std::vector<WeightIssue> out;
    const int n = tri.n_boundary;
    if (static_cast<int>(spec.alpha.size()) != n)
        add(out, Err::FamilyConstraint, "alpha must be given for every boundary component");
    if (spec.eta.size() != tri.edges.size())
        add(out, Err::FamilyConstraint, "eta must be given for every edge");
    if (!spec.special.empty() && static_cast<int>(spec.special.size()) != n)
        add(out, Err::FamilyConstraint, "special flags must cover every boundary component");
    if (!spec.c_shift.empty() && spec.c_shift.size() != tri.edges.size())
        add(out, Err::FamilyConstraint, "shift must be given for every edge");
    if (!out.empty())
        return out;

    for (int v = 0; v < n; ++v) {
        const int a = spec.alpha[v];
        if (a < -1 || a > 1)
            add(out, Err::FamilyConstraint, fmt::format("vertex {}: alpha={} not in {{-1,0,1}}", v, a));
        if (base_type(spec.family) == 2 && a != -1)
            add(out, Err::FamilyConstraint,
                fmt::format("vertex {}: family {} requires alpha = -1", v, family_name(spec.family)));
        if (spec.is_special(v) && !is_mixed(spec.family))
            add(out, Err::FamilyConstraint,
                fmt::format("vertex {}: family {} has no special vertices", v, family_name(spec.family)));
    }
    if (!spec.c_shift.empty()) {
        for (std::size_t e = 0; e < spec.c_shift.size(); ++e) {
            if (spec.c_shift[e] != 0.0 && base_type(spec.family) != 3)
                add(out, Err::FamilyConstraint, fmt::format("edge {}: a shift is only defined for A3-type edges", e));
        }
        for (std::size_t fi = 0; fi < tri.faces.size(); ++fi) {
            double sum = 0.0;
            const Face& fc = tri.faces[fi];
            for (int r = 0; r < 3; ++r) {
                const Edge& e = tri.edges[fc.e[r]];
                sum += e.a == fc.v[r] ? spec.c_shift[fc.e[r]] : -spec.c_shift[fc.e[r]];
            }
            if (std::abs(sum) > 1e-12)
                add(out, Err::FamilyConstraint, fmt::format("face {}: shifts must sum to zero around the face", fi));
        }
    }
    for (std::size_t e = 0; e < tri.edges.size(); ++e) {
        const Edge& ed = tri.edges[e];
        if (spec.is_special(ed.a) && spec.is_special(ed.b))
            add(out, Err::FamilyConstraint, fmt::format("edge {} joins two special vertices", e));
        if (!std::isfinite(spec.eta[e]))
            add(out, Err::FamilyConstraint, fmt::format("edge {}: eta is not finite", e));
    }
    if (!out.empty())
        return out;

    for (std::size_t fi = 0; fi < tri.faces.size(); ++fi) {
        const Face& fc = tri.faces[fi];
        int nspecial = 0;
        for (int c = 0; c < 3; ++c)
            nspecial += spec.is_special(fc.v[c]) ? 1 : 0;
        if (nspecial > 1) {
            add(out, Err::FamilyConstraint, fmt::format("face {} has {} special corners", fi, nspecial));
            continue;
        }
        const int sc = face_roles(spec, fc).special;
        for (int r = 0; r < 3; ++r) {
            const int e = fc.e[r];
            const int a = fc.v[r], b = fc.v[(r + 1) % 3];
            const double eta = spec.eta[e];
            const bool bEdge = sc >= 0 && (r == sc || (r + 1) % 3 == sc);
            switch (base_type(spec.family)) {
            case 1:
                if (!bEdge)
                    check_a1_edge(out, e, spec.alpha[a], spec.alpha[b], eta);
                else {
                    const int s = sc == r ? a : b, o = sc == r ? b : a;
                    check_mixed1_b_edge(out, e, spec.alpha[s], spec.alpha[o], eta);
                }
                break;
            case 2:
                if (spec.family == Family::A2 && !(eta >= -1.0))
                    add(out, Err::FamilyConstraint, fmt::format("edge {}: eta={:.17g} must be >= -1", e, eta));
                if (spec.family == Family::MixedII && !(eta >= 1.0))
                    add(out, Err::FamilyConstraint, fmt::format("edge {}: eta={:.17g} must be >= 1", e, eta));
                break;
            default:
                if (!bEdge && !(eta > 0.0))
                    add(out, Err::FamilyConstraint, fmt::format("edge {}: eta={:.17g} must be positive", e, eta));
                break;
            }
        }
        if (sc < 0)
            continue;
        const int eb1 = fc.e[sc], eA = fc.e[(sc + 1) % 3], eb2 = fc.e[(sc + 2) % 3];
        const int o1 = fc.v[(sc + 1) % 3], o2 = fc.v[(sc + 2) % 3];
        if (spec.family == Family::MixedIII) {
            for (int eb : {eb1, eb2}) {
                if (spec.eta[eb] <= 0.0 && !(spec.eta[eb] + spec.eta[eA] <= 0.0))
                    add(out, Err::FamilyConstraint,
                        fmt::format("face {}: eta on edge {} is <= 0 so eta_{} + eta_{} must be <= 0", fi, eb, eb, eA));
            }
        }
        if (spec.family == Family::MixedI) {
            const int as = spec.alpha[fc.v[sc]];
            const int type = mixed1_type(as, spec.alpha[o1], spec.alpha[o2]);
            // name the B-edges by the alpha of their far end
            auto bedge_to = [&](int alpha) { return spec.alpha[o1] == alpha ? eb1 : eb2; };
            auto unsupported = [&](const std::string& rule) {
                add(out, Err::UnsupportedWeightRange,
                    fmt::format("face {} (type {}): weights outside the supported window {}", fi, roman(type), rule));
            };
            if (type == 13) {
                const double eij = spec.eta[bedge_to(1)], eik = spec.eta[bedge_to(-1)];
                if (eij < 0.0 && !(eij + eik > 0.0))
                    unsupported("eta_ij + eta_ik > 0 when eta_ij < 0");
            } else if (type == 14) {
                if (!(spec.eta[bedge_to(-1)] + spec.eta[eA] > 0.0))
                    unsupported("eta_ik + eta_jk > 0");
            } else if (type == 15) {
                if (!(spec.eta[bedge_to(1)] > 0.0))
                    unsupported("eta_ij > 0");
            } else if (type == 17) {
                if (!(spec.eta[eb1] > 0.0) || !(spec.eta[eb2] > 0.0))
                    unsupported("eta_ij > 0 and eta_ik > 0");
            }
        }
    }
    return out;
}

void require_weights(const StructureSpec& spec, const Triangulation& tri)
{
    const auto issues = check_weights(spec, tri);
    if (issues.empty())
        return;
    std::string msg = issues.front().message;
    if (issues.size() > 1)
        msg += fmt::format(" (and {} more)", issues.size() - 1);
    // report weight windows the theory leaves open ahead of outright violations only when nothing else is wrong
    Err code = issues.front().code;
    for (const auto& i : issues) {
        if (i.code == Err::FamilyConstraint) {
            code = Err::FamilyConstraint;
            msg = i.message;
            break;
        }
    }
    fail(code, msg);
}

std::vector<Constraint> face_constraints(const StructureSpec& spec, const Triangulation& tri, int face)
{
    std::vector<Constraint> out;
    const Face& fc = tri.faces[face];
    const int sc = face_roles(spec, fc).special;
    for (int r = 0; r < 3; ++r) {
        const int e = fc.e[r];
        int a = fc.v[r], b = fc.v[(r + 1) % 3];
        const double eta = spec.eta[e];
        const bool bEdge = sc >= 0 && (r == sc || (r + 1) % 3 == sc);
        if (bEdge && sc != r)
            std::swap(a, b);  // special endpoint first
        double lo = -kInf, hi = kInf;
        double wa = 1.0, wb = 1.0;
        const int aa = spec.alpha[a], ab = spec.alpha[b];
        switch (base_type(spec.family)) {
        case 1:
            if (!bEdge) {
                if (aa == 0 && ab == 0)
                    lo = std::log(2.0 / eta);
                else if (aa == ab)
                    lo = -std::acosh(eta);
                else if (aa == 0 || ab == 0)
                    lo = std::log(1.0 / eta);
                else
                    lo = std::asinh(-eta);
            } else {
                if (aa == 1 && ab == 0 && eta < 0.0)
                    hi = std::log(-1.0 / eta);
                else if (aa == -1 && ab == 0)
                    lo = std::log(1.0 / eta);
                else if (aa == 0 && ab == 1 && eta < 0.0)
                    lo = std::log(-eta);
                else if (aa == 1 && ab == 1 && eta <= -1.0)
                    lo = std::acosh(-eta);
                else if (aa == -1 && ab == 1)
                    lo = std::asinh(-eta);
                else if (aa == 0 && ab == -1)
                    hi = std::log(eta);
                else if (aa == 1 && ab == -1)
                    hi = std::asinh(eta);
                else if (aa == -1 && ab == -1) {
                    lo = -std::acosh(eta);
                    hi = std::acosh(eta);
                }
            }
            break;
        case 2:
            if (!bEdge) {
                if (eta < 1.0)
                    lo = -std::acos(std::max(-1.0, -eta));
            } else if (eta < 1.0) {
                lo = -std::asin(std::max(0.0, eta));
            }
            break;
        default: {
            const double c = tri.edges[e].a == a ? spec.shift(e) : -spec.shift(e);
            wa = std::exp(-0.5 * c);
            wb = std::exp(0.5 * c);
            if (!bEdge)
                lo = -std::sqrt(2.0 * eta);
            else if (eta <= 0.0)
                lo = std::sqrt(-2.0 * eta);
            break;
        }
        }
        if (lo == -kInf && hi == kInf)
            continue;
        Constraint c;
        c.face = face;
        c.edge = e;
        c.a = a;
        c.b = b;
        c.lo = lo;
        c.hi = hi;
        c.wa = wa;
        c.wb = wb;
        const std::string sum = wa == 1.0 && wb == 1.0 ? fmt::format("u{}+u{}", a, b)
                                                       : fmt::format("{:.17g}*u{}+{:.17g}*u{}", wa, a, wb, b);
        if (hi == kInf)
            c.label = fmt::format("{} > {:.17g}", sum, lo);
        else if (lo == -kInf)
            c.label = fmt::format("{} < {:.17g}", sum, hi);
        else
            c.label = fmt::format("{:.17g} < {} < {:.17g}", lo, sum, hi);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Constraint> all_constraints(const StructureSpec& spec, const Triangulation& tri)
{
    std::vector<Constraint> out;
    for (int f = 0; f < static_cast<int>(tri.faces.size()); ++f) {
        auto c = face_constraints(spec, tri, f);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

AdmissibleResult admissible(const StructureSpec& spec, const Triangulation& tri, const std::vector<double>& u)
{
    require_weights(spec, tri);
    if (static_cast<int>(u.size()) != tri.n_boundary)
        fail(Err::PreconditionViolated, "u has the wrong size");
    AdmissibleResult res;
    const auto ch = charts(spec);
    std::vector<char> badVertex(u.size(), 0);
    for (std::size_t v = 0; v < u.size(); ++v)
        badVertex[v] = in_chart(ch[v], u[v]) ? 0 : 1;
    for (int f = 0; f < static_cast<int>(tri.faces.size()); ++f) {
        const Face& fc = tri.faces[f];
        for (int r = 0; r < 3; ++r) {
            const int v = fc.v[r];
            const bool seen = (r > 0 && fc.v[0] == v) || (r > 1 && fc.v[1] == v);
            if (badVertex[v] && !seen)
                res.violations.push_back({f, fmt::format("u{} = {:.17g} in ({:.17g}, {:.17g})", v, u[v],
                                                         chart_lo(ch[v]), chart_hi(ch[v]))});
        }
        for (const auto& c : face_constraints(spec, tri, f)) {
            const double s = c.value(u);
            if (!(s > c.lo && s < c.hi))
                res.violations.push_back({f, c.label});
        }
    }
    res.ok = res.violations.empty();
    return res;
}

bool face_admissible(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& u)
{
    const Face& fc = tri.faces[face];
    for (int r = 0; r < 3; ++r) {
        const int v = fc.v[r];
        if (!in_chart(chart_for(spec.family, spec.alpha[v], spec.is_special(v)), u[v]))
            return false;
    }
    for (const auto& c : face_constraints(spec, tri, face)) {
        const double s = c.value(u);
        if (!(s > c.lo && s < c.hi))
            return false;
    }
    return true;
}

bool existence_proven(const StructureSpec& spec, const Triangulation& tri)
{
    switch (spec.family) {
    case Family::A1:
        return std::none_of(spec.alpha.begin(), spec.alpha.end(), [](int a) { return a == -1; });
    case Family::A2:
        return std::all_of(spec.eta.begin(), spec.eta.end(), [](double e) { return e >= -1.0 && e <= 0.0; });
    case Family::A3:
    case Family::MixedIII: return true;
    case Family::MixedII: return false;
    case Family::MixedI:
        for (const Face& fc : tri.faces) {
            const int sc = face_roles(spec, fc).special;
            if (sc < 0) {
                for (int r = 0; r < 3; ++r) {
                    if (spec.alpha[fc.v[r]] == -1)
                        return false;
                }
                continue;
            }
            const int t = mixed1_type(spec.alpha[fc.v[sc]], spec.alpha[fc.v[(sc + 1) % 3]],
                                      spec.alpha[fc.v[(sc + 2) % 3]]);
            if (t != 1 && t != 2 && t != 4 && t != 5)
                return false;
        }
        return true;
    }
    return false;
}

}  // namespace hexcurv
