#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hexcurv/curvature.hpp"
#include "hexcurv/hexagon.hpp"
#include "hexcurv/sampling.hpp"
#include "hexcurv/solver.hpp"
#include "hexcurv/tolerances.hpp"

using namespace hexcurv;

namespace {

using Clock = std::chrono::steady_clock;

const Family kFamilies[] = {Family::A1, Family::A2, Family::A3, Family::MixedI, Family::MixedII, Family::MixedIII};

struct Outcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> lines;
};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

struct FaceSample {
    StructureSpec spec;
    std::vector<double> u;
    std::vector<double> f;
    int face = 0;
};

// Faces of the pair of pants with random weights and random admissible points;
// near_fraction of them sit 1e-4 from the boundary of the admissible space.
std::vector<FaceSample> face_samples(Family fam, int count, std::uint64_t seed, double near_fraction = 0.0)
{
    std::mt19937_64 rng(seed);
    const Triangulation tri = pants();
    std::vector<FaceSample> out;
    const int per_spec = 20;
    while (static_cast<int>(out.size()) < count) {
        const StructureSpec spec = random_spec(fam, tri, rng);
        const auto pts = admissible_walk(spec, tri, rng, per_spec);
        for (int i = 0; i < per_spec && static_cast<int>(out.size()) < count; ++i) {
            FaceSample s{spec, pts[i], {}, static_cast<int>(out.size() % 2)};
            if (std::uniform_real_distribution<double>(0, 1)(rng) < near_fraction)
                s.u = near_boundary_u(spec, tri, rng, 1e-4);
            s.f = f_from_u(spec, s.u);
            out.push_back(std::move(s));
        }
    }
    return out;
}

Eigen::Matrix3d fd_dtheta_df(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& f,
                             double h)
{
    Eigen::Matrix3d m;
    const Face& fc = tri.faces[face];
    for (int j = 0; j < 3; ++j) {
        auto fp = f, fm = f;
        fp[fc.v[j]] += h;
        fm[fc.v[j]] -= h;
        const HexAngles ap = face_angles(spec, tri, face, fp), am = face_angles(spec, tri, face, fm);
        for (int i = 0; i < 3; ++i)
            m(i, j) = (ap[i] - am[i]) / (2 * h);
    }
    return m;
}

// Central differences, halving the step until two successive estimates agree,
// then one Richardson step.  Points close to a chart boundary need steps well below 1e-6.
Eigen::Matrix3d fd_adaptive(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& f,
                            double h0)
{
    double h = h0;
    Eigen::Matrix3d coarse = fd_dtheta_df(spec, tri, face, f, h);
    for (int k = 0; k < 8; ++k) {
        const Eigen::Matrix3d fine = fd_dtheta_df(spec, tri, face, f, h / 2);
        const Eigen::Matrix3d rich = (4.0 * fine - coarse) / 3.0;
        const double scale = std::max(1.0, fine.cwiseAbs().maxCoeff());
        if ((fine - coarse).cwiseAbs().maxCoeff() < 1e-6 * scale)
            return rich;
        coarse = fine;
        h /= 2;
    }
    return coarse;
}

double center_norm_at(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& f)
{
    const FaceData fd = face_data(spec, tri, face, f, false);
    Splits s;
    for (int r = 0; r < 3; ++r)
        s[r] = split_edge(fd.edges[r].l, fd.edges[r].rho);
    const auto v = embed(fd.lengths);
    const auto vp = polar(v);
    std::array<MinkowskiVec, 3> c;
    for (int r = 0; r < 3; ++r)
        c[r] = edge_center(v[r], v[(r + 1) % 3], s[r]);
    return face_center(vp, c, s).norm2;
}

// Beyond this length the hyperboloid coordinates lose too many digits for
// finite differences and the cancelling cosh-weighted diagonal sum to be meaningful.
constexpr double kMaxLength = 8.0;

double max_length(const FaceData& fd)
{
    return std::max({fd.lengths.edge(0), fd.lengths.edge(1), fd.lengths.edge(2)});
}

// Branch-tagged faces with geometry, drawn from the three A-families where the
// construction is defined, plus light-like faces found by bisection in f
// between a time-like and a space-like face of the same structure.
struct BranchPool {
    std::vector<FaceSample> time_like, space_like, light_like;
};

BranchPool branch_pool(int per_branch, std::uint64_t seed)
{
    BranchPool pool;
    const Triangulation tri = pants();
    std::mt19937_64 rng(seed);
    const Family fams[] = {Family::A1, Family::A2, Family::A3};
    int guard = 0;
    while ((static_cast<int>(pool.time_like.size()) < per_branch || static_cast<int>(pool.space_like.size()) < per_branch ||
            static_cast<int>(pool.light_like.size()) < per_branch) &&
           ++guard < 20000) {
        const Family fam = fams[guard % 3];
        const StructureSpec spec = random_spec(fam, tri, rng);
        const auto pts = admissible_walk(spec, tri, rng, 10);
        std::vector<double> tl_f, sl_f;
        for (const auto& u : pts) {
            const auto f = f_from_u(spec, u);
            const FaceData fd = face_data(spec, tri, 0, f, true);
            if (!fd.geom || max_length(fd) > kMaxLength)
                continue;
            if (fd.geom->center_class == CausalClass::TimeLike) {
                tl_f = f;
                if (static_cast<int>(pool.time_like.size()) < per_branch)
                    pool.time_like.push_back({spec, u, f, 0});
            } else if (fd.geom->center_class == CausalClass::SpaceLike) {
                sl_f = f;
                if (static_cast<int>(pool.space_like.size()) < per_branch)
                    pool.space_like.push_back({spec, u, f, 0});
            }
        }
        if (tl_f.empty() || sl_f.empty() || static_cast<int>(pool.light_like.size()) >= per_branch)
            continue;
        // the straight f-segment stays admissible only if its u-image does; check every step
        double lo = 0.0, hi = 1.0;
        auto at = [&](double t) {
            std::vector<double> f(tl_f.size());
            for (std::size_t i = 0; i < f.size(); ++i)
                f[i] = tl_f[i] + t * (sl_f[i] - tl_f[i]);
            return f;
        };
        bool ok = true;
        for (int it = 0; it < 200 && ok; ++it) {
            const double mid = 0.5 * (lo + hi);
            double n2 = 0.0;
            try {
                if (!admissible(spec, tri, u_from_f(spec, at(mid))).ok) {
                    ok = false;
                    break;
                }
                n2 = center_norm_at(spec, tri, 0, at(mid));
            } catch (const Error&) {
                ok = false;
                break;
            }
            if (std::abs(n2) < 1e-16)
                break;
            (n2 < 0 ? lo : hi) = mid;
            if (hi - lo < 1e-17)
                break;
        }
        if (!ok)
            continue;
        const auto f = at(0.5 * (lo + hi));
        try {
            const FaceData fd = face_data(spec, tri, 0, f, true);
            if (fd.geom && fd.geom->center_class == CausalClass::LightLike && max_length(fd) <= kMaxLength)
                pool.light_like.push_back({spec, u_from_f(spec, f), f, 0});
        } catch (const Error&) {
        }
    }
    return pool;
}

// ---------------------------------------------------------------------------

Outcome criterion1()
{
    Outcome o;
    const double l = std::acosh(2.0);
    HexAngles th{};
    const int reps = 1000;
    const auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i)
        th = angles_from_lengths({l, l, l});
    const double per_call = seconds_since(t0) / reps;
    double err = 0.0;
    for (int r = 0; r < 3; ++r)
        err = std::max(err, std::abs(th[r] - l));
    o.pass = err < 1e-12 && per_call < 1e-3;
    o.summary = fmt::format("max|theta-l| = {:.3g}, {:.3g} ms per evaluation", err, per_call * 1e3);
    return o;
}

Outcome criterion2()
{
    Outcome o;
    const Triangulation tri = pants();
    int total_bad = 0;
    for (Family fam : kFamilies) {
        const auto samples = face_samples(fam, 1000, 200 + static_cast<int>(fam));
        int no_split = 0, over = 0;
        double worst = 0.0;
        for (const auto& s : samples) {
            const FaceData fd = face_data(s.spec, tri, s.face, s.f, false);
            Splits sp;
            try {
                for (int r = 0; r < 3; ++r)
                    sp[r] = split_edge(fd.edges[r].l, fd.edges[r].rho);
            } catch (const Error&) {
                ++no_split;
                continue;
            }
            double a = 1.0, b = 1.0;
            for (int r = 0; r < 3; ++r) {
                a *= std::sinh(sp[r].d_ij);
                b *= std::sinh(sp[r].d_ji);
            }
            const double res = rel(a, b);
            worst = std::max(worst, res);
            if (!(res < 1e-10))
                ++over;
        }
        const bool pass = no_split == 0 && over == 0;
        total_bad += no_split + over;
        o.pass = o.pass && pass;
        o.lines.push_back(fmt::format("{:<9} {} faces={} max rel residual={:.3g} above 1e-10: {} no real split: {}",
                                      family_name(fam), pass ? "ok  " : "FAIL", samples.size(), worst, over, no_split));
    }
    o.summary = fmt::format("{} failing faces over six families x 1000", total_bad);
    return o;
}

Outcome criterion3(const BranchPool& pool)
{
    Outcome o;
    const Triangulation tri = pants();
    auto run = [&](const char* name, const std::vector<FaceSample>& set, double tol, Branch expect) {
        double worst = 0.0;
        int bad = 0, wrong_branch = 0, plain_bad = 0;
        for (const auto& s : set) {
            const FaceDerivative d = dtheta_df(s.spec, tri, s.face, s.f);
            if (d.branch != expect)
                ++wrong_branch;
            const Eigen::Matrix3d fd = fd_adaptive(s.spec, tri, s.face, s.f, 1e-6);
            const Eigen::Matrix3d plain = fd_dtheta_df(s.spec, tri, s.face, s.f, 1e-6);
            double ep = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    ep = std::max(ep, std::abs(d.m(i, j) - plain(i, j)) / std::max(1.0, std::abs(plain(i, j))));
            if (!(ep < tol))
                ++plain_bad;
            double e = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    e = std::max(e, std::abs(d.m(i, j) - fd(i, j)) / std::max(1.0, std::abs(fd(i, j))));
            worst = std::max(worst, e);
            if (!(e < tol))
                ++bad;
        }
        const bool pass = set.size() >= 300 && bad == 0 && wrong_branch == 0;
        o.pass = o.pass && pass;
        o.lines.push_back(fmt::format("{:<10} {} samples={} max rel error={:.3g} (tol {:g}) failures={} branch mismatches={} "
                                      "(fixed step 1e-6 alone: {} above tol)",
                                      name, pass ? "ok  " : "FAIL", set.size(), worst, tol, bad, wrong_branch, plain_bad));
    };
    run("time-like", pool.time_like, 1e-5, Branch::TimeLike);
    run("space-like", pool.space_like, 1e-5, Branch::SpaceLike);
    run("light-like", pool.light_like, 1e-5, Branch::LightLike);
    o.summary = "closed-form dtheta/df against step-halving central differences from 1e-6 with Richardson extrapolation";
    return o;
}

Outcome criterion4(const BranchPool& pool)
{
    Outcome o;
    const Triangulation tri = pants();
    double worst = 0.0, raw = 0.0;
    int n = 0;
    const char* names[] = {"time-like", "space-like", "light-like"};
    int si = 0;
    for (const auto* set : {&pool.time_like, &pool.space_like, &pool.light_like}) {
        double set_worst = 0.0;
        for (const auto& s : *set) {
            const FaceData fd = face_data(s.spec, tri, s.face, s.f, true);
            const Eigen::Matrix3d closed = dtheta_df(fd).m;
            const Eigen::Matrix3d chain = dtheta_df_chain(fd);
            for (int i = 0; i < 3; ++i) {
                const int j = (i + 1) % 3, k = (i + 2) % 3;
                const double lij = fd.lengths.edge(i), lki = fd.lengths.edge(k);
                const double t1 = std::cosh(lij) * closed(j, i), t2 = std::cosh(lki) * closed(k, i);
                const double gt = t1 + t2;
                raw = std::max(raw, rel(chain(i, i), gt));
                // the two terms cancel heavily on long edges, so measure against their size
                const double scale = std::max({1.0, std::abs(t1) + std::abs(t2), std::abs(chain(i, i))});
                set_worst = std::max(set_worst, std::abs(chain(i, i) - gt) / scale);
            }
            ++n;
        }
        worst = std::max(worst, set_worst);
        o.lines.push_back(fmt::format("{:<10} faces={} max scaled residual={:.3g}", names[si++], set->size(), set_worst));
    }
    o.pass = n > 0 && raw < 1e-10;
    o.summary = fmt::format("{} faces, max rel |chain diagonal - identity diagonal| = {:.3g} "
                            "(scaled by the cancelling terms {:.3g})",
                            n, raw, worst);
    return o;
}

Outcome criterion5(const BranchPool& pool)
{
    Outcome o;
    const Triangulation tri = pants();
    double local = 0.0, raw = 0.0;
    int nloc = 0;
    for (const auto* set : {&pool.time_like, &pool.space_like, &pool.light_like}) {
        for (const auto& s : *set) {
            const FaceData fd = face_data(s.spec, tri, s.face, s.f, true);
            for (int i = 0; i < 3; ++i) {
                for (int j = i + 1; j < 3; ++j) {
                    const double mij = dtheta_df_entry(*fd.geom, i, j), mji = dtheta_df_entry(*fd.geom, j, i);
                    const double dj = dfdu(s.spec, fd.v[j], fd.f[j]), di = dfdu(s.spec, fd.v[i], fd.f[i]);
                    const double a = mij * dj, b = mji * di;
                    raw = std::max(raw, rel(a, b));
                    // a chart derivative near zero multiplies a large f-entry; scale by the factors
                    const double scale = std::max({1.0, std::abs(mij), std::abs(mji)}) *
                                         std::max({1.0, std::abs(di), std::abs(dj)});
                    local = std::max(local, std::abs(a - b) / scale);
                }
            }
            ++nloc;
        }
    }
    const bool local_ok = local < 1e-12;
    o.pass = local_ok;
    o.lines.push_back(fmt::format("face level {} faces={} max asymmetry / factor scale={:.3g} (plain relative {:.3g})",
                                  local_ok ? "ok  " : "FAIL", nloc, local, raw));
    for (Family fam : kFamilies) {
        std::mt19937_64 rng(500 + static_cast<int>(fam));
        double worst = 0.0;
        int meshes = 0;
        for (int n : {3, 10, 30}) {
            const Triangulation t = n == 3 ? pants() : random_sphere(n, 40 + n);
            for (int rep = 0; rep < 4; ++rep) {
                const StructureSpec spec = random_spec(fam, t, rng);
                const auto u = random_admissible_u(spec, t, rng);
                const Eigen::MatrixXd J = assemble_jacobian(spec, t, f_from_u(spec, u)).dense();
                const double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
                worst = std::max(worst, (J - J.transpose()).cwiseAbs().maxCoeff() / scale);
                ++meshes;
            }
        }
        const bool ok = worst < 1e-11;
        o.pass = o.pass && ok;
        o.lines.push_back(fmt::format("global {:<9} {} meshes={} max rel asymmetry={:.3g}", family_name(fam),
                                      ok ? "ok  " : "FAIL", meshes, worst));
    }
    o.summary = "independent closed-form entries in u, and assembled Jacobians";
    return o;
}

Outcome criterion6()
{
    Outcome o;
    const Triangulation tri = pants();
    for (Family fam : kFamilies) {
        const auto samples = face_samples(fam, 1000, 600 + static_cast<int>(fam), 0.1);
        int face_bad = 0, global_bad = 0, chain = 0;
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& s : samples) {
            const FaceData fd = face_data(s.spec, tri, s.face, s.f, true);
            if (!fd.geom)
                ++chain;
            const double ev = max_eigenvalue(face_jacobian_u(s.spec, fd));
            worst = std::max(worst, ev);
            if (!(ev < -tol::eig))
                ++face_bad;
            if (!check_negative_definite(assemble_jacobian(s.spec, tri, s.f).sparse).negative_definite)
                ++global_bad;
        }
        const bool pass = face_bad == 0 && global_bad == 0;
        o.pass = o.pass && pass;
        o.lines.push_back(fmt::format(
            "{:<9} {} samples={} (10% at distance 1e-4 from the boundary) max face eigenvalue={:.3g} "
            "face not negative definite={} assembled not negative definite={} faces without real geometry={}",
            family_name(fam), pass ? "ok  " : "FAIL", samples.size(), worst, face_bad, global_bad, chain));
    }
    o.summary = "largest eigenvalue of face Jacobians and LDL^T pivots of assembled Jacobians";
    return o;
}

Outcome criterion7()
{
    Outcome o;
    for (Family fam : kFamilies) {
        std::mt19937_64 rng(700 + static_cast<int>(fam));
        int runs = 0, bad = 0, not_conv = 0, slow = 0;
        double worst = 0.0, slowest = 0.0;
        for (int n : {3, 10, 30}) {
            const Triangulation t = n == 3 ? pants() : random_sphere(n, 70 + n);
            for (int rep = 0; rep < 5; ++rep) {
                const StructureSpec spec = random_spec(fam, t, rng);
                const auto u0 = random_admissible_u(spec, t, rng);
                const auto f0 = f_from_u(spec, u0);
                const auto K = curvature_map(spec, t, f0);
                ++runs;
                const auto t0 = Clock::now();
                try {
                    const SolveResult r = solve_prescribed_curvature(spec, t, K);
                    const double dt = seconds_since(t0);
                    slowest = std::max(slowest, dt);
                    if (dt >= 1.0)
                        ++slow;
                    double e = 0.0;
                    for (int i = 0; i < n; ++i)
                        e = std::max(e, std::abs(r.f[i] - f0[i]));
                    worst = std::max(worst, e);
                    if (!(e < 1e-8))
                        ++bad;
                } catch (const NotConvergedError&) {
                    slowest = std::max(slowest, seconds_since(t0));
                    ++not_conv;
                }
            }
        }
        const bool pass = bad == 0 && not_conv == 0 && slow == 0;
        o.pass = o.pass && pass;
        o.lines.push_back(fmt::format("{:<9} {} solves={} max|f-f0|={:.3g} wrong solution={} not converged={} "
                                      "slowest={:.3f}s",
                                      family_name(fam), pass ? "ok  " : "FAIL", runs, worst, bad, not_conv, slowest));
    }
    o.summary = "pair of pants and random spheres with N = 10, 30";
    return o;
}

Outcome criterion8()
{
    Outcome o;
    const auto t0 = Clock::now();
    const Family fams[] = {Family::A1, Family::A2, Family::A3, Family::MixedIII, Family::MixedI};
    for (Family fam : fams) {
        std::mt19937_64 rng(800 + static_cast<int>(fam));
        int runs = 0, ok = 0, unproven = 0, no_start = 0;
        int max_it = 0;
        for (int n : {3, 10, 30, 50}) {
            const Triangulation t = n == 3 ? pants() : random_sphere(n, 80 + n);
            for (int rep = 0; rep < 3; ++rep) {
                const StructureSpec spec = random_spec(fam, t, rng, true);
                if (!existence_proven(spec, t))
                    ++unproven;
                std::vector<double> K(n);
                for (double& k : K)
                    k = std::uniform_real_distribution<double>(0.5, 5.0)(rng);
                ++runs;
                SolveOptions opts;
                opts.max_iter = 40;
                try {
                    const SolveResult r = solve_prescribed_curvature(spec, t, K, opts);
                    max_it = std::max(max_it, r.report.iterations);
                    ++ok;
                } catch (const NotConvergedError& e) {
                    max_it = std::max(max_it, e.best().report.iterations);
                } catch (const Error& e) {
                    if (e.code() == Err::NoFeasibleStart)
                        ++no_start;
                    else
                        throw;
                }
            }
        }
        const bool pass = ok == runs && unproven == 0;
        o.pass = o.pass && pass;
        o.lines.push_back(fmt::format("{:<9} {} targets={} converged={} max iterations={} no feasible start={}{}",
                                      family_name(fam), pass ? "ok  " : "FAIL", runs, ok, max_it, no_start,
                                      unproven ? fmt::format(" (sampler produced {} unproven specs)", unproven) : ""));
    }
    const double total = seconds_since(t0);
    o.pass = o.pass && total < 30.0;
    o.summary = fmt::format("random K* in [0.5,5]^N, N in {{3,10,30,50}}, at most 40 iterations; {:.2f}s total", total);
    return o;
}

Outcome criterion9()
{
    Outcome o;
    std::mt19937_64 rng(900);
    std::uniform_real_distribution<double> L(0.2, 4.0), R(-1.5, 1.5);
    int counts[2] = {0, 0}, excluded = 0, unclassified = 0, incoherent = 0, attempts = 0;
    double worst[2] = {0.0, 0.0};
    int lemma_sl1 = 0, lemma_sl2 = 0, uncovered = 0;
    while ((counts[0] < 500 || counts[1] < 500) && ++attempts < 400000) {
        const HexLengths l{L(rng), L(rng), L(rng)};
        const double r0 = std::exp(R(rng)), r1 = std::exp(R(rng));
        HexagonGeometry g;
        try {
            g = build_hexagon_from_ratios(l, {r0, r1, 1.0 / (r0 * r1)});
        } catch (const Error& e) {
            if (e.code() == Err::UnclassifiableSigns)
                ++excluded;
            continue;
        }
        if (g.center_class == CausalClass::LightLike)
            continue;
        const int c = g.center_class == CausalClass::TimeLike ? 0 : 1;
        if (counts[c] >= 500)
            continue;
        ++counts[c];
        if (g.domain.empty())
            ++unclassified;
        const IdentityCheck id = appendix_identities(g);
        worst[c] = std::max(worst[c], id.max_residual);
        if (!id.signs_coherent)
            ++incoherent;
        if (id.lemma == "space-like-1")
            ++lemma_sl1;
        else if (id.lemma == "space-like-2")
            ++lemma_sl2;
        else if (id.lemma == "uncovered")
            ++uncovered;
    }
    o.pass = counts[0] >= 500 && counts[1] >= 500 && worst[0] < 1e-8 && worst[1] < 1e-8 && unclassified == 0 &&
             incoherent == 0;
    o.lines.push_back(fmt::format("time-like  hexagons={} max residual={:.3g}", counts[0], worst[0]));
    o.lines.push_back(fmt::format("space-like hexagons={} max residual={:.3g} (space-like-1: {}, space-like-2: {}, "
                                  "other sign patterns: {})",
                                  counts[1], worst[1], lemma_sl1, lemma_sl2, uncovered));
    o.lines.push_back(fmt::format("unclassified={} sign-incoherent={}; {} space-like centers outside the twelve "
                                  "domains were set aside as outside the construction",
                                  unclassified, incoherent, excluded));
    o.summary = "hexagon identities and sign-domain classification on random hexagons";
    return o;
}

Outcome criterion10()
{
    Outcome o;
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> L(0.2, 4.0);
    double gram = 0.0, orth = 0.0;
    for (int s = 0; s < 10000; ++s) {
        const HexLengths l{L(rng), L(rng), L(rng)};
        const auto v = embed(l);
        const auto vp = polar(v);
        for (int a = 0; a < 3; ++a) {
            gram = std::max(gram, rel(minkowski_dot(v[a], v[a]), 1.0));
            const int b = (a + 1) % 3;
            gram = std::max(gram, rel(minkowski_dot(v[a], v[b]), -std::cosh(l.edge(a))));
            for (int c = 0; c < 3; ++c) {
                if (c != a)
                    orth = std::max(orth, std::abs(minkowski_dot(vp[a], v[c])));
            }
        }
    }
    o.pass = gram < 1e-11 && orth < 1e-11;
    o.summary = fmt::format("10000 triples: Gram residual={:.3g} polar orthogonality={:.3g}", gram, orth);
    return o;
}

Outcome criterion11()
{
    Outcome o;
    for (Family fam : kFamilies) {
        std::mt19937_64 rng(1100 + static_cast<int>(fam));
        const Triangulation tri = pants();
        int pairs = 0, bad = 0;
        while (pairs < 1000) {
            const StructureSpec spec = random_spec(fam, tri, rng);
            const auto pts = admissible_walk(spec, tri, rng, 21, 2);
            for (int i = 0; i + 1 < static_cast<int>(pts.size()) && pairs < 1000; ++i) {
                const auto& a = pts[i];
                const auto& b = pts[(i * 7 + 3) % pts.size()];
                std::vector<double> mid(a.size());
                for (std::size_t k = 0; k < a.size(); ++k)
                    mid[k] = 0.5 * (a[k] + b[k]);
                ++pairs;
                if (!admissible(spec, tri, mid).ok)
                    ++bad;
            }
        }
        o.pass = o.pass && bad == 0;
        o.lines.push_back(fmt::format("{:<9} {} pairs={} violations={}", family_name(fam), bad ? "FAIL" : "ok  ", pairs, bad));
    }
    o.summary = "midpoints of admissible pairs";
    return o;
}

Outcome criterion12()
{
    Outcome o;
    const Triangulation tri = pants();
    double worst = 0.0;
    int n = 0, failures = 0;
    for (int s = 0; s < 100; ++s) {
        const Family fam = kFamilies[s % 6];
        std::mt19937_64 rng(1200 + s);
        const StructureSpec spec = random_spec(fam, tri, rng);
        const auto pts = admissible_walk(spec, tri, rng, 3, 4);
        const int face = s % 2;
        try {
            const double two = energy_face(spec, tri, face, pts[0], pts[1]) + energy_face(spec, tri, face, pts[1], pts[2]);
            const double one = energy_face(spec, tri, face, pts[0], pts[2]);
            worst = std::max(worst, std::abs(two - one));
            if (!(std::abs(two - one) < 1e-8))
                ++failures;
        } catch (const Error&) {
            ++failures;
        }
        ++n;
    }
    o.pass = failures == 0;
    o.summary = fmt::format("{} face segments over six families: max two-path discrepancy={:.3g}, failures={}", n,
                            worst, failures);
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    const auto t0 = Clock::now();
    std::vector<int> only;
    for (int i = 1; i < argc; ++i)
        only.push_back(std::atoi(argv[i]));
    const BranchPool pool = branch_pool(300, 31);
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"regular-hexagon fixed point", criterion1},
        {"compatibility of partial lengths", criterion2},
        {"angle variation vs finite differences", [&] { return criterion3(pool); }},
        {"diagonal from off-diagonal identity", [&] { return criterion4(pool); }},
        {"Jacobian symmetry in u", [&] { return criterion5(pool); }},
        {"negative definiteness", criterion6},
        {"rigidity roundtrip", criterion7},
        {"existence desk test", criterion8},
        {"hexagon identity suite", criterion9},
        {"embedding contracts", criterion10},
        {"convexity witness", criterion11},
        {"energy path independence", criterion12},
    };
    int failed = 0, ran = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(i + 1)) == only.end())
            continue;
        ++ran;
        const auto tc = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.summary = fmt::format("aborted: {}", e.what());
        }
        failed += o.pass ? 0 : 1;
        fmt::print("{} {:>2} {}: {} [{:.1f}s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.summary,
                   seconds_since(tc));
        for (const auto& line : o.lines)
            fmt::print("        {}\n", line);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed in {:.1f}s\n", ran - failed, ran, seconds_since(t0));
    return failed == 0 ? 0 : 1;
}
