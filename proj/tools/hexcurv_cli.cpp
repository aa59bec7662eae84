#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hexcurv/conformal.hpp"
#include "hexcurv/curvature.hpp"
#include "hexcurv/error.hpp"
#include "hexcurv/hexagon.hpp"
#include "hexcurv/mesh.hpp"
#include "hexcurv/sampling.hpp"
#include "hexcurv/solver.hpp"
#include "hexcurv/tolerances.hpp"
#include "report.hpp"

using namespace hexcurv;
using report::Record;
using report::Report;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_triple(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok.empty())
            throw UsageError(fmt::format("{}: '{}' is not a number", what, tok));
        out.push_back(v);
    }
    if (out.size() != 3)
        throw UsageError(fmt::format("{} needs three comma-separated values", what));
    return out;
}

// Reads "<kind> <vertex> <value>" lines for any of the accepted kinds.
// Returns the kind that was used; every vertex must appear exactly once.
std::string read_vertex_values(const std::string& path, const std::vector<std::string>& kinds, int n,
                               std::vector<double>& values)
{
    std::ifstream in(path);
    if (!in)
        fail(Err::PreconditionViolated, fmt::format("cannot open '{}'", path));
    values.assign(n, std::nan(""));
    std::vector<char> seen(n, 0);
    std::string kind, line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream ls(line);
        std::string k;
        if (!(ls >> k))
            continue;
        int v = -1;
        double x = 0.0;
        std::string rest;
        if (std::find(kinds.begin(), kinds.end(), k) == kinds.end() || !(ls >> v >> x) || (ls >> rest))
            fail(Err::SyntaxError, fmt::format("{} line {}: expected '{} <vertex> <value>'", path, lineNo, kinds[0]));
        if (!kind.empty() && k != kind)
            fail(Err::SyntaxError, fmt::format("{} line {}: mixes '{}' and '{}' records", path, lineNo, kind, k));
        kind = k;
        if (v < 0 || v >= n)
            fail(Err::DanglingReference, fmt::format("{} line {}: vertex {} does not exist", path, lineNo, v));
        if (seen[v])
            fail(Err::SyntaxError, fmt::format("{} line {}: vertex {} given twice", path, lineNo, v));
        if (!std::isfinite(x))
            fail(Err::SyntaxError, fmt::format("{} line {}: value is not finite", path, lineNo));
        seen[v] = 1;
        values[v] = x;
    }
    for (int v = 0; v < n; ++v) {
        if (!seen[v])
            fail(Err::PreconditionViolated, fmt::format("{}: no value for vertex {}", path, v));
    }
    return kind;
}

// f from an "f"/"u" file, or the family default start when no file is given.
std::vector<double> conformal_factors(const MeshDocument& doc, const std::string& path)
{
    if (path.empty())
        return f_from_u(doc.spec, default_initial(doc.spec, doc.tri));
    std::vector<double> vals;
    const std::string kind = read_vertex_values(path, {"f", "u"}, doc.tri.n_boundary, vals);
    return kind == "u" ? f_from_u(doc.spec, vals) : vals;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        fail(Err::PreconditionViolated, fmt::format("cannot write '{}'", path));
    out << text;
}

Report cmd_validate(const std::string& mesh)
{
    const MeshDocument doc = load_mesh(mesh);
    Report r{"validate", {}, {}};
    r.headline = fmt::format("ok, N={}, |E|={}, |F|={}", doc.tri.n_boundary, doc.tri.edges.size(), doc.tri.faces.size());
    r.add("mesh")
        .add("N", doc.tri.n_boundary)
        .add("edges", static_cast<int>(doc.tri.edges.size()))
        .add("faces", static_cast<int>(doc.tri.faces.size()))
        .add("family", family_name(doc.spec.family))
        .add("existence_known", existence_proven(doc.spec, doc.tri));
    for (const auto& w : doc.warnings)
        r.add("warning").add("line", w.line).add("code", w.code).add("message", w.message);
    return r;
}

Report cmd_curvature(const std::string& mesh, const std::string& fpath)
{
    const MeshDocument doc = load_mesh(mesh);
    const auto f = conformal_factors(doc, fpath);
    const auto u = u_from_f(doc.spec, f);
    const auto adm = admissible(doc.spec, doc.tri, u);
    if (!adm.ok)
        fail(Err::NotAdmissible, fmt::format("f is outside the admissible space ({} violated constraints, first: {})",
                                             adm.violations.size(), adm.violations.front().constraint));
    const auto K = curvature_map(doc.spec, doc.tri, f);
    Report r{"curvature", {}, {}};
    for (int i = 0; i < doc.tri.n_boundary; ++i)
        r.add("K").add("vertex", i).add("value", K[i]);
    return r;
}

Report cmd_jacobian(const std::string& mesh, const std::string& fpath)
{
    const MeshDocument doc = load_mesh(mesh);
    const auto f = conformal_factors(doc, fpath);
    if (!admissible(doc.spec, doc.tri, u_from_f(doc.spec, f)).ok)
        fail(Err::NotAdmissible, "f is outside the admissible space");
    const GlobalJacobian J = assemble_jacobian(doc.spec, doc.tri, f);
    Report r{"jacobian", {}, {}};
    const Eigen::MatrixXd d = J.dense();
    for (int i = 0; i < d.rows(); ++i) {
        for (int j = 0; j < d.cols(); ++j) {
            if (d(i, j) != 0.0)
                r.add("J").add("row", i).add("col", j).add("value", d(i, j));
        }
    }
    const Definiteness def = check_negative_definite(J.sparse);
    r.add("branches")
        .add("time_like", J.stats.time_like)
        .add("space_like", J.stats.space_like)
        .add("light_like", J.stats.light_like)
        .add("length_chain", J.stats.length_chain);
    r.add("definiteness")
        .add("negative_definite", def.negative_definite)
        .add("max_pivot", def.max_pivot)
        .add("asymmetry", (d - d.transpose()).cwiseAbs().maxCoeff());
    return r;
}

void add_vec(Report& r, const std::string& kind, const std::string& name, const MinkowskiVec& v)
{
    r.add(kind).add("name", name).add("x1", v.x1).add("x2", v.x2).add("x3", v.x3);
}

Report cmd_hexagon(const std::string& lengths, const std::string& ratios)
{
    const auto l = parse_triple(lengths, "--lengths");
    const auto rho = ratios.empty() ? std::vector<double>{1.0, 1.0, 1.0} : parse_triple(ratios, "--ratios");
    const HexagonGeometry g = build_hexagon_from_ratios({l[0], l[1], l[2]}, {rho[0], rho[1], rho[2]});
    Report r{"hexagon", {}, {}};
    const char* edge[] = {"ij", "jk", "ki"};
    const char* corner[] = {"i", "j", "k"};
    for (int e = 0; e < 3; ++e)
        r.add("length").add("edge", edge[e]).add("value", g.lengths.edge(e));
    for (int c = 0; c < 3; ++c)
        r.add("theta").add("corner", corner[c]).add("value", g.angles[c]);
    for (int e = 0; e < 3; ++e)
        r.add("split").add("edge", edge[e]).add("d_ab", g.splits[e].d_ij).add("d_ba", g.splits[e].d_ji);
    for (int c = 0; c < 3; ++c)
        add_vec(r, "vertex", fmt::format("v_{}", corner[c]), g.v[c]);
    for (int c = 0; c < 3; ++c)
        add_vec(r, "polar", fmt::format("v'_{}", corner[c]), g.vp[c]);
    for (int e = 0; e < 3; ++e)
        add_vec(r, "edge_center", fmt::format("c_{}", edge[e]), g.edge_centers[e]);
    add_vec(r, "face_center", "c_ijk", g.face_center);
    r.add("center").add("class", causal_name(g.center_class)).add("norm2", g.center_norm);
    if (g.has_distances) {
        for (int c = 0; c < 3; ++c)
            r.add("distance").add("corner", corner[c]).add("h", g.h[c]).add("q", g.q[c]);
    }
    r.add("domain").add("name", g.domain.empty() ? "none" : g.domain).add("sign_ambiguous", g.sign_ambiguous);
    if (g.dual) {
        for (int c = 0; c < 3; ++c)
            r.add("dual_split")
                .add("corner", corner[c])
                .add("theta_st", (*g.dual)[c].theta_st)
                .add("theta_ts", (*g.dual)[c].theta_ts);
    } else {
        r.add("dual_split_unavailable").add("reason", g.dual_error);
    }
    const IdentityCheck id = appendix_identities(g);
    r.add("identities")
        .add("lemma", id.lemma)
        .add("checked", id.checked)
        .add("max_residual", id.max_residual)
        .add("signs_coherent", id.signs_coherent)
        .add("compat_residual", compat_residual(g.splits));
    return r;
}

struct Check {
    std::string name;
    double bound;
    double worst = -std::numeric_limits<double>::infinity();
    int count = 0;
    int failures = 0;

    void add(double v)
    {
        ++count;
        if (v > worst)
            worst = v;
        if (!(v < bound))
            ++failures;
    }
    double reported() const { return count > 0 ? worst : 0.0; }
};

Report cmd_check_identities(const std::string& family, int samples, std::uint64_t seed)
{
    const auto fam = parse_family(family);
    if (!fam)
        throw UsageError(fmt::format("unknown family '{}'", family));
    if (samples < 1)
        throw UsageError("--samples must be positive");
    const Triangulation tri = pants();
    std::mt19937_64 rng(seed);
    Check compat{"compatibility", tol::law}, identity{"diagonal_identity", 1e-10}, sym{"face_symmetry", 1e-12},
        definite{"face_max_eigenvalue", -tol::eig}, appendix{"appendix_identities", 1e-8}, signs{"sign_coherence", 0.5};
    // Past this length the hyperboloid coordinates have lost too many digits
    // for residual checks at these bounds; such faces are counted, not checked.
    constexpr double kCheckedLength = 8.0;
    int noGeometry = 0, longFaces = 0, remaining = samples;
    while (remaining > 0) {
        const StructureSpec spec = random_spec(*fam, tri, rng);
        const int batch = std::min(remaining, 20);
        const auto pts = admissible_walk(spec, tri, rng, batch);
        for (const auto& u : pts) {
            const auto f = f_from_u(spec, u);
            const int face = (samples - remaining) % 2;
            --remaining;
            const FaceData fd = face_data(spec, tri, face, f, true);
            definite.add(max_eigenvalue(face_jacobian_u(spec, fd)));
            if (!fd.geom) {
                ++noGeometry;
                continue;
            }
            const HexagonGeometry& g = *fd.geom;
            if (std::max({fd.lengths.edge(0), fd.lengths.edge(1), fd.lengths.edge(2)}) > kCheckedLength) {
                ++longFaces;
                continue;
            }
            double a = 1.0, b = 1.0;
            for (int r = 0; r < 3; ++r) {
                a *= std::sinh(g.splits[r].d_ij);
                b *= std::sinh(g.splits[r].d_ji);
            }
            compat.add(std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}));
            const FaceDerivative d = dtheta_df(fd);
            if (d.branch != Branch::LengthChain) {
                const Eigen::Matrix3d chain = dtheta_df_chain(fd);
                double w = 0.0, s = 0.0;
                for (int i = 0; i < 3; ++i) {
                    w = std::max(w, std::abs(chain(i, i) - d.m(i, i)) /
                                        std::max({1.0, std::abs(chain(i, i)), std::abs(d.m(i, i))}));
                    for (int j = i + 1; j < 3; ++j) {
                        const double x = d.m(i, j) * dfdu(spec, fd.v[j], fd.f[j]);
                        const double y = d.m(j, i) * dfdu(spec, fd.v[i], fd.f[i]);
                        s = std::max(s, std::abs(x - y) /
                                            (std::max({1.0, std::abs(d.m(i, j)), std::abs(d.m(j, i))}) *
                                             std::max({1.0, std::abs(dfdu(spec, fd.v[i], fd.f[i])),
                                                       std::abs(dfdu(spec, fd.v[j], fd.f[j]))})));
                    }
                }
                identity.add(w);
                sym.add(s);
            }
            const IdentityCheck id = appendix_identities(g);
            if (id.checked > 0)
                appendix.add(id.max_residual);
            signs.add(id.signs_coherent ? 0.0 : 1.0);
        }
    }
    Report r{"check-identities", {}, {}};
    bool all = true;
    for (const Check* c : {&compat, &identity, &sym, &definite, &appendix, &signs}) {
        const bool pass = c->failures == 0;
        all = all && pass;
        r.add("check")
            .add("name", c->name)
            .add("samples", c->count)
            .add("max_value", c->reported())
            .add("bound", c->bound)
            .add("failures", c->failures)
            .add("pass", pass);
    }
    r.add("coverage").add("faces", samples).add("without_real_geometry", noGeometry).add("edge_longer_than_8", longFaces);
    r.headline = fmt::format("{} family={} samples={} seed={}", all ? "ok" : "FAIL", family_name(*fam), samples, seed);
    r.add("result").add("pass", all);
    return r;
}

struct SolveArgs {
    std::string mesh, kfile, initial, report, out;
    double tol = 1e-10;
    int max_iter = 100;
};

Report cmd_solve(const SolveArgs& a, bool json, int& exit_code)
{
    const MeshDocument doc = load_mesh(a.mesh);
    const int n = doc.tri.n_boundary;
    std::vector<double> K;
    read_vertex_values(a.kfile, {"K"}, n, K);
    SolveOptions opts;
    opts.tol_K = a.tol;
    opts.max_iter = a.max_iter;
    if (!a.initial.empty()) {
        opts.initial = Initial::UserSupplied;
        std::vector<double> vals;
        const std::string kind = read_vertex_values(a.initial, {"u", "f"}, n, vals);
        opts.u0 = kind == "u" ? vals : u_from_f(doc.spec, vals);
    }
    SolveResult res;
    std::string error;
    try {
        res = solve_prescribed_curvature(doc.spec, doc.tri, K, opts);
    } catch (const NotConvergedError& e) {
        res = e.best();
        error = e.detail();
    }
    Report sol{"solve", {}, {}};
    for (int i = 0; i < n; ++i)
        sol.add("f").add("vertex", i).add("value", res.f[i]);

    Report rep{"solve-report", {}, {}};
    const SolveReport& s = res.report;
    rep.add("status")
        .add("converged", s.converged)
        .add("iterations", s.iterations)
        .add("residual", s.residual)
        .add("boundary_hits", s.boundary_hits)
        .add("length_chain_faces", s.length_chain_faces)
        .add("existence_unproven", s.existence_unproven);
    for (std::size_t k = 0; k < s.trajectory.size(); ++k)
        rep.add("iteration").add("step", static_cast<int>(k)).add("residual", s.trajectory[k]);
    if (!s.diagnostic.empty())
        rep.add("diagnostic").add("text", s.diagnostic);
    if (!error.empty())
        rep.add("error").add("text", error);

    if (!a.out.empty())
        write_file(a.out, report::render(sol, json));
    if (!a.report.empty())
        write_file(a.report, report::render(rep, json));
    exit_code = s.converged ? 0 : 1;
    if (!error.empty())
        std::cerr << "error: NotConverged: " << error << "\n";

    Report combined{"solve", {}, {}};
    combined.headline = s.converged ? fmt::format("converged in {} iterations, residual {:.3g}", s.iterations, s.residual)
                                    : "not converged";
    if (a.out.empty())
        combined.records = sol.records;
    if (a.report.empty())
        combined.records.insert(combined.records.end(), rep.records.begin(), rep.records.end());
    return combined;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete conformal structures on ideally triangulated surfaces with boundary"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "Write a single JSON document instead of line records");

    std::string mesh, fpath;
    auto* validate = app.add_subcommand("validate", "Parse and check a mesh file");
    validate->add_option("mesh", mesh, "Mesh file")->required();

    auto* curvature = app.add_subcommand("curvature", "Generalized curvature K at every boundary component");
    curvature->add_option("mesh", mesh, "Mesh file")->required();
    curvature->add_option("--f", fpath, "File of 'f <vertex> <value>' or 'u <vertex> <value>' lines");

    auto* jacobian = app.add_subcommand("jacobian", "Jacobian of K in u, with definiteness test");
    jacobian->add_option("mesh", mesh, "Mesh file")->required();
    jacobian->add_option("--f", fpath, "File of 'f <vertex> <value>' or 'u <vertex> <value>' lines");

    std::string lengths, ratios;
    auto* hexagon = app.add_subcommand("hexagon", "Full geometry report for one right-angled hexagon");
    hexagon->add_option("--lengths", lengths, "l_ij,l_jk,l_ki")->required();
    hexagon->add_option("--ratios", ratios, "sinh d_ab / sinh d_ba per edge (default 1,1,1)");

    std::string family;
    int samples = 500;
    std::uint64_t seed = 1;
    auto* check = app.add_subcommand("check-identities", "Identity suite on random admissible faces");
    check->add_option("--family", family, "A1, A2, A3, MixedI, MixedII or MixedIII")->required();
    check->add_option("--samples", samples, "Number of faces");
    check->add_option("--seed", seed, "Random seed");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Find f with prescribed curvature");
    solve->add_option("mesh", sa.mesh, "Mesh file")->required();
    solve->add_option("target", sa.kfile, "File of 'K <vertex> <value>' lines")->required();
    solve->add_option("--tol", sa.tol, "Residual tolerance on K");
    solve->add_option("--max-iter", sa.max_iter, "Newton iteration limit");
    solve->add_option("--initial", sa.initial, "Starting point, 'u' or 'f' lines");
    solve->add_option("--report", sa.report, "Write the iteration report here");
    solve->add_option("--out", sa.out, "Write the solved f here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Report r;
        int code = 0;
        if (*validate)
            r = cmd_validate(mesh);
        else if (*curvature)
            r = cmd_curvature(mesh, fpath);
        else if (*jacobian)
            r = cmd_jacobian(mesh, fpath);
        else if (*hexagon)
            r = cmd_hexagon(lengths, ratios);
        else if (*check) {
            r = cmd_check_identities(family, samples, seed);
            code = r.records.back().fields.front().second == report::Value(true) ? 0 : 1;
        } else if (*solve) {
            r = cmd_solve(sa, json, code);
        }
        std::cout << report::render(r, json);
        return code;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << err_name(e.code()) << ": " << e.detail() << "\n";
        return 1;
    }
}
