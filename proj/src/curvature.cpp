#include "hexcurv/curvature.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <fmt/format.h>

#include "hexcurv/error.hpp"
#include "hexcurv/parallel.hpp"
#include "hexcurv/tolerances.hpp"

namespace hexcurv {

namespace {

int edge_between(int i, int j)
{
    return (j - i + 3) % 3 == 1 ? i : j;
}

[[noreturn]] void rethrow_for_face(const Error& e, int face)
{
    fail(e.code(), fmt::format("face {}: {}", face, e.detail()));
}

}  // namespace

const char* branch_name(Branch b)
{
    switch (b) {
    case Branch::TimeLike: return "time-like";
    case Branch::SpaceLike: return "space-like";
    case Branch::LightLike: return "light-like";
    case Branch::LengthChain: return "length-chain";
    }
    return "?";
}

FaceData face_data(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& f,
                   bool with_geometry)
{
    if (face < 0 || face >= static_cast<int>(tri.faces.size()))
        fail(Err::OutOfRange, fmt::format("face {} out of range", face));
    const Face& fc = tri.faces[face];
    FaceData fd;
    fd.face = face;
    fd.v = fc.v;
    try {
        for (int r = 0; r < 3; ++r) {
            const int a = fc.v[r], b = fc.v[(r + 1) % 3];
            const int e = fc.e[r];
            const double c = tri.edges[e].a == a ? spec.shift(e) : -spec.shift(e);
            fd.f[r] = f[a];
            fd.edges[r] = eval_edge(spec.family, spec.alpha[a], spec.alpha[b], spec.is_special(a), spec.is_special(b),
                                    spec.eta[e], f[a], f[b], c);
        }
        fd.lengths = {fd.edges[0].l, fd.edges[1].l, fd.edges[2].l};
        fd.angles = angles_from_lengths(fd.lengths);
    } catch (const Error& e) {
        rethrow_for_face(e, face);
    }
    if (with_geometry) {
        try {
            Splits s;
            for (int r = 0; r < 3; ++r)
                s[r] = split_edge(fd.edges[r].l, fd.edges[r].rho);
            fd.geom = build_hexagon(fd.lengths, s);
        } catch (const Error& e) {
            fd.geom_error = e.what();
        }
    }
    return fd;
}

HexAngles face_angles(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& f)
{
    return face_data(spec, tri, face, f, false).angles;
}

std::vector<double> curvature_map(const StructureSpec& spec, const Triangulation& tri, const std::vector<double>& f)
{
    if (static_cast<int>(f.size()) != tri.n_boundary)
        fail(Err::PreconditionViolated, "f has the wrong size");
    const int nf = static_cast<int>(tri.faces.size());
    std::vector<HexAngles> angles(nf);
    parallel_for(nf, [&](int i) { angles[i] = face_angles(spec, tri, i, f); });
    std::vector<double> K(tri.n_boundary, 0.0);
    for (int i = 0; i < nf; ++i) {
        for (int r = 0; r < 3; ++r)
            K[tri.faces[i].v[r]] += angles[i][r];
    }
    return K;
}

double dtheta_df_entry(const HexagonGeometry& g, int i, int j)
{
    const int k = 3 - i - j;
    const double l = g.lengths.edge(edge_between(i, j));
    double factor = 1.0;
    switch (g.center_class) {
    case CausalClass::TimeLike: factor = std::tanh(g.h[k]); break;
    case CausalClass::SpaceLike:
        if (std::abs(g.h[k]) < tol::sign)
            fail(Err::SingularHeight, "space-like face center lies on an edge geodesic");
        factor = 1.0 / std::tanh(g.h[k]);
        break;
    case CausalClass::LightLike: {
        // limit of tanh h and coth h from either side of the light cone
        const double x = -minkowski_dot(g.vp[k], g.face_center);
        factor = x < 0.0 ? -1.0 : 1.0;
        break;
    }
    }
    return -factor / (std::sinh(g.partial(j, i)) * std::sinh(l));
}

Eigen::Matrix3d dtheta_df_chain(const FaceData& fd)
{
    const Eigen::Matrix3d dtdl = dtheta_dl(fd.lengths);
    Eigen::Matrix3d dldf = Eigen::Matrix3d::Zero();
    for (int r = 0; r < 3; ++r) {
        dldf(r, r) += fd.edges[r].dl_dfa;
        dldf(r, (r + 1) % 3) += fd.edges[r].dl_dfb;
    }
    return dtdl * dldf;
}

constexpr double kLongEdge = 12.0;

FaceDerivative dtheta_df(const FaceData& fd)
{
    FaceDerivative out;
    const double longest = std::max({fd.lengths.edge(0), fd.lengths.edge(1), fd.lengths.edge(2)});
    if (!fd.geom || longest > kLongEdge) {
        out.m = dtheta_df_chain(fd);
        out.branch = Branch::LengthChain;
        return out;
    }
    const HexagonGeometry& g = *fd.geom;
    switch (g.center_class) {
    case CausalClass::TimeLike: out.branch = Branch::TimeLike; break;
    case CausalClass::SpaceLike: out.branch = Branch::SpaceLike; break;
    case CausalClass::LightLike: out.branch = Branch::LightLike; break;
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i != j)
                out.m(i, j) = dtheta_df_entry(g, i, j);
        }
    }
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        out.m(i, i) = std::cosh(g.lengths.edge(edge_between(i, j))) * out.m(j, i) +
                      std::cosh(g.lengths.edge(edge_between(i, k))) * out.m(k, i);
    }
    return out;
}

FaceDerivative dtheta_df(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& f)
{
    return dtheta_df(face_data(spec, tri, face, f, true));
}

Eigen::Matrix3d face_jacobian_u(const StructureSpec& spec, const FaceData& fd)
{
    Eigen::Matrix3d m = dtheta_df(fd).m;
    for (int c = 0; c < 3; ++c)
        m.col(c) *= dfdu(spec, fd.v[c], fd.f[c]);
    return m;
}

Eigen::Matrix3d face_jacobian_u(const StructureSpec& spec, const Triangulation& tri, int face,
                                const std::vector<double>& f)
{
    return face_jacobian_u(spec, face_data(spec, tri, face, f, true));
}

GlobalJacobian assemble_jacobian(const StructureSpec& spec, const Triangulation& tri, const std::vector<double>& f)
{
    if (static_cast<int>(f.size()) != tri.n_boundary)
        fail(Err::PreconditionViolated, "f has the wrong size");
    const int nf = static_cast<int>(tri.faces.size());
    std::vector<Eigen::Matrix3d> blocks(nf);
    std::vector<Branch> branches(nf);
    parallel_for(nf, [&](int i) {
        const FaceData fd = face_data(spec, tri, i, f, true);
        FaceDerivative d;
        try {
            d = dtheta_df(fd);
        } catch (const Error& e) {
            if (e.code() != Err::SingularHeight)
                rethrow_for_face(e, i);
            d.m = dtheta_df_chain(fd);
            d.branch = Branch::LengthChain;
        }
        for (int c = 0; c < 3; ++c)
            d.m.col(c) *= dfdu(spec, fd.v[c], fd.f[c]);
        blocks[i] = d.m;
        branches[i] = d.branch;
    });
    GlobalJacobian out;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(9 * nf);
    for (int i = 0; i < nf; ++i) {
        const Face& fc = tri.faces[i];
        for (int r = 0; r < 3; ++r) {
            for (int s = 0; s < 3; ++s)
                trip.emplace_back(fc.v[r], fc.v[s], blocks[i](r, s));
        }
        switch (branches[i]) {
        case Branch::TimeLike: ++out.stats.time_like; break;
        case Branch::SpaceLike: ++out.stats.space_like; break;
        case Branch::LightLike: ++out.stats.light_like; break;
        case Branch::LengthChain: ++out.stats.length_chain; break;
        }
    }
    out.sparse.resize(tri.n_boundary, tri.n_boundary);
    out.sparse.setFromTriplets(trip.begin(), trip.end());
    return out;
}

double max_eigenvalue(const Eigen::Matrix3d& m)
{
    const Eigen::Matrix3d s = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(s, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

Definiteness check_negative_definite(const Eigen::MatrixXd& m)
{
    Definiteness out;
    const Eigen::MatrixXd s = 0.5 * (m + m.transpose());
    if (s.size() == 0 || !s.allFinite())
        return out;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
    if (ldlt.info() != Eigen::Success)
        return out;
    const auto d = ldlt.vectorD();
    out.max_pivot = d.maxCoeff();
    const double scale = s.cwiseAbs().maxCoeff();
    out.negative_definite = out.max_pivot < -tol::eig * scale;
    return out;
}

Definiteness check_negative_definite(const Eigen::SparseMatrix<double>& m)
{
    Definiteness out;
    Eigen::SparseMatrix<double> s = 0.5 * (m + Eigen::SparseMatrix<double>(m.transpose()));
    if (s.rows() == 0)
        return out;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(s);
    if (ldlt.info() != Eigen::Success)
        return out;
    const auto d = ldlt.vectorD();
    if (!d.allFinite())
        return out;
    out.max_pivot = d.maxCoeff();
    double scale = 0.0;
    for (int k = 0; k < s.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(s, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    }
    out.negative_definite = out.max_pivot < -tol::eig * scale;
    return out;
}

}  // namespace hexcurv
