#pragma once

#include <array>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "hexcurv/lorentz.hpp"

namespace hexcurv {

// Corners are indexed 0,1,2 for i,j,k.  Edge r joins corners r and r+1,
// so the three edges are ij, jk, ki.
struct HexLengths {
    double l_ij = 0.0;
    double l_jk = 0.0;
    double l_ki = 0.0;

    double edge(int r) const { return r == 0 ? l_ij : (r == 1 ? l_jk : l_ki); }
    // length of the edge opposite corner c
    double opposite(int c) const { return edge((c + 1) % 3); }
};

struct HexAngles {
    double theta_i = 0.0;
    double theta_j = 0.0;
    double theta_k = 0.0;

    double operator[](int c) const { return c == 0 ? theta_i : (c == 1 ? theta_j : theta_k); }
};

struct EdgeSplit {
    double d_ij = 0.0;
    double d_ji = 0.0;
};

struct BoundarySplit {
    double theta_st = 0.0;
    double theta_ts = 0.0;
};

using Splits = std::array<EdgeSplit, 3>;

// d_ab for corners a != b, read from splits ordered (ij, jk, ki).
double partial(const Splits& s, int a, int b);

struct HexagonGeometry {
    HexLengths lengths;
    HexAngles angles;
    Splits splits{};
    std::array<MinkowskiVec, 3> v{};
    std::array<MinkowskiVec, 3> vp{};
    std::array<MinkowskiVec, 3> edge_centers{};  // c_ij, c_jk, c_ki
    MinkowskiVec face_center;
    CausalClass center_class = CausalClass::TimeLike;
    double center_norm = 0.0;  // Lorentz norm^2 of the Euclidean-unit face center
    bool has_distances = false;
    std::array<double, 3> h{};  // h_r is the signed distance to the edge opposite r
    std::array<double, 3> q{};  // q_r is the signed distance to boundary geodesic r
    std::string domain;
    bool sign_ambiguous = false;
    std::optional<std::array<BoundarySplit, 3>> dual;  // arcs at i, j, k
    std::string dual_error;

    // theta_ab: part of the boundary arc at the third corner, measured from v'_a
    double dual_partial(int a, int b) const;
    double partial(int a, int b) const { return hexcurv::partial(splits, a, b); }
};

HexAngles angles_from_lengths(const HexLengths& lengths);
HexLengths lengths_from_angles(const HexAngles& angles);

// d theta_c / d l_r with rows corners i,j,k and columns edges ij,jk,ki
Eigen::Matrix3d dtheta_dl(const HexLengths& lengths);

std::array<MinkowskiVec, 3> embed(const HexLengths& lengths);
std::array<MinkowskiVec, 3> polar(const std::array<MinkowskiVec, 3>& v);

EdgeSplit split_edge(double l, double rho);
double compat_residual(const Splits& s);

MinkowskiVec edge_center(const MinkowskiVec& va, const MinkowskiVec& vb, const EdgeSplit& split);

struct FaceCenter {
    MinkowskiVec c;
    CausalClass cls;
    double norm2;
};
FaceCenter face_center(const std::array<MinkowskiVec, 3>& vp, const std::array<MinkowskiVec, 3>& centers,
                       const Splits& splits);

void signed_distances(HexagonGeometry& g);
std::string classify_domain(const HexagonGeometry& g, bool* ambiguous = nullptr);
std::array<BoundarySplit, 3> dual_splits(const HexagonGeometry& g);

// Full construction; dual splits are attached when they exist.
HexagonGeometry build_hexagon(const HexLengths& lengths, const Splits& splits);
HexagonGeometry build_hexagon_from_ratios(const HexLengths& lengths, const std::array<double, 3>& rho);

struct IdentityCheck {
    std::string lemma;  // time-like, space-like-1, space-like-2, light-like, uncovered
    double max_residual = 0.0;
    int checked = 0;
    bool signs_coherent = true;
    double dual_compat = 0.0;
    double dual_sum = 0.0;
};
IdentityCheck appendix_identities(const HexagonGeometry& g);

}  // namespace hexcurv
