#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hexcurv/conformal.hpp"
#include "hexcurv/hexagon.hpp"
#include "hexcurv/mesh.hpp"

namespace hexcurv {

// Edge r of the face is evaluated from corner r to corner r+1.
struct FaceData {
    int face = -1;
    std::array<int, 3> v{};
    std::array<double, 3> f{};
    std::array<EdgeEval, 3> edges{};
    HexLengths lengths;
    HexAngles angles;
    std::optional<HexagonGeometry> geom;
    std::string geom_error;
};

FaceData face_data(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& f,
                   bool with_geometry);

HexAngles face_angles(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& f);

std::vector<double> curvature_map(const StructureSpec& spec, const Triangulation& tri, const std::vector<double>& f);

enum class Branch { TimeLike, SpaceLike, LightLike, LengthChain };
const char* branch_name(Branch b);

struct FaceDerivative {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    Branch branch = Branch::TimeLike;
};

// d theta / d f for the three corners; off-diagonals from the closed form,
// diagonals from the cosh-weighted off-diagonal identity.  When the face has no
// real splits, or has an edge longer than 12, the derivative is taken through
// the edge lengths instead and the branch is LengthChain.  On a light-like
// center tanh^beta h is replaced by its one-sided limit, the sign of h.
FaceDerivative dtheta_df(const FaceData& fd);
FaceDerivative dtheta_df(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& f);

// Same quantity through d theta/d l times d l/d f.
Eigen::Matrix3d dtheta_df_chain(const FaceData& fd);

// Closed-form off-diagonal entry d theta_i / d f_j (corner indices).
// Throws SingularHeight for a space-like center on an edge geodesic.
double dtheta_df_entry(const HexagonGeometry& g, int i, int j);

Eigen::Matrix3d face_jacobian_u(const StructureSpec& spec, const FaceData& fd);
Eigen::Matrix3d face_jacobian_u(const StructureSpec& spec, const Triangulation& tri, int face,
                                const std::vector<double>& f);

struct JacobianStats {
    int time_like = 0;
    int space_like = 0;
    int light_like = 0;
    int length_chain = 0;
};

struct GlobalJacobian {
    Eigen::SparseMatrix<double> sparse;
    JacobianStats stats;
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(sparse); }
};

GlobalJacobian assemble_jacobian(const StructureSpec& spec, const Triangulation& tri, const std::vector<double>& f);

// Largest eigenvalue of a symmetric 3x3 matrix.
double max_eigenvalue(const Eigen::Matrix3d& m);

struct Definiteness {
    bool negative_definite = false;
    double max_pivot = 0.0;  // largest pivot of the LDL^T factorization of the symmetrized matrix
};
Definiteness check_negative_definite(const Eigen::MatrixXd& m);
Definiteness check_negative_definite(const Eigen::SparseMatrix<double>& m);

}  // namespace hexcurv
