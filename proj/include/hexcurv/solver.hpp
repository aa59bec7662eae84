#pragma once

#include <string>
#include <vector>

#include "hexcurv/conformal.hpp"
#include "hexcurv/error.hpp"
#include "hexcurv/mesh.hpp"

namespace hexcurv {

enum class Initial { UserSupplied, FamilyDefault };

struct SolveOptions {
    double tol_K = 1e-10;
    int max_iter = 100;
    double damping = 0.5;
    int max_halvings = 60;
    Initial initial = Initial::FamilyDefault;
    std::vector<double> u0;  // used with UserSupplied
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> trajectory;  // residual before each step and after the last one
    int boundary_hits = 0;
    int length_chain_faces = 0;  // faces whose Jacobian went through edge lengths
    bool existence_unproven = false;
    std::string diagnostic;
};

struct SolveResult {
    std::vector<double> u;
    std::vector<double> f;
    SolveReport report;
};

class NotConvergedError : public Error {
public:
    NotConvergedError(const std::string& what, SolveResult best)
        : Error(Err::NotConverged, what), best_(std::move(best))
    {
    }
    const SolveResult& best() const { return best_; }

private:
    SolveResult best_;
};

SolveResult solve_prescribed_curvature(const StructureSpec& spec, const Triangulation& tri,
                                       const std::vector<double>& K_target, const SolveOptions& opts = {});

std::vector<double> default_initial(const StructureSpec& spec, const Triangulation& tri);

// Line integral of theta . du over the straight segment, restricted to one face.
double energy_face(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& u_from,
                   const std::vector<double>& u_to);

extern const char* const kUnprovenNote;

}  // namespace hexcurv
