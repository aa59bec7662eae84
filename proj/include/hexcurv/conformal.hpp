#pragma once

#include <string>
#include <vector>

#include "hexcurv/error.hpp"
#include "hexcurv/mesh.hpp"
#include "hexcurv/structure.hpp"

namespace hexcurv {

// Per-vertex change of variables between f and u.
enum class Chart {
    Identity,  // u = f
    Negated,   // u = -f
    ExpNeg,    // u = -e^{-f}, u < 0
    ExpPos,    // u = e^{-f}, u > 0
    CoshNeg,   // e^f = 1/cosh u, u < 0
    CoshPos,   // e^f = 1/cosh u, u > 0
    SinhNeg,   // e^f = -1/sinh u, u < 0
    SinhPos,   // e^f = 1/sinh u, u > 0
    SinNeg,    // e^f = -1/sin u, u in (-pi/2, 0)
    CosNeg,    // e^f = 1/cos u, u in (-pi/2, 0)
};

const char* chart_name(Chart c);
Chart chart_for(Family fam, int alpha, bool special);
double chart_lo(Chart c);
double chart_hi(Chart c);
bool in_chart(Chart c, double u);
double u_of_f(Chart c, double f);
double f_of_u(Chart c, double u);
double dfdu_chart(Chart c, double f);

struct EdgeEval {
    double cosh_l = 0.0;
    double l = 0.0;
    double rho = 0.0;  // sinh d_ab / sinh d_ba
    double dl_dfa = 0.0;
    double dl_dfb = 0.0;
    bool b_edge = false;
};

// Edge a-b with weights; c is the shift oriented a->b.
EdgeEval eval_edge(Family fam, int alpha_a, int alpha_b, bool special_a, bool special_b, double eta, double fa,
                   double fb, double c = 0.0);

EdgeEval edge_eval(const StructureSpec& spec, const Triangulation& tri, int edge, const std::vector<double>& f);
double edge_length(const StructureSpec& spec, const Triangulation& tri, int edge, const std::vector<double>& f);
double partial_ratio(const StructureSpec& spec, const Triangulation& tri, int edge, const std::vector<double>& f);

std::vector<Chart> charts(const StructureSpec& spec);
std::vector<double> u_from_f(const StructureSpec& spec, const std::vector<double>& f);
std::vector<double> f_from_u(const StructureSpec& spec, const std::vector<double>& u);
double dfdu(const StructureSpec& spec, int vertex, double f);

// One open condition lo < wa*u_a + wb*u_b < hi coming from an edge of a face.
// The weights differ from 1 only for shifted A3-type edges.
struct Constraint {
    int face = -1;
    int edge = -1;
    int a = -1;
    int b = -1;
    double lo = 0.0;
    double hi = 0.0;
    double wa = 1.0;
    double wb = 1.0;
    std::string label;
    double value(const std::vector<double>& u) const { return wa * u[a] + wb * u[b]; }
};

struct Violation {
    int face = -1;
    std::string constraint;
};

struct AdmissibleResult {
    bool ok = true;
    std::vector<Violation> violations;
};

// MixedI type number 1..18 for (alpha_special, alpha_j, alpha_k), j and k unordered.
int mixed1_type(int alpha_special, int alpha_j, int alpha_k);
std::string roman(int n);

struct WeightIssue {
    Err code;
    std::string message;
};
std::vector<WeightIssue> check_weights(const StructureSpec& spec, const Triangulation& tri);
// Throws the first issue found.
void require_weights(const StructureSpec& spec, const Triangulation& tri);

std::vector<Constraint> face_constraints(const StructureSpec& spec, const Triangulation& tri, int face);
std::vector<Constraint> all_constraints(const StructureSpec& spec, const Triangulation& tri);

AdmissibleResult admissible(const StructureSpec& spec, const Triangulation& tri, const std::vector<double>& u);
// Admissibility restricted to the corners of one face.
bool face_admissible(const StructureSpec& spec, const Triangulation& tri, int face, const std::vector<double>& u);

// Whether existence of solutions is known for this structure.
bool existence_proven(const StructureSpec& spec, const Triangulation& tri);

}  // namespace hexcurv
