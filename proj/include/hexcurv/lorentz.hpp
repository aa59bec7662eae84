#pragma once

#include <array>
#include <string>

namespace hexcurv {

// Vector of R^{2,1} with quadratic form x1^2 + x2^2 - x3^2.
struct MinkowskiVec {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    MinkowskiVec operator+(const MinkowskiVec& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
    MinkowskiVec operator-(const MinkowskiVec& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
    MinkowskiVec operator-() const { return {-x1, -x2, -x3}; }
    MinkowskiVec operator*(double s) const { return {x1 * s, x2 * s, x3 * s}; }
    MinkowskiVec operator/(double s) const { return {x1 / s, x2 / s, x3 / s}; }
    bool operator==(const MinkowskiVec&) const = default;
};

inline MinkowskiVec operator*(double s, const MinkowskiVec& v) { return v * s; }

enum class CausalClass { TimeLike, SpaceLike, LightLike };

const char* causal_name(CausalClass c);

double minkowski_dot(const MinkowskiVec& a, const MinkowskiVec& b);
MinkowskiVec minkowski_cross(const MinkowskiVec& a, const MinkowskiVec& b);

double euclid_norm(const MinkowskiVec& a);
bool is_finite(const MinkowskiVec& a);

CausalClass causal_class(const MinkowskiVec& a);

// Rescales to x*x = -1 with x3 > 0 (time-like) or x*x = +1 (space-like).
MinkowskiVec normalize_time_like(const MinkowskiVec& a);
MinkowskiVec normalize_space_like(const MinkowskiVec& a);

// Signed distance s with sinh s = -(y*z) from the hyperboloid point y to the
// geodesic z^perp.
double dist_point_to_geodesic(const MinkowskiVec& y, const MinkowskiVec& z);

// Spanning vector of Span(p1,p2) intersected with Span(q1,q2).
MinkowskiVec plane_intersection(const MinkowskiVec& p1, const MinkowskiVec& p2,
                                const MinkowskiVec& q1, const MinkowskiVec& q2);

std::string to_string(const MinkowskiVec& a);

}  // namespace hexcurv
