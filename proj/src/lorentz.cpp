#include "hexcurv/lorentz.hpp"

#include <cmath>

#include <fmt/format.h>

#include "hexcurv/error.hpp"
#include "hexcurv/tolerances.hpp"

namespace hexcurv {

const char* causal_name(CausalClass c)
{
    switch (c) {
    case CausalClass::TimeLike: return "TimeLike";
    case CausalClass::SpaceLike: return "SpaceLike";
    case CausalClass::LightLike: return "LightLike";
    }
    return "Unknown";
}

double minkowski_dot(const MinkowskiVec& a, const MinkowskiVec& b)
{
    return a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3;
}

MinkowskiVec minkowski_cross(const MinkowskiVec& a, const MinkowskiVec& b)
{
    return {a.x2 * b.x3 - a.x3 * b.x2,
            a.x3 * b.x1 - a.x1 * b.x3,
            -(a.x1 * b.x2 - a.x2 * b.x1)};
}

double euclid_norm(const MinkowskiVec& a)
{
    return std::sqrt(a.x1 * a.x1 + a.x2 * a.x2 + a.x3 * a.x3);
}

bool is_finite(const MinkowskiVec& a)
{
    return std::isfinite(a.x1) && std::isfinite(a.x2) && std::isfinite(a.x3);
}

CausalClass causal_class(const MinkowskiVec& a)
{
    const double n = minkowski_dot(a, a);
    if (n > tol::causal)
        return CausalClass::SpaceLike;
    if (n < -tol::causal)
        return CausalClass::TimeLike;
    return CausalClass::LightLike;
}

MinkowskiVec normalize_time_like(const MinkowskiVec& a)
{
    const double n = minkowski_dot(a, a);
    if (!(n < 0.0))
        fail(Err::PreconditionViolated, "vector is not time-like: " + to_string(a));
    MinkowskiVec r = a / std::sqrt(-n);
    return r.x3 < 0.0 ? -r : r;
}

MinkowskiVec normalize_space_like(const MinkowskiVec& a)
{
    const double n = minkowski_dot(a, a);
    if (!(n > 0.0))
        fail(Err::PreconditionViolated, "vector is not space-like: " + to_string(a));
    return a / std::sqrt(n);
}

double dist_point_to_geodesic(const MinkowskiVec& y, const MinkowskiVec& z)
{
    if (!is_finite(y) || !is_finite(z))
        fail(Err::PreconditionViolated, "non-finite input");
    if (std::abs(minkowski_dot(y, y) + 1.0) > tol::norm || y.x3 <= 0.0)
        fail(Err::PreconditionViolated, "y must lie on the upper hyperboloid sheet");
    if (std::abs(minkowski_dot(z, z) - 1.0) > tol::norm)
        fail(Err::PreconditionViolated, "z must be a space-like unit vector");
    return std::asinh(-minkowski_dot(y, z));
}

MinkowskiVec plane_intersection(const MinkowskiVec& p1, const MinkowskiVec& p2,
                                const MinkowskiVec& q1, const MinkowskiVec& q2)
{
    const MinkowskiVec np = minkowski_cross(p1, p2);
    const MinkowskiVec nq = minkowski_cross(q1, q2);
    if (euclid_norm(np) <= tol::rank * euclid_norm(p1) * euclid_norm(p2) || euclid_norm(np) == 0.0)
        fail(Err::DegenerateSpan, "first pair is linearly dependent");
    if (euclid_norm(nq) <= tol::rank * euclid_norm(q1) * euclid_norm(q2) || euclid_norm(nq) == 0.0)
        fail(Err::DegenerateSpan, "second pair is linearly dependent");
    const MinkowskiVec v = minkowski_cross(np, nq);
    if (euclid_norm(v) <= tol::rank * euclid_norm(np) * euclid_norm(nq))
        fail(Err::CoincidentPlanes, "the two subspaces coincide");
    return v;
}

std::string to_string(const MinkowskiVec& a)
{
    return fmt::format("({:.17g}, {:.17g}, {:.17g})", a.x1, a.x2, a.x3);
}

}  // namespace hexcurv
