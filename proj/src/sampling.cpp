#include "hexcurv/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hexcurv/conformal.hpp"
#include "hexcurv/solver.hpp"

namespace hexcurv {

namespace {

constexpr double kChordCap = 4.0;
constexpr double kBox = 2.5;

double uniform(std::mt19937_64& rng, double a, double b)
{
    return std::uniform_real_distribution<double>(a, b)(rng);
}

std::vector<char> random_specials(const Triangulation& tri, std::mt19937_64& rng)
{
    const int n = tri.n_boundary;
    std::vector<std::vector<int>> nbr(n);
    for (const Edge& e : tri.edges) {
        nbr[e.a].push_back(e.b);
        nbr[e.b].push_back(e.a);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<char> sp(n, 0);
    bool any = false;
    for (int v : order) {
        const bool free = std::none_of(nbr[v].begin(), nbr[v].end(), [&](int w) { return sp[w] != 0; });
        if (free && (!any || uniform(rng, 0, 1) < 0.4)) {
            sp[v] = 1;
            any = true;
        }
    }
    return sp;
}

std::vector<double> random_direction(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    std::vector<double> d(n);
    double norm = 0.0;
    for (double& x : d) {
        x = g(rng);
        norm += x * x;
    }
    norm = std::sqrt(norm);
    for (double& x : d)
        x /= norm;
    return d;
}

std::vector<double> along(const std::vector<double>& u, const std::vector<double>& d, double t)
{
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = u[i] + t * d[i];
    return out;
}

}  // namespace

StructureSpec random_spec(Family fam, const Triangulation& tri, std::mt19937_64& rng, bool proven_only)
{
    const int n = tri.n_boundary;
    const int ne = static_cast<int>(tri.edges.size());
    StructureSpec s;
    s.family = fam;
    s.alpha.assign(n, 0);
    s.eta.assign(ne, 1.0);
    s.special.assign(n, 0);
    if (is_mixed(fam))
        s.special = random_specials(tri, rng);

    auto pick_alpha = [&](std::initializer_list<int> choices) {
        std::vector<int> c(choices);
        return c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)];
    };
    switch (base_type(fam)) {
    case 1:
        for (int v = 0; v < n; ++v)
            s.alpha[v] = proven_only ? pick_alpha({0, 1}) : pick_alpha({-1, 0, 1});
        if (fam == Family::MixedI && proven_only) {
            // faces with a special corner must be of type I, II, IV or V
            for (const Edge& e : tri.edges) {
                if (s.special[e.a])
                    s.alpha[e.b] = 0;
                if (s.special[e.b])
                    s.alpha[e.a] = 0;
            }
        }
        for (int e = 0; e < ne; ++e) {
            const int aa = s.alpha[tri.edges[e].a], ab = s.alpha[tri.edges[e].b];
            s.eta[e] = aa == ab && aa != 0 ? uniform(rng, 1.2, 3.0) : uniform(rng, 0.3, 3.0);
        }
        break;
    case 2:
        s.alpha.assign(n, -1);
        for (int e = 0; e < ne; ++e) {
            if (fam == Family::MixedII)
                s.eta[e] = uniform(rng, 1.0, 3.0);
            else
                s.eta[e] = proven_only ? uniform(rng, -0.9, 0.0) : uniform(rng, -0.9, 2.0);
        }
        break;
    default:
        for (int e = 0; e < ne; ++e)
            s.eta[e] = uniform(rng, 0.3, 3.0);
        break;
    }
    return s;
}

double chord_extent(const StructureSpec& spec, const Triangulation& tri, const std::vector<double>& u,
                    const std::vector<double>& d, double cap)
{
    if (admissible(spec, tri, along(u, d, cap)).ok)
        return cap;
    double lo = 0.0, hi = cap;
    for (int it = 0; it < 60 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (admissible(spec, tri, along(u, d, mid)).ok)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

namespace {

// Largest t with u + t d inside the box of half-width kBox around c.
double box_extent(const std::vector<double>& c, const std::vector<double>& u, const std::vector<double>& d)
{
    double t = kChordCap;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (d[i] > 0.0)
            t = std::min(t, (c[i] + kBox - u[i]) / d[i]);
        else if (d[i] < 0.0)
            t = std::min(t, (c[i] - kBox - u[i]) / d[i]);
    }
    return std::max(t, 0.0);
}

// The walk stays in a box around its start so that samples keep moderate lengths.
void walk(const StructureSpec& spec, const Triangulation& tri, std::mt19937_64& rng, std::vector<double>& u, int steps)
{
    const std::vector<double> c = u;
    for (int s = 0; s < steps; ++s) {
        const auto d = random_direction(tri.n_boundary, rng);
        std::vector<double> nd(d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            nd[i] = -d[i];
        const double tp = chord_extent(spec, tri, u, d, box_extent(c, u, d));
        const double tm = chord_extent(spec, tri, u, nd, box_extent(c, u, nd));
        // stay off the exact boundary
        const double t = uniform(rng, -0.98 * tm, 0.98 * tp);
        u = along(u, d, t);
    }
}

}  // namespace

std::vector<double> random_admissible_u(const StructureSpec& spec, const Triangulation& tri, std::mt19937_64& rng,
                                        int steps)
{
    std::vector<double> u = default_initial(spec, tri);
    walk(spec, tri, rng, u, steps);
    return u;
}

std::vector<std::vector<double>> admissible_walk(const StructureSpec& spec, const Triangulation& tri,
                                                 std::mt19937_64& rng, int count, int thin)
{
    std::vector<double> u = default_initial(spec, tri);
    walk(spec, tri, rng, u, 3 * thin);
    std::vector<std::vector<double>> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        walk(spec, tri, rng, u, thin);
        out.push_back(u);
    }
    return out;
}

std::vector<double> near_boundary_u(const StructureSpec& spec, const Triangulation& tri, std::mt19937_64& rng,
                                    double dist)
{
    const auto u = random_admissible_u(spec, tri, rng);
    for (int attempt = 0; attempt < 50; ++attempt) {
        const auto d = random_direction(tri.n_boundary, rng);
        const double t = chord_extent(spec, tri, u, d, 2 * kChordCap);
        if (t < 2 * kChordCap && t > 2 * dist)
            return along(u, d, t - dist);
    }
    return u;
}

}  // namespace hexcurv
