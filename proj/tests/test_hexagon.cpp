#include <cmath>
#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "hexcurv/hexagon.hpp"

using namespace hexcurv;

namespace {

// Right-angled hexagon law, written out independently of the library.
double opposite_side(double a, double b, double c)
{
    return std::acosh((std::cosh(b) * std::cosh(c) + std::cosh(a)) / (std::sinh(b) * std::sinh(c)));
}

}  // namespace

TEST_CASE("regular hexagon with cosh l = 2 is its own dual")
{
    const double l = std::acosh(2.0);
    const HexAngles th = angles_from_lengths({l, l, l});
    CHECK(std::abs(th.theta_i - l) < 1e-12);
    CHECK(std::abs(th.theta_j - l) < 1e-12);
    CHECK(std::abs(th.theta_k - l) < 1e-12);
}

TEST_CASE("angles follow the hexagon law and invert")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(0.2, 4.0);
    for (int n = 0; n < 200; ++n) {
        const HexLengths L{d(rng), d(rng), d(rng)};
        const HexAngles th = angles_from_lengths(L);
        CHECK(th.theta_i == doctest::Approx(opposite_side(L.l_jk, L.l_ij, L.l_ki)).epsilon(1e-12));
        CHECK(th.theta_j == doctest::Approx(opposite_side(L.l_ki, L.l_jk, L.l_ij)).epsilon(1e-12));
        CHECK(th.theta_k == doctest::Approx(opposite_side(L.l_ij, L.l_ki, L.l_jk)).epsilon(1e-12));
        const HexLengths back = lengths_from_angles(th);
        CHECK(back.l_ij == doctest::Approx(L.l_ij).epsilon(1e-9));
        CHECK(back.l_jk == doctest::Approx(L.l_jk).epsilon(1e-9));
        CHECK(back.l_ki == doctest::Approx(L.l_ki).epsilon(1e-9));
    }
}

TEST_CASE("dtheta/dl matches central differences")
{
    const HexLengths L{0.8, 1.7, 1.1};
    const Eigen::Matrix3d m = dtheta_dl(L);
    const double h = 1e-6;
    for (int e = 0; e < 3; ++e) {
        HexLengths p = L, q = L;
        double* lp[] = {&p.l_ij, &p.l_jk, &p.l_ki};
        double* lq[] = {&q.l_ij, &q.l_jk, &q.l_ki};
        *lp[e] += h;
        *lq[e] -= h;
        const HexAngles ap = angles_from_lengths(p), aq = angles_from_lengths(q);
        for (int c = 0; c < 3; ++c)
            CHECK(m(c, e) == doctest::Approx((ap[c] - aq[c]) / (2 * h)).epsilon(1e-7));
    }
}

TEST_CASE("embedding reproduces the Gram matrix and polar vectors are dual")
{
    const HexLengths L{1.2, 0.5, 2.3};
    const auto v = embed(L);
    const auto vp = polar(v);
    for (int a = 0; a < 3; ++a) {
        CHECK(minkowski_dot(v[a], v[a]) == doctest::Approx(1.0).epsilon(1e-12));
        for (int b = 0; b < 3; ++b) {
            if (a == b)
                continue;
            const int r = (b - a + 3) % 3 == 1 ? a : b;  // edge joining a and b
            CHECK(minkowski_dot(v[a], v[b]) == doctest::Approx(-std::cosh(L.edge(r))).epsilon(1e-12));
            CHECK(std::abs(minkowski_dot(vp[a], v[b])) < 1e-11);
        }
    }
}

TEST_CASE("edge splits sum to the length and carry the ratio")
{
    for (double rho : {0.3, 1.0, 4.0, -0.05}) {
        const double l = 1.7;
        const EdgeSplit s = split_edge(l, rho);
        CHECK(s.d_ij + s.d_ji == doctest::Approx(l).epsilon(1e-12));
        CHECK(std::sinh(s.d_ij) / std::sinh(s.d_ji) == doctest::Approx(rho).epsilon(1e-10));
    }
    // a negative ratio of modulus at least e^-l has no real split
    CHECK(error_code([] { split_edge(1.0, -0.5); }) == Err::InconsistentRatio);
}

TEST_CASE("regular hexagon classification")
{
    const double l = 1.3169579;
    const HexagonGeometry g = build_hexagon_from_ratios({l, l, l}, {1.0, 1.0, 1.0});
    CHECK(g.center_class == CausalClass::TimeLike);
    CHECK(g.domain == "D13");
    CHECK(std::abs(compat_residual(g.splits)) < 1e-14);
    REQUIRE(g.dual.has_value());
    for (int r = 0; r < 3; ++r)
        CHECK((*g.dual)[r].theta_st + (*g.dual)[r].theta_ts == doctest::Approx(g.angles[r]).epsilon(1e-12));
    const IdentityCheck id = appendix_identities(g);
    CHECK(id.lemma == "time-like");
    CHECK(id.max_residual < 1e-10);
    CHECK(id.signs_coherent);
}

TEST_CASE("degenerate lengths are rejected")
{
    CHECK(error_code([] { angles_from_lengths({0.0, 1.0, 1.0}); }) == Err::DegenerateHexagon);
}
