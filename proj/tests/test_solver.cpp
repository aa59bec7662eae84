#include <cmath>
#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "hexcurv/curvature.hpp"
#include "hexcurv/sampling.hpp"
#include "hexcurv/solver.hpp"

using namespace hexcurv;

TEST_CASE("solver recovers the conformal factor that produced K")
{
    for (Family fam : {Family::A1, Family::A2, Family::A3}) {
        CAPTURE(family_name(fam));
        const Triangulation tri = random_sphere(10, 2);
        std::mt19937_64 rng(40 + static_cast<int>(fam));
        const StructureSpec spec = random_spec(fam, tri, rng);
        const auto f0 = f_from_u(spec, random_admissible_u(spec, tri, rng));
        const auto K = curvature_map(spec, tri, f0);
        const SolveResult r = solve_prescribed_curvature(spec, tri, K);
        CHECK(r.report.converged);
        CHECK(r.report.residual <= 1e-10);
        for (int i = 0; i < tri.n_boundary; ++i)
            CHECK(std::abs(r.f[i] - f0[i]) < 1e-8);
        // residuals decrease along the trajectory
        const auto& t = r.report.trajectory;
        for (std::size_t k = 1; k < t.size(); ++k)
            CHECK(t[k] < t[k - 1]);
        // quadratic tail of Newton's method
        for (std::size_t k = t.size() >= 4 ? t.size() - 3 : 1; k < t.size(); ++k) {
            if (t[k - 1] > 1e-7)
                CHECK(t[k] <= 1e6 * t[k - 1] * t[k - 1]);
        }
    }
}

TEST_CASE("solver preconditions and failure report")
{
    const Triangulation tri = pants();
    StructureSpec spec;
    spec.alpha = {0, 0, 0};
    spec.eta = {1.5, 1.5, 1.5};
    spec.special = {0, 0, 0};
    CHECK(error_code([&] { solve_prescribed_curvature(spec, tri, {1.0, -1.0, 1.0}); }) ==
          Err::PreconditionViolated);
    SolveOptions opts;
    opts.max_iter = 1;
    try {
        solve_prescribed_curvature(spec, tri, {2.5, 3.0, 3.5}, opts);
        FAIL("expected NotConverged");
    } catch (const NotConvergedError& e) {
        CHECK(e.code() == Err::NotConverged);
        CHECK(e.best().report.iterations == 1);
        CHECK(e.best().report.trajectory.size() == 2);
    }
    opts = {};
    opts.initial = Initial::UserSupplied;
    opts.u0 = {-10.0, -10.0, -10.0};
    CHECK(error_code([&] { solve_prescribed_curvature(spec, tri, {2.5, 3.0, 3.5}, opts); }) == Err::NotAdmissible);
}

TEST_CASE("unproven structures carry the diagnostic")
{
    const Triangulation tri = pants();
    StructureSpec spec;
    spec.alpha = {0, -1, 0};
    spec.eta = {1.5, 1.5, 1.5};
    spec.special = {0, 0, 0};
    const auto f0 = f_from_u(spec, default_initial(spec, tri));
    const SolveResult r = solve_prescribed_curvature(spec, tri, curvature_map(spec, tri, f0));
    CHECK(r.report.existence_unproven);
    CHECK(r.report.diagnostic == kUnprovenNote);
}

TEST_CASE("energy of a face is independent of the path")
{
    const Triangulation tri = pants();
    std::mt19937_64 rng(55);
    const StructureSpec spec = random_spec(Family::A3, tri, rng);
    const auto a = random_admissible_u(spec, tri, rng);
    const auto b = random_admissible_u(spec, tri, rng);
    const auto c = random_admissible_u(spec, tri, rng);
    const double direct = energy_face(spec, tri, 0, a, b);
    const double around = energy_face(spec, tri, 0, a, c) + energy_face(spec, tri, 0, c, b);
    CHECK(direct == doctest::Approx(around).epsilon(1e-9));
    CHECK(energy_face(spec, tri, 0, a, a) == 0.0);
}

TEST_CASE("directional derivative of the energy decreases along a segment")
{
    const Triangulation tri = pants();
    std::mt19937_64 rng(77);
    const StructureSpec spec = random_spec(Family::A1, tri, rng, true);
    const auto a = random_admissible_u(spec, tri, rng);
    const auto b = random_admissible_u(spec, tri, rng);
    double prev = 0.0;
    for (int k = 0; k <= 10; ++k) {
        const double t = k / 10.0;
        std::vector<double> u(3);
        for (int i = 0; i < 3; ++i)
            u[i] = a[i] + t * (b[i] - a[i]);
        const auto K = curvature_map(spec, tri, f_from_u(spec, u));
        double slope = 0.0;
        for (int i = 0; i < 3; ++i)
            slope += K[i] * (b[i] - a[i]);
        if (k > 0)
            CHECK(slope < prev + 1e-12);
        prev = slope;
    }
}
