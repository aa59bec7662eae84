#include <string>

#include <doctest.h>

#include "helpers.hpp"
#include "hexcurv/mesh.hpp"

using namespace hexcurv;

#ifndef HEXCURV_TEST_DATA
#define HEXCURV_TEST_DATA "tests/data"
#endif

namespace {

std::string data(const char* name)
{
    return std::string(HEXCURV_TEST_DATA) + "/" + name;
}

}  // namespace

TEST_CASE("pair of pants fixture")
{
    const MeshDocument doc = load_mesh(data("pants.mesh"));
    CHECK(doc.tri == pants());
    CHECK(doc.spec.family == Family::A1);
    CHECK(doc.warnings.empty());
    for (int v = 0; v < 3; ++v)
        CHECK(vertex_star(doc.tri, v).size() == 2);
}

TEST_CASE("serialization round-trips")
{
    const MeshDocument doc = load_mesh(data("pants.mesh"));
    const MeshDocument back = parse_mesh(serialize_mesh(doc.tri, doc.spec));
    CHECK(back.tri == doc.tri);
    CHECK(back.spec.eta == doc.spec.eta);
    CHECK(back.spec.alpha == doc.spec.alpha);
}

TEST_CASE("bad files are diagnosed")
{
    CHECK(error_code([] { load_mesh(data("dangling.mesh")); }) == Err::DanglingReference);
    CHECK(error_code([] { load_mesh(data("mixed3_two_special.mesh")); }) == Err::FamilyConstraint);
    CHECK(error_code([] { parse_mesh("hexcurv-mesh 2\n"); }) == Err::SyntaxError);
    CHECK(error_code([] { parse_mesh("hexcurv-mesh 1\nv 0 alpha=2\n"); }) == Err::SyntaxError);
    CHECK(error_code([] { load_mesh(data("missing.mesh")); }) == Err::PreconditionViolated);
}

TEST_CASE("self-adjacent faces are allowed with a warning")
{
    const MeshDocument doc = load_mesh(data("self_adjacent.mesh"));
    CHECK_FALSE(doc.warnings.empty());
    int corners = 0;
    for (const Corner& c : vertex_star(doc.tri, 0))
        corners += c.face == 0;
    CHECK(corners == 2);
}

TEST_CASE("random sphere triangulations are closed")
{
    for (int n : {3, 4, 10, 30}) {
        const Triangulation t = random_sphere(n, 17 + n);
        CHECK(t.n_boundary == n);
        CHECK(t.edges.size() == static_cast<std::size_t>(3 * n - 6));
        CHECK(t.faces.size() == static_cast<std::size_t>(2 * n - 4));
        CHECK_NOTHROW(validate_topology(t));
    }
    CHECK(random_sphere(12, 5) == random_sphere(12, 5));
    CHECK(error_code([] { random_sphere(2, 1); }) == Err::PreconditionViolated);
}
