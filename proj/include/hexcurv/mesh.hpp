#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hexcurv/structure.hpp"

namespace hexcurv {

struct Edge {
    int a = 0;
    int b = 0;
    bool operator==(const Edge&) const = default;
};

// Corner r of a face sits on boundary component v[r]; e[r] joins corners r and r+1.
struct Face {
    std::array<int, 3> v{};
    std::array<int, 3> e{};
    bool operator==(const Face&) const = default;
};

struct Triangulation {
    int n_boundary = 0;
    std::vector<Edge> edges;
    std::vector<Face> faces;
    bool open_edges = false;
    bool operator==(const Triangulation&) const = default;
};

struct Diagnostic {
    int line = 0;  // 0 when not tied to a line
    std::string code;
    std::string message;
};

struct MeshDocument {
    Triangulation tri;
    StructureSpec spec;
    std::vector<Diagnostic> warnings;
};

// Throws Error(SyntaxError / DanglingReference / FamilyConstraint / ...) with
// "line N: ..." in the message; all diagnostics found are listed.
MeshDocument parse_mesh(const std::string& text);
MeshDocument load_mesh(const std::string& path);

std::string serialize_mesh(const Triangulation& tri, const StructureSpec& spec);

struct Corner {
    int face = 0;
    int corner = 0;
    bool operator==(const Corner&) const = default;
};

std::vector<Corner> vertex_star(const Triangulation& tri, int i);

// Structural checks that do not depend on weights; returns warnings, throws on errors.
std::vector<Diagnostic> validate_topology(const Triangulation& tri);

// The smallest example: three boundary components, three edges, two hexagons.
Triangulation pants();

// Random closed-surface-derived triangulation of the sphere with n boundary
// components (n >= 3), built by 1-to-3 splits followed by random edge flips.
Triangulation random_sphere(int n, std::uint64_t seed);

}  // namespace hexcurv
