#pragma once

#include <random>
#include <vector>

#include "hexcurv/mesh.hpp"
#include "hexcurv/structure.hpp"

namespace hexcurv {

// Random weights valid for the family on this triangulation.  With
// proven_only the weights stay inside the ranges where existence is known.
StructureSpec random_spec(Family fam, const Triangulation& tri, std::mt19937_64& rng, bool proven_only = false);

// Hit-and-run walk inside the admissible polytope, started from default_initial.
std::vector<double> random_admissible_u(const StructureSpec& spec, const Triangulation& tri, std::mt19937_64& rng,
                                        int steps = 12);

// count points of one hit-and-run walk, keeping every thin-th step.
std::vector<std::vector<double>> admissible_walk(const StructureSpec& spec, const Triangulation& tri,
                                                 std::mt19937_64& rng, int count, int thin = 3);

// Point at distance dist (along a random chord) from the boundary of the admissible polytope.
std::vector<double> near_boundary_u(const StructureSpec& spec, const Triangulation& tri, std::mt19937_64& rng,
                                    double dist = 1e-4);

// Largest t in [0, cap] with u + t d admissible, found by bisection.
double chord_extent(const StructureSpec& spec, const Triangulation& tri, const std::vector<double>& u,
                    const std::vector<double>& d, double cap);

}  // namespace hexcurv
