#pragma once

#include "filmsim/elliptic.hpp"
#include "filmsim/grid.hpp"

#include <vector>

namespace filmsim {

/// Right-hand side of the film equation split into its two ingredients.
struct ForceProfile {
    double lambda = 0.0;
    std::vector<double> g;    // nonnegative electrostatic load per node
    std::vector<double> rhs;  // -1/(u+1) + lambda * g
};

/// Electrostatic load g_i = (1 + sigma^2 uz_i^2)^{3/2} trace_i^2 / (1 - u_i)^2,
/// where trace is the film-edge normal derivative of the transformed potential.
/// The 1/(1-u)^2 factor converts that derivative back to the physical domain.
/// Only the g component of the result is filled.
ForceProfile electrostatic_force(const FilmProfile& v, const PotentialField& phi, double sigma);

/// Completes a ForceProfile: rhs = -1/(u+1) + lambda * g. With lambda = 0 the
/// g component of `g` may be empty (no potential solve happened).
ForceProfile full_rhs(const FilmProfile& v, const ForceProfile& g, double lambda);

} // namespace filmsim
