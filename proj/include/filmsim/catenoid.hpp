#pragma once

#include "filmsim/grid.hpp"

#include <optional>
#include <utility>

namespace filmsim {

/// Stationary profile u(z) = cosh(c z)/cosh(c) - 1 with aspect ratio sigma = cosh(c)/c.
struct Catenoid {
    double c = 0.0;
    double sigma = 0.0;
    double throat = 0.0;  // min(u) + 1 = 1/cosh(c)
};

/// Root of c tanh(c) = 1, the argmin of cosh(c)/c.
double catenoid_c_star();

/// Smallest aspect ratio admitting a catenoid, cosh(c*)/c* (about 1.50888).
double sigma_min();

/// Threshold commonly quoted in the literature for this geometry; kept for reporting
/// next to the sharper sigma_min() actually used by the solver.
inline double sigma_crit_literature() { return 1.2; }

/// Both catenoid parameters for sigma > sigma_min(): c_small <= c* <= c_large,
/// each satisfying |sigma c - cosh c| <= 1e-12 cosh(c). Empty below sigma_min();
/// the double root at equality.
std::optional<std::pair<Catenoid, Catenoid>> catenoid_roots(double sigma);

/// Sample a catenoid on a grid. Endpoints snap to exactly zero and values are
/// mirrored so the profile is even bit for bit.
FilmProfile eval_catenoid(const Catenoid& cat, const Grid1D& grid);

} // namespace filmsim
