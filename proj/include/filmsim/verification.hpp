#pragma once

#include "filmsim/elliptic.hpp"
#include "filmsim/grid.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace filmsim {

/// Manufactured potential with closed-form derivatives; phi vanishes on the
/// rectangle boundary so the zero-data source solve applies directly.
struct MMSCase {
    std::string name;
    double sigma = 1.0;
    std::function<double(double)> v;  // film profile, zero at z = +-1
    std::function<double(double, double)> phi;
    std::function<double(double, double)> phi_zz;
    std::function<double(double, double)> phi_zr;
    std::function<double(double, double)> phi_rr;
    std::function<double(double, double)> phi_r;
};

/// Source F = -(L phi*) evaluated with the exact derivatives of phi* and the
/// same coefficient assembly the solver uses. No differencing of phi*.
std::vector<double> mms_source(const MMSCase& mc, const RectMesh& mesh);

/// Sample the case's profile onto a grid (endpoints forced to exactly zero).
FilmProfile sample_case_profile(const MMSCase& mc, const Grid1D& grid);

using SolveOp = std::function<PotentialField(const CoefficientField&, const std::vector<double>&,
                                             const RectMesh&)>;

struct ConvergenceResult {
    std::string case_name;
    std::vector<double> h;
    std::vector<double> error;  // max node error per resolution
    double order = 0.0;         // least-squares slope of log(error) vs log(h)
};

/// Run each case through solve_op at every resolution and fit the order.
/// Needs at least three resolutions.
std::vector<ConvergenceResult> convergence_study(const SolveOp& solve_op,
                                                 const std::vector<MMSCase>& cases,
                                                 const std::vector<int>& resolutions);

/// The stock cases: flat and curved profiles, polynomial and trigonometric fields.
std::vector<MMSCase> builtin_mms_cases();

/// Random smooth admissible profile (a few sine modes, exact zero endpoints,
/// max amplitude at most `amplitude`). Deterministic for a given engine state.
FilmProfile random_admissible_profile(std::mt19937& rng, const Grid1D& grid,
                                      double amplitude = 0.5);

} // namespace filmsim
