#pragma once

#include "filmsim/catenoid.hpp"
#include "filmsim/elliptic.hpp"
#include "filmsim/force.hpp"
#include "filmsim/grid.hpp"

#include <optional>
#include <vector>

namespace filmsim {

/// One sampled row of the evolution time series.
struct Diagnostics {
    double t = 0.0;
    double E = 0.0;
    double dE_dt = 0.0;
    double min_u = 0.0;
    double max_u = 0.0;
    double norm_proxy = 0.0;
    double symmetry_defect = 0.0;
    std::optional<double> flux_lhs;
    std::optional<double> flux_rhs;
};

/// Derived constants controlling loss of existence at a given aspect ratio.
struct CriticalData {
    double sigma = 0.0;
    double c = 0.0;            // catenoid parameter, smaller branch
    double C15 = 0.0;          // film flux of the catenoid potential
    double C16 = 0.0;          // cosh(c) = 1/(min u_cat + 1)
    double lambda_crit = 0.0;  // above this the energy argument forces breakdown
    double lambda = 0.0;       // the lambda the next two entries were evaluated at
    double C17 = 0.0;          // energy decay rate at that lambda (positive past critical)
    double T_max_bound = 0.0;  // finite-time bound, +inf when lambda <= lambda_crit
    int resolution = 0;        // mesh used for C15
};

/// Trapezoid film energy, -integral of ln(u+1); bounded below by -2 ln 2.
double energy(const FilmProfile& u);

/// Trapezoid of -du_dt/(u+1) for a caller-supplied time derivative.
double energy_rate(const FilmProfile& u, const std::vector<double>& du_dt);

/// Time derivative predicted by the film equation itself, G(u) - B(u)u.
std::vector<double> pde_time_derivative(const FilmProfile& u, double sigma,
                                        const ForceProfile& f);

/// max|u| + max|uz| + (sum |uzz|^q h)^{1/q}; the blow-up monitor.
double norm_proxy(const FilmProfile& u, double q);

/// max over nodes of |u(z) - u(-z)|, paired exactly.
double symmetry_defect(const FilmProfile& u);

struct FluxIdentity {
    double lhs = 0.0;       // weighted film integral of the edge field
    double rhs = 0.0;       // outer boundary flux (top plus both sides)
    double residual = 0.0;  // |lhs - rhs|
};

/// Discrete Gauss check on the transformed potential: the film-edge flux must
/// balance the flux through the cylinder and the two end rings.
FluxIdentity flux_identity(const FilmProfile& u, const PotentialField& phi, double sigma);

/// lhs = integral of arctan(sigma uz) sigma uz, rhs = (pi/4) integral of
/// sqrt(1 + (sigma uz)^2) minus pi; lhs >= rhs for every admissible profile.
struct ArctanBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

ArctanBound arctan_lower_bound_check(const FilmProfile& u, double sigma);

/// Film flux of the catenoid potential at the given square resolution (n_z = n_r).
double c15(double sigma, int resolution, const SolverConfig& cfg = {});

/// All critical constants at one sigma, with C17 and the time bound evaluated at lambda.
CriticalData critical_data(double sigma, double lambda, int resolution,
                           const SolverConfig& cfg = {});

/// Shorthand for critical_data(...).lambda_crit.
double lambda_crit(double sigma, int resolution, const SolverConfig& cfg = {});

} // namespace filmsim
