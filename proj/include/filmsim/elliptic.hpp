#pragma once

#include "filmsim/grid.hpp"

#include <vector>

namespace filmsim {

/// Profiles closer than this to either wall make the transformed operator degenerate;
/// assembly and force evaluation refuse them with DegenerateProfileError.
inline constexpr double kDegenerateMargin = 1e-3;

/// Node-wise coefficients of the transformed operator on the reference rectangle,
///   L w = c_zz w_zz + c_zr w_zr + c_rr w_rr + c_r w_r,
/// together with its divergence-form data div(A grad w) + d2 w_r where
/// A = [[a11, a12], [a12, a22]]. The identity det A = sigma^2 holds node-wise.
struct CoefficientField {
    double sigma = 0.0;
    int n_z = 0, n_r = 0;
    std::vector<double> c_zz, c_zr, c_rr, c_r;
    std::vector<double> a11, a12, a22, d2;
    bool z_symmetric = false;  // assembled from a bitwise even profile

    int index(int i, int j) const { return i * n_r + j; }
};

struct EllipticityReport {
    double alpha_min = 0.0;    // smallest eigenvalue of A over all nodes
    double alpha_max = 0.0;    // largest eigenvalue of A over all nodes
    double det_residual = 0.0; // max |det A - sigma^2|
};

struct SolverConfig {
    double tol = 1e-10;  // backward-error bound: |Ax-b| / (|A||x| + |b|) in the max norm
    int max_refine = 3;  // iterative refinement passes before giving up
};

/// Discrete potential on the reference rectangle.
struct PotentialField {
    int n_z = 0, n_r = 0;
    double h_r = 0.0;
    std::vector<double> phi;  // row-major by z then r
    double residual = 0.0;    // achieved normwise backward error

    double operator()(int i, int j) const { return phi[i * n_r + j]; }
    /// Largest overshoot outside [0,1]; zero when the discrete maximum principle holds.
    double max_principle_violation() const;
};

CoefficientField assemble_coefficients(const FilmProfile& v, double sigma, const RectMesh& mesh);

EllipticityReport check_ellipticity(const CoefficientField& c);

/// Solve L phi = 0 with Dirichlet data ln(r)/ln(2) on the whole boundary.
PotentialField solve_potential(const FilmProfile& v, double sigma, const RectMesh& mesh,
                               const SolverConfig& cfg = {});

/// Solve -L phi = F with homogeneous Dirichlet data (used by manufactured solutions).
/// F is given at every node; boundary entries are ignored.
PotentialField solve_with_source(const CoefficientField& c, const std::vector<double>& F,
                                 const RectMesh& mesh, const SolverConfig& cfg = {});

/// One-sided second order d_r phi at the film edge r = 1, one value per z node.
std::vector<double> trace_dr_at_film(const PotentialField& phi);

} // namespace filmsim
