#pragma once

#include <vector>

namespace filmsim {

// One-sided second order stencils, shared so mirrored evaluations run through the
// same expression tree and reflection symmetry survives in floating point.
namespace stencil {
inline double one_sided_first(double f0, double f1, double f2, double h) {
    return ((3.0 * f0 - 4.0 * f1) + f2) / (2.0 * h);
}
inline double one_sided_second(double f0, double f1, double f2, double f3, double h) {
    return ((2.0 * f0 - 5.0 * f1) + (4.0 * f2 - f3)) / (h * h);
}
} // namespace stencil

/// Uniform grid on [-1,1] with an odd node count, node 0 at -1 and the last node at +1.
/// Nodes are stored exactly antisymmetric: z[n-1-i] == -z[i] bit for bit.
struct Grid1D {
    int n = 0;
    double h = 0.0;
    std::vector<double> z;
};

Grid1D build_grid1d(int n_z);

/// Tensor mesh on the reference rectangle [-1,1] x [1,2]; z nodes shared with the film grid.
struct RectMesh {
    Grid1D zgrid;
    int n_r = 0;
    double h_r = 0.0;
    std::vector<double> r;

    int n_z() const { return zgrid.n; }
    int size() const { return zgrid.n * n_r; }
    // Row-major by z then r; matches the CSV export order.
    int index(int i, int j) const { return i * n_r + j; }
    bool boundary(int i, int j) const {
        return i == 0 || i == zgrid.n - 1 || j == 0 || j == n_r - 1;
    }
};

RectMesh build_rect_mesh(const Grid1D& zgrid, int n_r);

/// Film displacement samples with cached first and second differences.
/// Endpoints must be exactly zero; caches use central stencils inside and
/// one-sided second order stencils at the ends.
class FilmProfile {
public:
    FilmProfile(Grid1D grid, std::vector<double> values);

    const Grid1D& grid() const { return grid_; }
    const std::vector<double>& u() const { return u_; }
    const std::vector<double>& uz() const { return uz_; }
    const std::vector<double>& uzz() const { return uzz_; }

    int n() const { return grid_.n; }
    double min_value() const;
    double max_value() const;

    /// Strict admissibility: -1 < u_i < 1 at every node.
    bool admissible() const;

    /// True when u[i] == u[n-1-i] exactly; evolution preserves this bitwise.
    bool even_bitwise() const { return even_; }

private:
    Grid1D grid_;
    std::vector<double> u_, uz_, uzz_;
    bool even_ = false;
};

/// Reference-to-physical radius map r = 2 v(z) + r_ref (1 - v(z)).
double map_to_physical(const FilmProfile& v, double z, double r_ref);
/// Physical-to-reference radius map r_ref = (r - 2 v(z)) / (1 - v(z)).
double map_to_reference(const FilmProfile& v, double z, double r);

/// Piecewise-linear sample of a profile at arbitrary z in [-1,1]; exact at nodes.
double eval_profile(const FilmProfile& v, double z);

} // namespace filmsim
