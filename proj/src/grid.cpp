#include "filmsim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace filmsim {

Grid1D build_grid1d(int n_z) {
    if (n_z < 5 || n_z % 2 == 0)
        throw std::invalid_argument("grid needs an odd node count >= 5, got " + std::to_string(n_z));

    Grid1D g;
    g.n = n_z;
    g.h = 2.0 / (n_z - 1);
    g.z.resize(n_z);
    // Fill the left half and mirror it so z[n-1-i] == -z[i] holds exactly.
    const int half = (n_z - 1) / 2;
    for (int i = 0; i < half; ++i) {
        const double zi = -1.0 + i * g.h;
        g.z[i] = zi;
        g.z[n_z - 1 - i] = -zi;
    }
    g.z[half] = 0.0;
    g.z[0] = -1.0;
    g.z[n_z - 1] = 1.0;
    return g;
}

RectMesh build_rect_mesh(const Grid1D& zgrid, int n_r) {
    if (n_r < 4)
        throw std::invalid_argument("radial direction needs at least 4 nodes, got " + std::to_string(n_r));

    RectMesh m;
    m.zgrid = zgrid;
    m.n_r = n_r;
    m.h_r = 1.0 / (n_r - 1);
    m.r.resize(n_r);
    for (int j = 0; j < n_r; ++j)
        m.r[j] = 1.0 + j * m.h_r;
    m.r[0] = 1.0;
    m.r[n_r - 1] = 2.0;
    return m;
}

FilmProfile::FilmProfile(Grid1D grid, std::vector<double> values)
    : grid_(std::move(grid)), u_(std::move(values)) {
    const int n = grid_.n;
    if (static_cast<int>(u_.size()) != n)
        throw std::invalid_argument("profile has " + std::to_string(u_.size()) +
                                    " values for a grid of " + std::to_string(n) + " nodes");
    if (u_.front() != 0.0 || u_.back() != 0.0)
        throw std::invalid_argument("profile endpoints must be exactly zero");

    const double h = grid_.h;
    uz_.resize(n);
    uzz_.resize(n);
    for (int i = 1; i < n - 1; ++i) {
        uz_[i] = (u_[i + 1] - u_[i - 1]) / (2.0 * h);
        uzz_[i] = ((u_[i + 1] + u_[i - 1]) - 2.0 * u_[i]) / (h * h);
    }
    // One-sided ends; the right end reuses the left-end expression on reversed
    // arguments so an even profile gets an exactly odd uz and even uzz.
    uz_[0] = -stencil::one_sided_first(u_[0], u_[1], u_[2], h);
    uz_[n - 1] = stencil::one_sided_first(u_[n - 1], u_[n - 2], u_[n - 3], h);
    uzz_[0] = stencil::one_sided_second(u_[0], u_[1], u_[2], u_[3], h);
    uzz_[n - 1] = stencil::one_sided_second(u_[n - 1], u_[n - 2], u_[n - 3], u_[n - 4], h);

    even_ = true;
    for (int i = 0; i < n / 2; ++i) {
        if (u_[i] != u_[n - 1 - i]) {
            even_ = false;
            break;
        }
    }
}

double FilmProfile::min_value() const { return *std::min_element(u_.begin(), u_.end()); }
double FilmProfile::max_value() const { return *std::max_element(u_.begin(), u_.end()); }

bool FilmProfile::admissible() const {
    for (double v : u_)
        if (!(v > -1.0 && v < 1.0))
            return false;
    return true;
}

double eval_profile(const FilmProfile& v, double z) {
    const Grid1D& g = v.grid();
    if (z <= -1.0) return v.u().front();
    if (z >= 1.0) return v.u().back();
    const double s = (z + 1.0) / g.h;
    int i = static_cast<int>(s);
    if (i >= g.n - 1) i = g.n - 2;
    const double w = s - i;
    if (w == 0.0) return v.u()[i];
    return v.u()[i] + w * (v.u()[i + 1] - v.u()[i]);
}

double map_to_physical(const FilmProfile& v, double z, double r_ref) {
    const double vz = eval_profile(v, z);
    return 2.0 * vz + r_ref * (1.0 - vz);
}

double map_to_reference(const FilmProfile& v, double z, double r) {
    const double vz = eval_profile(v, z);
    return (r - 2.0 * vz) / (1.0 - vz);
}

} // namespace filmsim
