#include "filmsim/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace filmsim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;

double trapezoid(const std::vector<double>& f, double h) {
    double s = 0.5 * (f.front() + f.back());
    for (size_t i = 1; i + 1 < f.size(); ++i)
        s += f[i];
    return s * h;
}

// Weighted film-edge integral shared by the flux identity and the critical
// voltage constant.
double film_flux_integral(const FilmProfile& u, const PotentialField& phi, double sigma) {
    const std::vector<double> trace = trace_dr_at_film(phi);
    std::vector<double> f(u.n());
    for (int i = 0; i < u.n(); ++i) {
        const double suz = sigma * u.uz()[i];
        f[i] = (u.u()[i] + 1.0) * (1.0 + suz * suz) * trace[i] / (1.0 - u.u()[i]);
    }
    return trapezoid(f, u.grid().h);
}

} // namespace

double energy(const FilmProfile& u) {
    std::vector<double> f(u.n());
    for (int i = 0; i < u.n(); ++i) {
        if (u.u()[i] <= -1.0)
            throw std::domain_error("energy undefined, profile reaches the axis");
        f[i] = -std::log(u.u()[i] + 1.0);
    }
    return trapezoid(f, u.grid().h);
}

double energy_rate(const FilmProfile& u, const std::vector<double>& du_dt) {
    if (du_dt.size() != u.u().size())
        throw std::invalid_argument("du_dt size does not match the profile");
    std::vector<double> f(u.n());
    for (int i = 0; i < u.n(); ++i)
        f[i] = -du_dt[i] / (u.u()[i] + 1.0);
    return trapezoid(f, u.grid().h);
}

std::vector<double> pde_time_derivative(const FilmProfile& u, double sigma,
                                        const ForceProfile& f) {
    const int n = u.n();
    std::vector<double> du(n, 0.0);
    const double s2 = sigma * sigma;
    // Endpoints are pinned, du/dt = 0 there.
    for (int i = 1; i < n - 1; ++i) {
        const double curv = s2 * u.uzz()[i] / (1.0 + s2 * u.uz()[i] * u.uz()[i]);
        du[i] = f.rhs[i] + curv;
    }
    return du;
}

double norm_proxy(const FilmProfile& u, double q) {
    double m_u = 0.0, m_uz = 0.0, s = 0.0;
    for (int i = 0; i < u.n(); ++i) {
        m_u = std::max(m_u, std::abs(u.u()[i]));
        m_uz = std::max(m_uz, std::abs(u.uz()[i]));
        s += std::pow(std::abs(u.uzz()[i]), q);
    }
    return m_u + m_uz + std::pow(s * u.grid().h, 1.0 / q);
}

double symmetry_defect(const FilmProfile& u) {
    double worst = 0.0;
    const int n = u.n();
    for (int i = 0; i < n / 2; ++i)
        worst = std::max(worst, std::abs(u.u()[i] - u.u()[n - 1 - i]));
    return worst;
}

FluxIdentity flux_identity(const FilmProfile& u, const PotentialField& phi, double sigma) {
    const int n_z = phi.n_z;
    const int n_r = phi.n_r;
    const double hz = u.grid().h;
    const double hr = phi.h_r;
    const double s2 = sigma * sigma;
    auto r_of = [&](int j) { return j == n_r - 1 ? 2.0 : 1.0 + j * hr; };

    FluxIdentity out;
    out.lhs = film_flux_integral(u, phi, sigma);

    // Cylinder side r = 2: d_r of the physical field is d_r phi / (1 - v).
    std::vector<double> top(n_z);
    for (int i = 0; i < n_z; ++i) {
        const double dr =
            stencil::one_sided_first(phi(i, n_r - 1), phi(i, n_r - 2), phi(i, n_r - 3), hr);
        top[i] = 2.0 * dr / (1.0 - u.u()[i]);
    }
    double rhs = trapezoid(top, hz);

    // End rings z = +-1. The film vanishes there, so the reference and physical
    // radii agree, but the z derivative picks up the moving-domain correction
    // -v_z (2 - r) d_r phi from the coordinate change.
    auto radial_derivative = [&](int i, int j) {
        if (j == 0)
            return -stencil::one_sided_first(phi(i, 0), phi(i, 1), phi(i, 2), hr);
        if (j == n_r - 1)
            return stencil::one_sided_first(phi(i, n_r - 1), phi(i, n_r - 2), phi(i, n_r - 3), hr);
        return (phi(i, j + 1) - phi(i, j - 1)) / (2.0 * hr);
    };

    std::vector<double> ring(n_r);
    const int last = n_z - 1;
    for (int j = 0; j < n_r; ++j) {
        const double dz =
            stencil::one_sided_first(phi(last, j), phi(last - 1, j), phi(last - 2, j), hz);
        const double dzpsi = dz - u.uz()[last] * (2.0 - r_of(j)) * radial_derivative(last, j);
        ring[j] = s2 * r_of(j) * dzpsi;  // outward normal +z
    }
    rhs += trapezoid(ring, hr);

    for (int j = 0; j < n_r; ++j) {
        const double dz = -stencil::one_sided_first(phi(0, j), phi(1, j), phi(2, j), hz);
        const double dzpsi = dz - u.uz()[0] * (2.0 - r_of(j)) * radial_derivative(0, j);
        ring[j] = -s2 * r_of(j) * dzpsi;  // outward normal -z
    }
    rhs += trapezoid(ring, hr);

    out.rhs = rhs;
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

ArctanBound arctan_lower_bound_check(const FilmProfile& u, double sigma) {
    std::vector<double> f(u.n()), g(u.n());
    for (int i = 0; i < u.n(); ++i) {
        const double suz = sigma * u.uz()[i];
        f[i] = std::atan(suz) * suz;
        g[i] = std::sqrt(1.0 + suz * suz);
    }
    ArctanBound b;
    b.lhs = trapezoid(f, u.grid().h);
    b.rhs = (kPi / 4.0) * trapezoid(g, u.grid().h) - kPi;
    b.holds = b.lhs >= b.rhs;
    return b;
}

double c15(double sigma, int resolution, const SolverConfig& cfg) {
    const auto roots = catenoid_roots(sigma);
    if (!roots)
        throw std::domain_error("no catenoid exists at this aspect ratio");
    const Grid1D grid = build_grid1d(resolution);
    const RectMesh mesh = build_rect_mesh(grid, resolution);
    const FilmProfile u = eval_catenoid(roots->first, grid);
    const PotentialField phi = solve_potential(u, sigma, mesh, cfg);
    return film_flux_integral(u, phi, sigma);
}

CriticalData critical_data(double sigma, double lambda, int resolution, const SolverConfig& cfg) {
    CriticalData d;
    d.sigma = sigma;
    d.resolution = resolution;
    d.lambda = lambda;

    const auto roots = catenoid_roots(sigma);
    if (!roots)
        throw std::domain_error("no catenoid exists at this aspect ratio");
    d.c = roots->first.c;
    d.C16 = 1.0 / roots->first.throat;
    d.C15 = c15(sigma, resolution, cfg);

    const double S = kPi / 4.0 + sigma * kPi + 2.0 * d.C16 * d.C16;
    d.lambda_crit = 32.0 / (kPi * d.C15 * d.C15) * S * S;
    d.C17 = -S + std::sqrt(lambda * kPi) * d.C15 / (4.0 * std::sqrt(2.0));

    if (d.C17 > 0.0) {
        const Grid1D grid = build_grid1d(resolution);
        const FilmProfile ucat = eval_catenoid(roots->first, grid);
        d.T_max_bound = (2.0 * kLn2 + energy(ucat)) / d.C17;
    } else {
        d.T_max_bound = std::numeric_limits<double>::infinity();
    }
    return d;
}

double lambda_crit(double sigma, int resolution, const SolverConfig& cfg) {
    return critical_data(sigma, 0.0, resolution, cfg).lambda_crit;
}

} // namespace filmsim
