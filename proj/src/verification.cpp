#include "filmsim/verification.hpp"

#include <cmath>
#include <stdexcept>

namespace filmsim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

FilmProfile sample_case_profile(const MMSCase& mc, const Grid1D& grid) {
    std::vector<double> v(grid.n);
    for (int i = 0; i < grid.n; ++i)
        v[i] = mc.v(grid.z[i]);
    v.front() = 0.0;
    v.back() = 0.0;
    return FilmProfile(grid, std::move(v));
}

std::vector<double> mms_source(const MMSCase& mc, const RectMesh& mesh) {
    const FilmProfile v = sample_case_profile(mc, mesh.zgrid);
    const CoefficientField c = assemble_coefficients(v, mc.sigma, mesh);

    std::vector<double> F(mesh.size(), 0.0);
    for (int i = 0; i < mesh.n_z(); ++i) {
        const double z = mesh.zgrid.z[i];
        for (int j = 0; j < mesh.n_r; ++j) {
            const double r = mesh.r[j];
            const int k = mesh.index(i, j);
            F[k] = -(c.c_zz[k] * mc.phi_zz(z, r) + c.c_zr[k] * mc.phi_zr(z, r) +
                     c.c_rr[k] * mc.phi_rr(z, r) + c.c_r[k] * mc.phi_r(z, r));
        }
    }
    return F;
}

std::vector<ConvergenceResult> convergence_study(const SolveOp& solve_op,
                                                 const std::vector<MMSCase>& cases,
                                                 const std::vector<int>& resolutions) {
    if (resolutions.size() < 3)
        throw std::invalid_argument("order fit needs at least three resolutions");

    std::vector<ConvergenceResult> out;
    for (const MMSCase& mc : cases) {
        ConvergenceResult res;
        res.case_name = mc.name;
        for (int n : resolutions) {
            const Grid1D grid = build_grid1d(n);
            const RectMesh mesh = build_rect_mesh(grid, n);
            const FilmProfile v = sample_case_profile(mc, grid);
            const CoefficientField c = assemble_coefficients(v, mc.sigma, mesh);
            const std::vector<double> F = mms_source(mc, mesh);
            const PotentialField phi = solve_op(c, F, mesh);

            double err = 0.0;
            for (int i = 0; i < mesh.n_z(); ++i)
                for (int j = 0; j < mesh.n_r; ++j)
                    err = std::max(err,
                                   std::abs(phi(i, j) - mc.phi(grid.z[i], mesh.r[j])));
            res.h.push_back(grid.h);
            res.error.push_back(err);
        }

        // Least-squares slope of log error against log h.
        const size_t m = res.h.size();
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (size_t k = 0; k < m; ++k) {
            const double x = std::log(res.h[k]);
            const double y = std::log(res.error[k]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        res.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        out.push_back(std::move(res));
    }
    return out;
}

std::vector<MMSCase> builtin_mms_cases() {
    std::vector<MMSCase> cases;

    // Polynomial bubble on the flat domain; the hand-checkable case.
    {
        MMSCase mc;
        mc.name = "poly_flat";
        mc.sigma = 1.0;
        mc.v = [](double) { return 0.0; };
        mc.phi = [](double z, double r) { return (1.0 - z * z) * (r - 1.0) * (2.0 - r); };
        mc.phi_zz = [](double, double r) { return -2.0 * (r - 1.0) * (2.0 - r); };
        mc.phi_zr = [](double z, double r) { return -2.0 * z * (3.0 - 2.0 * r); };
        mc.phi_rr = [](double z, double) { return -2.0 * (1.0 - z * z); };
        mc.phi_r = [](double z, double r) { return (1.0 - z * z) * (3.0 - 2.0 * r); };
        cases.push_back(std::move(mc));
    }

    // Trigonometric field, flat domain, stretched z direction.
    {
        MMSCase mc;
        mc.name = "trig_flat";
        mc.sigma = 2.0;
        mc.v = [](double) { return 0.0; };
        auto sz = [](double z) { return std::sin(kPi * (z + 1.0) / 2.0); };
        auto cz = [](double z) { return std::cos(kPi * (z + 1.0) / 2.0); };
        auto sr = [](double r) { return std::sin(kPi * (r - 1.0)); };
        auto cr = [](double r) { return std::cos(kPi * (r - 1.0)); };
        mc.phi = [=](double z, double r) { return sz(z) * sr(r); };
        mc.phi_zz = [=](double z, double r) { return -(kPi * kPi / 4.0) * sz(z) * sr(r); };
        mc.phi_zr = [=](double z, double r) { return (kPi * kPi / 2.0) * cz(z) * cr(r); };
        mc.phi_rr = [=](double z, double r) { return -kPi * kPi * sz(z) * sr(r); };
        mc.phi_r = [=](double z, double r) { return kPi * sz(z) * cr(r); };
        cases.push_back(std::move(mc));
    }

    // Curved film: cosine bump profile exercises every coefficient term.
    {
        MMSCase mc;
        mc.name = "trig_curved";
        mc.sigma = 1.5;
        mc.v = [](double z) { return 0.2 * std::cos(kPi * z / 2.0); };
        auto sz = [](double z) { return std::sin(kPi * (z + 1.0) / 2.0); };
        auto cz = [](double z) { return std::cos(kPi * (z + 1.0) / 2.0); };
        auto sr = [](double r) { return std::sin(kPi * (r - 1.0)); };
        auto cr = [](double r) { return std::cos(kPi * (r - 1.0)); };
        mc.phi = [=](double z, double r) { return sz(z) * sr(r); };
        mc.phi_zz = [=](double z, double r) { return -(kPi * kPi / 4.0) * sz(z) * sr(r); };
        mc.phi_zr = [=](double z, double r) { return (kPi * kPi / 2.0) * cz(z) * cr(r); };
        mc.phi_rr = [=](double z, double r) { return -kPi * kPi * sz(z) * sr(r); };
        mc.phi_r = [=](double z, double r) { return kPi * sz(z) * cr(r); };
        cases.push_back(std::move(mc));
    }

    // Quartic field over an uneven curved film. Unlike the biquadratic case
    // above (which the stencils reproduce exactly), this one carries genuine
    // truncation error, so it measures the order on a nonsymmetric profile.
    {
        MMSCase mc;
        mc.name = "quartic_curved";
        mc.sigma = 0.8;
        mc.v = [](double z) { return 0.15 * (1.0 - z * z) * (1.0 + 0.5 * z); };
        auto A = [](double z) { return (1.0 - z * z) * (1.0 - z * z); };
        mc.phi = [=](double z, double r) { return A(z) * (r - 1.0) * (2.0 - r); };
        mc.phi_zz = [](double z, double r) {
            return -4.0 * (1.0 - 3.0 * z * z) * (r - 1.0) * (2.0 - r);
        };
        mc.phi_zr = [](double z, double r) {
            return -4.0 * z * (1.0 - z * z) * (3.0 - 2.0 * r);
        };
        mc.phi_rr = [=](double z, double) { return -2.0 * A(z); };
        mc.phi_r = [=](double z, double r) { return A(z) * (3.0 - 2.0 * r); };
        cases.push_back(std::move(mc));
    }

    return cases;
}

FilmProfile random_admissible_profile(std::mt19937& rng, const Grid1D& grid, double amplitude) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> scale(0.2, 1.0);

    const int modes = 4;
    std::vector<double> a(modes);
    for (double& x : a)
        x = coeff(rng);

    std::vector<double> u(grid.n, 0.0);
    double peak = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        double s = 0.0;
        for (int m = 1; m <= modes; ++m)
            s += a[m - 1] * std::sin(m * kPi * (grid.z[i] + 1.0) / 2.0);
        u[i] = s;
        peak = std::max(peak, std::abs(s));
    }

    const double target = amplitude * scale(rng);
    if (peak > 0.0)
        for (double& x : u)
            x *= target / peak;
    u.front() = 0.0;
    u.back() = 0.0;
    return FilmProfile(grid, std::move(u));
}

} // namespace filmsim
