#include "filmsim/catenoid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace filmsim {

namespace {

// Bisection to machine precision; f must change sign on [lo, hi].
template <class F>
double bisect(F f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Catenoid make(double c) { return Catenoid{c, std::cosh(c) / c, 1.0 / std::cosh(c)}; }

} // namespace

double catenoid_c_star() {
    static const double cstar = bisect([](double c) { return c * std::tanh(c) - 1.0; }, 0.5, 2.0);
    return cstar;
}

double sigma_min() {
    static const double s = std::cosh(catenoid_c_star()) / catenoid_c_star();
    return s;
}

std::optional<std::pair<Catenoid, Catenoid>> catenoid_roots(double sigma) {
    const double cstar = catenoid_c_star();
    const double smin = sigma_min();
    if (sigma < smin)
        return std::nullopt;
    if (sigma <= smin * (1.0 + 1e-14))
        return std::pair{make(cstar), make(cstar)};

    auto f = [sigma](double c) { return std::cosh(c) / c - sigma; };

    // cosh(c)/c decreases on (0, c*) and increases on (c*, inf).
    double lo = cstar;
    while (f(lo) < 0.0)
        lo *= 0.5;
    const double c_small = bisect(f, lo, cstar);

    double hi = cstar;
    while (f(hi) < 0.0)
        hi *= 2.0;
    const double c_large = bisect(f, cstar, hi);

    return std::pair{make(c_small), make(c_large)};
}

FilmProfile eval_catenoid(const Catenoid& cat, const Grid1D& grid) {
    std::vector<double> u(grid.n);
    const double denom = std::cosh(cat.c);
    // Evaluate one half and mirror to keep the samples exactly even.
    for (int i = 0; i <= (grid.n - 1) / 2; ++i) {
        const double val = std::cosh(cat.c * grid.z[i]) / denom - 1.0;
        u[i] = val;
        u[grid.n - 1 - i] = val;
    }
    u.front() = 0.0;
    u.back() = 0.0;
    return FilmProfile(grid, std::move(u));
}

} // namespace filmsim
