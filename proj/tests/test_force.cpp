#include "filmsim/force.hpp"

#include "filmsim/catenoid.hpp"
#include "filmsim/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace filmsim;

namespace {

FilmProfile flat(const Grid1D& g) { return FilmProfile(g, std::vector<double>(g.n, 0.0)); }

} // namespace

TEST_SUITE("force") {

TEST_CASE("flat film load is 1/ln(2)^2 everywhere") {
    // For u = 0 the potential is ln(r)/ln 2, so the edge derivative is 1/ln 2
    // and g = (1/ln 2)^2 = 2.0813689810056077 at every node.
    const Grid1D g = build_grid1d(129);
    const RectMesh mesh = build_rect_mesh(g, 129);
    const FilmProfile u = flat(g);
    const PotentialField phi = solve_potential(u, 1.0, mesh);
    const ForceProfile f = electrostatic_force(u, phi, 1.0);

    REQUIRE(static_cast<int>(f.g.size()) == g.n);
    const double exact = 1.0 / (std::log(2.0) * std::log(2.0));
    for (double gi : f.g) {
        CHECK(std::abs(gi - exact) <= 1e-3 * exact);
        CHECK(gi >= 0.0);
    }
}

TEST_CASE("even films give bitwise even loads") {
    const auto roots = catenoid_roots(std::cosh(1.0));
    REQUIRE(roots.has_value());
    const Grid1D g = build_grid1d(65);
    const RectMesh mesh = build_rect_mesh(g, 65);
    const FilmProfile u = eval_catenoid(roots->first, g);
    const PotentialField phi = solve_potential(u, roots->first.sigma, mesh);
    const ForceProfile f = electrostatic_force(u, phi, roots->first.sigma);

    for (int i = 0; i < g.n; ++i)
        CHECK(f.g[i] == f.g[g.n - 1 - i]);
}

TEST_CASE("degenerate profiles are refused with the node named") {
    const Grid1D g = build_grid1d(33);
    const RectMesh mesh = build_rect_mesh(g, 9);
    const FilmProfile u = flat(g);
    const PotentialField phi = solve_potential(u, 1.0, mesh);

    std::vector<double> vals(g.n, 0.0);
    vals[10] = 1.0 - 1e-6;  // hugs the cylinder; potential solved for u = 0 is fine
    const FilmProfile bad(g, vals);
    try {
        electrostatic_force(bad, phi, 1.0);
        FAIL("expected DegenerateProfileError");
    } catch (const DegenerateProfileError& e) {
        CHECK(e.node == 10);
        CHECK(e.value == doctest::Approx(1.0 - 1e-6).epsilon(1e-12));
    }
}

TEST_CASE("profile and potential sizes must agree") {
    const Grid1D g = build_grid1d(33);
    const RectMesh mesh = build_rect_mesh(g, 9);
    const PotentialField phi = solve_potential(flat(g), 1.0, mesh);
    const Grid1D g2 = build_grid1d(17);
    CHECK_THROWS_AS(electrostatic_force(flat(g2), phi, 1.0), std::invalid_argument);
}

TEST_CASE("full_rhs without voltage skips the load entirely") {
    const Grid1D g = build_grid1d(17);
    const FilmProfile u = flat(g);
    const ForceProfile f = full_rhs(u, ForceProfile{}, 0.0);

    REQUIRE(static_cast<int>(f.rhs.size()) == g.n);
    for (double ri : f.rhs) CHECK(ri == -1.0);  // -1/(0+1)
    CHECK(f.lambda == 0.0);
}

TEST_CASE("full_rhs combines pressure and load linearly") {
    const Grid1D g = build_grid1d(17);
    const FilmProfile u = flat(g);
    ForceProfile load;
    load.g.assign(g.n, 2.0);

    const ForceProfile f = full_rhs(u, load, 0.75);
    for (double ri : f.rhs) CHECK(ri == doctest::Approx(-1.0 + 0.75 * 2.0).epsilon(1e-15));
}

TEST_CASE("full_rhs validates lambda and load sizing") {
    const Grid1D g = build_grid1d(17);
    const FilmProfile u = flat(g);
    CHECK_THROWS_AS(full_rhs(u, ForceProfile{}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(full_rhs(u, ForceProfile{}, 1.0), std::invalid_argument);
    ForceProfile short_load;
    short_load.g.assign(3, 1.0);
    CHECK_THROWS_AS(full_rhs(u, short_load, 1.0), std::invalid_argument);
}

TEST_CASE("balanced voltage makes the flat film stationary") {
    // At lambda = ln(2)^2 the load cancels the pressure exactly in the
    // continuum; the discrete imbalance is bounded by the trace error.
    const Grid1D g = build_grid1d(129);
    const RectMesh mesh = build_rect_mesh(g, 129);
    const FilmProfile u = flat(g);
    const PotentialField phi = solve_potential(u, 1.2, mesh);
    const ForceProfile load = electrostatic_force(u, phi, 1.2);
    const double lambda = std::log(2.0) * std::log(2.0);
    const ForceProfile f = full_rhs(u, load, lambda);

    for (double ri : f.rhs) CHECK(std::abs(ri) <= 5e-4);
}

} // TEST_SUITE
