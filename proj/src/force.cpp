#include "filmsim/force.hpp"

#include "filmsim/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace filmsim {

ForceProfile electrostatic_force(const FilmProfile& v, const PotentialField& phi, double sigma) {
    const int n = v.n();
    if (phi.n_z != n)
        throw std::invalid_argument("potential and profile disagree on the z node count");

    for (int i = 0; i < n; ++i) {
        if (1.0 - v.u()[i] < kDegenerateMargin)
            throw DegenerateProfileError("force undefined, film touches the cylinder at node " +
                                             std::to_string(i),
                                         i, v.u()[i]);
        if (v.u()[i] + 1.0 < kDegenerateMargin)
            throw DegenerateProfileError("force undefined, film pinches off at node " +
                                             std::to_string(i),
                                         i, v.u()[i]);
    }

    const std::vector<double> trace = trace_dr_at_film(phi);
    ForceProfile f;
    f.g.resize(n);
    for (int i = 0; i < n; ++i) {
        const double suz = sigma * v.uz()[i];
        const double slope = 1.0 + suz * suz;
        const double om = 1.0 - v.u()[i];
        const double dpsi = trace[i] / om;
        f.g[i] = slope * std::sqrt(slope) * (dpsi * dpsi);
    }
    return f;
}

ForceProfile full_rhs(const FilmProfile& v, const ForceProfile& g, double lambda) {
    if (lambda < 0.0)
        throw std::invalid_argument("lambda must be nonnegative");
    const size_t n = v.u().size();
    if (lambda > 0.0 && g.g.size() != n)
        throw std::invalid_argument("force vector size does not match the profile");

    ForceProfile f;
    f.lambda = lambda;
    f.g = g.g;
    f.rhs.resize(n);
    for (size_t i = 0; i < n; ++i) {
        f.rhs[i] = -1.0 / (v.u()[i] + 1.0);
        if (lambda > 0.0) f.rhs[i] += lambda * f.g[i];
    }
    return f;
}

} // namespace filmsim
