#pragma once

#include <stdexcept>
#include <string>

namespace filmsim {

/// Profile value too close to a wall for the coefficient formulas to stay regular.
class DegenerateProfileError : public std::runtime_error {
public:
    DegenerateProfileError(std::string what, int node, double value)
        : std::runtime_error(std::move(what)), node(node), value(value) {}

    int node;      // offending grid index
    double value;  // profile value there
};

/// Linear solve missed the residual contract.
class SolverError : public std::runtime_error {
public:
    SolverError(std::string what, int iterations, double residual)
        : std::runtime_error(std::move(what)), iterations(iterations), residual(residual) {}

    int iterations;   // refinement passes attempted
    double residual;  // best relative residual reached
};

} // namespace filmsim
