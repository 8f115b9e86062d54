#pragma once

#include "filmsim/diagnostics.hpp"
#include "filmsim/elliptic.hpp"
#include "filmsim/grid.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace filmsim {

struct SimState;

/// Physical and discretization parameters of one evolution run.
struct RunParams {
    double sigma = 1.0;
    double lambda = 0.0;
    int n_r = 129;                 // radial nodes of the potential mesh
    double sample_interval = 0.01; // time-series cadence
    bool record_flux = false;      // attach the flux identity to sampled rows
    SolverConfig solver;
    std::function<void(const SimState&)> on_step;  // fires after every accepted step
};

struct StepperConfig {
    double dt_init = 1e-4;
    double dt_min = 1e-12;
    double dt_max = 1e-2;
    double max_change_per_step = 0.01; // accepted max node displacement per step
    double adapt_factor = 1.5;         // growth when steps come in well under budget
    double pinch_eps = 0.02;           // min(u+1) below this ends the run
    double touch_eps = 0.02;           // max(u) above 1 - touch_eps ends the run
    double norm_cap = 100.0;           // norm_proxy above this counts as blow-up
    double norm_q = 4.0;
};

struct SimState {
    double t = 0.0;
    double last_dt = 0.0;  // size of the step that produced u (next attempt size too)
    long step_count = 0;
    FilmProfile u;
    std::optional<Diagnostics> diag;  // latest sampled snapshot, if any
};

struct RunOutcome {
    enum class Kind { Completed, PinchOff, TouchedCylinder, NormBlowup, SolverFailure };
    Kind kind = Kind::Completed;
    double t = 0.0;
    double z_loc = 0.0;  // where the film pinched or touched
    double norm = 0.0;   // norm proxy at blow-up
    std::string detail;  // solver failure description

    const char* name() const;
};

/// Tridiagonal operator with identity boundary rows; interior rows apply
/// -sigma^2/(1 + sigma^2 uz^2) times the central second difference.
struct TridiagonalOperator {
    std::vector<double> lower, diag, upper;
};

TridiagonalOperator assemble_B(const FilmProfile& v, double sigma);

/// Thomas solve; writes the solution into x.
void solve_tridiagonal(const TridiagonalOperator& T, const std::vector<double>& b,
                       std::vector<double>& x);

/// One semi-implicit update (I + dt B(u)) u_next = u + dt G(u) using
/// state.last_dt. Evolution preserves bitwise even profiles exactly.
SimState step(const SimState& state, const RunParams& p, const StepperConfig& cfg);

/// Threshold classification of a state; empty while the run may continue.
/// Tie order: pinch, touch, norm.
std::optional<RunOutcome> classify(const SimState& state, const StepperConfig& cfg);

struct RunResult {
    std::vector<Diagnostics> series;
    RunOutcome outcome;
    long steps = 0;
    double max_step_dE_dt = 0.0;  // largest per-step energy difference quotient
    FilmProfile final_u;
};

/// March from u0 until t_end or a terminal classification, with step-halving
/// retries against max_change_per_step and growth by adapt_factor.
RunResult run(const RunParams& p, const FilmProfile& u0, const StepperConfig& cfg, double t_end);

} // namespace filmsim
