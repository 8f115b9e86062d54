#pragma once

#include "filmsim/config.hpp"
#include "filmsim/diagnostics.hpp"
#include "filmsim/stepper.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace filmsim {

inline constexpr const char* kVersion = "0.1.0";

/// End-of-run report; serialized to JSON next to the time-series CSV.
struct RunSummary {
    RunOutcome outcome;
    Diagnostics final_row;               // always equals the last series row
    std::optional<CriticalData> critical;  // filled when a catenoid exists and lambda > 0
    long steps = 0;
    double max_step_dE_dt = 0.0;
    double wall_time_s = 0.0;
    std::string notes;  // skipped snapshots and similar non-fatal events
};

/// Execute one configured run and write its artifacts (series CSV, JSON
/// summary, optional snapshots). Returns the summary that was written.
RunSummary run_single(const RunConfig& cfg);

std::string summary_json(const RunSummary& s, const RunConfig& cfg);

/// One (sigma, lambda) cell of a sweep.
struct SweepRow {
    double sigma = 0.0;
    double lambda = 0.0;
    std::string outcome;       // RunOutcome tag, or Error when the cell threw
    double t_final = 0.0;
    double lambda_crit = 0.0;  // reference column; NaN when no catenoid exists
    std::string detail;
};

/// Resolve a sweep lambda token: a plain number, "crit", or "<x>*crit" scaled
/// against the given critical value.
double resolve_lambda_token(const std::string& token, double lambda_crit_value);

/// Run every (sigma, lambda-token) cell on `jobs` workers and write the
/// phase-diagram CSV to cfg.sweep_path. Row order and content are independent
/// of the parallelism degree; cell failures land in the row, not in exceptions.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, const std::vector<double>& sigmas,
                                const std::vector<std::string>& lambda_tokens, int jobs);

std::string sweep_csv_text(const std::vector<SweepRow>& rows);

/// Manufactured-solution convergence suite plus exact-solution and determinant
/// spot checks; prints a report and returns true when everything passes.
bool run_verification(std::ostream& out);

} // namespace filmsim
