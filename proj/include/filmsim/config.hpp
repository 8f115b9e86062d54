#pragma once

#include "filmsim/elliptic.hpp"
#include "filmsim/grid.hpp"
#include "filmsim/stepper.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace filmsim {

/// Parse or validation failure; remembers which key and line went wrong.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& what, std::string key_, int line_);
    std::string message;  // description without the location prefix
    std::string key;
    int line;  // 1-based; 0 when the key never appeared
};

enum class CatenoidBranch { Small, Large };

struct InitialConditionSpec {
    enum class Kind { Zero, Catenoid, ScaledCatenoid, Samples };
    Kind kind = Kind::Zero;
    CatenoidBranch branch = CatenoidBranch::Small;
    double factor = 1.0;           // scaled_catenoid multiplier
    std::vector<double> samples;   // explicit node values, endpoints zero
    std::string text = "zero";     // original token, echoed into summaries
};

/// One complete run description as read from a key = value file.
struct RunConfig {
    double sigma = 0.0;
    double lambda = 0.0;
    int n_z = 129;
    int n_r = 129;
    double t_end = 1.0;
    double sample_interval = 0.01;
    bool record_flux = false;
    InitialConditionSpec ic;
    StepperConfig stepper;
    SolverConfig solver;
    std::string series_path = "series.csv";
    std::string summary_path = "summary.json";
    std::string snapshot_path;   // final profile CSV, empty = skip
    std::string potential_path;  // final potential CSV, empty = skip
    std::string sweep_path = "sweep.csv";
};

/// Parse and fully validate a config file. Unknown, duplicated, ill-typed or
/// out-of-range keys raise ConfigError naming the key and line.
RunConfig parse_config(const std::string& path);

/// Same parser over in-memory text; origin labels error messages.
RunConfig parse_config_text(const std::string& text, const std::string& origin);

/// Realize the configured initial condition on a grid. The result always has
/// exact zero endpoints and is admissibility-checked nodewise.
FilmProfile initial_profile(const RunConfig& cfg, const Grid1D& grid);

} // namespace filmsim
