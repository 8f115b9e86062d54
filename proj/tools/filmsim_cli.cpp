#include "filmsim/catenoid.hpp"
#include "filmsim/config.hpp"
#include "filmsim/errors.hpp"
#include "filmsim/io.hpp"
#include "filmsim/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

using namespace filmsim;

int main(int argc, char** argv) {
    CLI::App app{"electrostatically loaded tubular soap film: evolution runs, "
                 "parameter sweeps, critical-voltage constants"};
    app.require_subcommand(1);

    std::string run_config;
    CLI::App* cmd_run = app.add_subcommand("run", "execute one configured evolution run");
    cmd_run->add_option("config", run_config, "config file (key = value)")->required();

    std::string sweep_config;
    std::vector<double> sigmas;
    std::vector<std::string> lambdas;
    int jobs = 1;
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "phase-diagram sweep over (sigma, lambda) cells");
    cmd_sweep->add_option("config", sweep_config, "base config file")->required();
    cmd_sweep->add_option("--sigma", sigmas, "sigma values")->required();
    cmd_sweep->add_option("--lambda", lambdas, "lambda values: number, crit, or <x>*crit")
        ->required();
    cmd_sweep->add_option("-j,--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);

    double sigma_arg = 0.0;
    double lambda_arg = 0.0;
    int resolution = 129;
    CLI::App* cmd_crit =
        app.add_subcommand("critical", "critical-voltage constants for one sigma, as JSON");
    cmd_crit->add_option("sigma", sigma_arg, "aspect ratio")->required();
    cmd_crit->add_option("--lambda", lambda_arg, "voltage for C17 and T_max (default lambda_crit)")
        ->check(CLI::NonNegativeNumber);
    cmd_crit->add_option("--resolution", resolution, "square mesh resolution for C15")
        ->check(CLI::PositiveNumber);

    CLI::App* cmd_verify =
        app.add_subcommand("verify", "manufactured-solution convergence suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(cmd_run)) {
            const RunConfig cfg = parse_config(run_config);
            const RunSummary s = run_single(cfg);
            std::cout << summary_json(s, cfg);
            return s.outcome.kind == RunOutcome::Kind::SolverFailure ? 2 : 0;
        }
        if (app.got_subcommand(cmd_sweep)) {
            const RunConfig cfg = parse_config(sweep_config);
            const std::vector<SweepRow> rows = run_sweep(cfg, sigmas, lambdas, jobs);
            std::cout << sweep_csv_text(rows);
            return 0;
        }
        if (app.got_subcommand(cmd_crit)) {
            const double lam = cmd_crit->count("--lambda")
                                   ? lambda_arg
                                   : lambda_crit(sigma_arg, resolution);
            std::cout << critical_json(critical_data(sigma_arg, lam, resolution));
            return 0;
        }
        if (app.got_subcommand(cmd_verify))
            return run_verification(std::cout) ? 0 : 3;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}
