#include "filmsim/runner.hpp"

#include "filmsim/catenoid.hpp"
#include "filmsim/errors.hpp"
#include "filmsim/io.hpp"
#include "filmsim/verification.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

namespace filmsim {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

nlohmann::json outcome_json(const RunOutcome& oc) {
    nlohmann::json j;
    j["tag"] = oc.name();
    j["t"] = oc.t;
    j["z_loc"] = oc.z_loc;
    j["norm"] = oc.norm;
    j["detail"] = oc.detail;
    return j;
}

nlohmann::json diagnostics_json(const Diagnostics& d) {
    nlohmann::json j;
    j["t"] = d.t;
    j["E"] = d.E;
    j["dE_dt"] = d.dE_dt;
    j["min_u"] = d.min_u;
    j["max_u"] = d.max_u;
    j["norm_proxy"] = d.norm_proxy;
    j["symmetry_defect"] = d.symmetry_defect;
    if (d.flux_lhs)
        j["flux_lhs"] = *d.flux_lhs;
    if (d.flux_rhs)
        j["flux_rhs"] = *d.flux_rhs;
    return j;
}

nlohmann::json critical_json_obj(const CriticalData& d) {
    nlohmann::json j;
    j["sigma"] = d.sigma;
    j["c"] = d.c;
    j["C15"] = d.C15;
    j["C16"] = d.C16;
    j["lambda_crit"] = d.lambda_crit;
    j["lambda"] = d.lambda;
    j["C17"] = d.C17;
    j["T_max_bound"] = d.T_max_bound;
    j["resolution"] = d.resolution;
    return j;
}

RunParams params_from(const RunConfig& cfg) {
    RunParams p;
    p.sigma = cfg.sigma;
    p.lambda = cfg.lambda;
    p.n_r = cfg.n_r;
    p.sample_interval = cfg.sample_interval;
    p.record_flux = cfg.record_flux;
    p.solver = cfg.solver;
    return p;
}

} // namespace

RunSummary run_single(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();

    const Grid1D grid = build_grid1d(cfg.n_z);
    const FilmProfile u0 = initial_profile(cfg, grid);
    const RunResult res = run(params_from(cfg), u0, cfg.stepper, cfg.t_end);

    RunSummary s;
    s.outcome = res.outcome;
    s.final_row = res.series.back();
    s.steps = res.steps;
    s.max_step_dE_dt = res.max_step_dE_dt;
    if (cfg.lambda > 0.0 && catenoid_roots(cfg.sigma))
        s.critical = critical_data(cfg.sigma, cfg.lambda, cfg.n_z, cfg.solver);

    write_series_csv(cfg.series_path, res.series);
    if (!cfg.snapshot_path.empty())
        write_profile_csv(cfg.snapshot_path, res.final_u);
    if (!cfg.potential_path.empty()) {
        try {
            const RectMesh mesh = build_rect_mesh(grid, cfg.n_r);
            const PotentialField phi = solve_potential(res.final_u, cfg.sigma, mesh, cfg.solver);
            write_potential_csv(cfg.potential_path, mesh, phi);
        } catch (const DegenerateProfileError& e) {
            s.notes = std::string("potential snapshot skipped: ") + e.what();
        }
    }

    s.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_text_file(cfg.summary_path, summary_json(s, cfg));
    return s;
}

std::string summary_json(const RunSummary& s, const RunConfig& cfg) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["outcome"] = outcome_json(s.outcome);
    j["final"] = diagnostics_json(s.final_row);
    j["critical"] = s.critical ? critical_json_obj(*s.critical) : nlohmann::json(nullptr);
    j["steps"] = s.steps;
    j["max_step_dE_dt"] = s.max_step_dE_dt;
    j["wall_time_s"] = s.wall_time_s;
    j["notes"] = s.notes;

    nlohmann::json c;
    c["sigma"] = cfg.sigma;
    c["lambda"] = cfg.lambda;
    c["n_z"] = cfg.n_z;
    c["n_r"] = cfg.n_r;
    c["t_end"] = cfg.t_end;
    c["sample_interval"] = cfg.sample_interval;
    c["record_flux"] = cfg.record_flux;
    c["ic"] = cfg.ic.text;
    c["dt_init"] = cfg.stepper.dt_init;
    c["dt_min"] = cfg.stepper.dt_min;
    c["dt_max"] = cfg.stepper.dt_max;
    c["max_change_per_step"] = cfg.stepper.max_change_per_step;
    c["adapt_factor"] = cfg.stepper.adapt_factor;
    c["pinch_eps"] = cfg.stepper.pinch_eps;
    c["touch_eps"] = cfg.stepper.touch_eps;
    c["norm_cap"] = cfg.stepper.norm_cap;
    c["norm_q"] = cfg.stepper.norm_q;
    c["tol"] = cfg.solver.tol;
    c["max_refine"] = cfg.solver.max_refine;
    c["series"] = cfg.series_path;
    c["summary"] = cfg.summary_path;
    j["config"] = c;

    return j.dump(2) + "\n";
}

double resolve_lambda_token(const std::string& token, double lambda_crit_value) {
    auto parse_number = [&](const std::string& text) {
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != text.size() || text.empty())
            throw std::runtime_error("bad lambda token '" + token + "'");
        return v;
    };
    auto crit = [&]() {
        if (!std::isfinite(lambda_crit_value))
            throw std::runtime_error("lambda token '" + token +
                                     "' needs lambda_crit, but no catenoid exists here");
        return lambda_crit_value;
    };

    double value = 0.0;
    if (token == "crit")
        value = crit();
    else if (token.size() > 5 && token.compare(token.size() - 5, 5, "*crit") == 0)
        value = parse_number(token.substr(0, token.size() - 5)) * crit();
    else
        value = parse_number(token);

    if (!(std::isfinite(value) && value >= 0.0))
        throw std::runtime_error("lambda token '" + token + "' resolves to " +
                                 std::to_string(value) + ", not a nonnegative number");
    return value;
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg, const std::vector<double>& sigmas,
                                const std::vector<std::string>& lambda_tokens, int jobs) {
    if (sigmas.empty())
        throw ConfigError("sweep needs at least one sigma", "--sigma", 0);
    if (lambda_tokens.empty())
        throw ConfigError("sweep needs at least one lambda", "--lambda", 0);
    for (const std::string& tok : lambda_tokens) {
        try {
            resolve_lambda_token(tok, 1.0);  // syntax check with a placeholder critical value
        } catch (const std::exception& e) {
            throw ConfigError(e.what(), "--lambda", 0);
        }
    }

    // One reference critical value per sigma, shared by all of its cells.
    std::vector<double> crit(sigmas.size());
    for (size_t i = 0; i < sigmas.size(); ++i) {
        try {
            crit[i] = lambda_crit(sigmas[i], cfg.n_z, cfg.solver);
        } catch (const std::exception&) {
            crit[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }

    struct Task {
        double sigma;
        double crit;
        std::string token;
    };
    std::vector<Task> tasks;
    for (size_t i = 0; i < sigmas.size(); ++i)
        for (const std::string& tok : lambda_tokens)
            tasks.push_back(Task{sigmas[i], crit[i], tok});

    auto run_cell = [&](const Task& task) {
        SweepRow row;
        row.sigma = task.sigma;
        row.lambda_crit = task.crit;
        try {
            row.lambda = resolve_lambda_token(task.token, task.crit);
            RunConfig cell = cfg;
            cell.sigma = task.sigma;
            cell.lambda = row.lambda;
            const Grid1D grid = build_grid1d(cell.n_z);
            const FilmProfile u0 = initial_profile(cell, grid);
            const RunResult res = run(params_from(cell), u0, cell.stepper, cell.t_end);
            row.outcome = res.outcome.name();
            row.t_final = res.outcome.t;
            row.detail = res.outcome.detail;
        } catch (const std::exception& e) {
            row.outcome = "Error";
            row.t_final = 0.0;
            row.detail = e.what();
        }
        return row;
    };

    std::vector<SweepRow> rows(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t k = next.fetch_add(1);
            if (k >= tasks.size())
                break;
            rows[k] = run_cell(tasks[k]);
        }
    };

    const int n_workers = std::max(1, std::min(jobs, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i)
        pool.emplace_back(worker);
    for (std::thread& th : pool)
        th.join();

    write_text_file(cfg.sweep_path, sweep_csv_text(rows));
    return rows;
}

std::string sweep_csv_text(const std::vector<SweepRow>& rows) {
    std::string out = "sigma,lambda,outcome,t_final,lambda_crit,detail\n";
    for (const SweepRow& r : rows) {
        out += fmt17(r.sigma) + "," + fmt17(r.lambda) + "," + r.outcome + "," +
               fmt17(r.t_final) + "," + fmt17(r.lambda_crit) + "," + csv_escape(r.detail) + "\n";
    }
    return out;
}

bool run_verification(std::ostream& out) {
    bool ok = true;
    auto check = [&](bool pass, const std::string& name, const std::string& detail) {
        out << (pass ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
        ok = ok && pass;
    };

    const SolveOp op = [](const CoefficientField& c, const std::vector<double>& F,
                          const RectMesh& mesh) { return solve_with_source(c, F, mesh); };
    const auto results = convergence_study(op, builtin_mms_cases(), {33, 65, 129});
    out << convergence_csv_text(results);
    for (const ConvergenceResult& r : results) {
        // A case the stencils reproduce exactly has no order to measure; its
        // rounding-level error is stronger evidence than any slope.
        if (r.error.back() <= 1e-10)
            check(true, "manufactured solution, " + r.case_name,
                  "solved to rounding, max error " + fmt17(r.error.back()));
        else
            check(r.order >= 1.9, "manufactured-solution order, " + r.case_name,
                  "observed " + fmt17(r.order));
    }

    {
        const Grid1D grid = build_grid1d(65);
        const RectMesh mesh = build_rect_mesh(grid, 65);
        const FilmProfile u0(grid, std::vector<double>(grid.n, 0.0));
        const PotentialField phi = solve_potential(u0, 1.0, mesh);
        double err = 0.0;
        for (int i = 0; i < mesh.n_z(); ++i)
            for (int j = 0; j < mesh.n_r; ++j)
                err = std::max(err, std::abs(phi(i, j) - std::log(mesh.r[j]) / kLn2));
        check(err <= 1e-4, "flat-film log potential", "max node error " + fmt17(err));
    }

    {
        std::mt19937 rng(2026);
        const Grid1D grid = build_grid1d(65);
        const RectMesh mesh = build_rect_mesh(grid, 65);
        const double sigma = 1.5;
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            const FilmProfile v = random_admissible_profile(rng, grid);
            const CoefficientField c = assemble_coefficients(v, sigma, mesh);
            worst = std::max(worst, check_ellipticity(c).det_residual);
        }
        check(worst <= 1e-12 * sigma * sigma, "determinant identity",
              "max residual " + fmt17(worst));
    }

    out << (ok ? "verification passed\n" : "verification FAILED\n");
    return ok;
}

} // namespace filmsim
