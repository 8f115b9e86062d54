#include "filmsim/config.hpp"

#include "filmsim/catenoid.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

using namespace filmsim;

namespace {

ConfigError capture(const std::string& text) {
    try {
        parse_config_text(text, "test");
    } catch (const ConfigError& e) {
        return e;
    }
    return ConfigError("parse unexpectedly succeeded", "<none>", -1);
}

int count_occurrences(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1))
        ++n;
    return n;
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("a one-line file yields the documented defaults") {
    const RunConfig cfg = parse_config_text("sigma = 1.6\n", "test");
    CHECK(cfg.sigma == 1.6);
    CHECK(cfg.lambda == 0.0);
    CHECK(cfg.n_z == 129);
    CHECK(cfg.n_r == 129);
    CHECK(cfg.t_end == 1.0);
    CHECK(cfg.sample_interval == 0.01);
    CHECK_FALSE(cfg.record_flux);
    CHECK(cfg.ic.kind == InitialConditionSpec::Kind::Zero);
    CHECK(cfg.stepper.dt_init == 1e-4);
    CHECK(cfg.stepper.dt_min == 1e-12);
    CHECK(cfg.stepper.dt_max == 1e-2);
    CHECK(cfg.stepper.max_change_per_step == 0.01);
    CHECK(cfg.stepper.adapt_factor == 1.5);
    CHECK(cfg.stepper.pinch_eps == 0.02);
    CHECK(cfg.stepper.touch_eps == 0.02);
    CHECK(cfg.stepper.norm_cap == 100.0);
    CHECK(cfg.stepper.norm_q == 4.0);
    CHECK(cfg.solver.tol == 1e-10);
    CHECK(cfg.solver.max_refine == 3);
    CHECK(cfg.series_path == "series.csv");
    CHECK(cfg.summary_path == "summary.json");
    CHECK(cfg.snapshot_path.empty());
    CHECK(cfg.potential_path.empty());
    CHECK(cfg.sweep_path == "sweep.csv");
}

TEST_CASE("comments, blank lines and quoted values parse cleanly") {
    const std::string text =
        "# run setup\n"
        "\n"
        "sigma = 2.0   # aspect ratio\n"
        "  lambda=3.5\n"
        "series = \"out dir/my series.csv\"\n"
        "summary = \"notes#1.json\"  # the quoted hash is data\n"
        "record_flux = true\n";
    const RunConfig cfg = parse_config_text(text, "test");
    CHECK(cfg.sigma == 2.0);
    CHECK(cfg.lambda == 3.5);
    CHECK(cfg.series_path == "out dir/my series.csv");
    CHECK(cfg.summary_path == "notes#1.json");
    CHECK(cfg.record_flux);
}

TEST_CASE("every numeric key reaches its field") {
    const std::string text =
        "sigma = 1.7\nlambda = 12.5\nn_z = 65\nn_r = 33\nt_end = 0.25\n"
        "sample_interval = 0.05\ndt_init = 2e-4\ndt_min = 1e-10\ndt_max = 5e-3\n"
        "max_change_per_step = 0.02\nadapt_factor = 2.0\npinch_eps = 0.01\n"
        "touch_eps = 0.03\nnorm_cap = 50\nnorm_q = 2\ntol = 1e-9\nmax_refine = 5\n"
        "snapshot = final.csv\npotential = field.csv\nsweep = phase.csv\n";
    const RunConfig cfg = parse_config_text(text, "test");
    CHECK(cfg.n_z == 65);
    CHECK(cfg.n_r == 33);
    CHECK(cfg.t_end == 0.25);
    CHECK(cfg.sample_interval == 0.05);
    CHECK(cfg.stepper.dt_init == 2e-4);
    CHECK(cfg.stepper.dt_min == 1e-10);
    CHECK(cfg.stepper.dt_max == 5e-3);
    CHECK(cfg.stepper.max_change_per_step == 0.02);
    CHECK(cfg.stepper.adapt_factor == 2.0);
    CHECK(cfg.stepper.pinch_eps == 0.01);
    CHECK(cfg.stepper.touch_eps == 0.03);
    CHECK(cfg.stepper.norm_cap == 50.0);
    CHECK(cfg.stepper.norm_q == 2.0);
    CHECK(cfg.solver.tol == 1e-9);
    CHECK(cfg.solver.max_refine == 5);
    CHECK(cfg.snapshot_path == "final.csv");
    CHECK(cfg.potential_path == "field.csv");
    CHECK(cfg.sweep_path == "phase.csv");
}

TEST_CASE("errors name the key and the line") {
    ConfigError e = capture("lambda = 1\n");
    CHECK(e.key == "sigma");
    CHECK(e.line == 0);
    CHECK(std::string(e.what()).find("sigma") != std::string::npos);

    e = capture("sigma = 1.6\nlambda = -2\n");
    CHECK(e.key == "lambda");
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);

    e = capture("sigma = huh\n");
    CHECK(e.key == "sigma");
    CHECK(e.line == 1);

    e = capture("sigma = 1.6\nn_z = 12.7\n");
    CHECK(e.key == "n_z");
    CHECK(e.line == 2);

    e = capture("sigma = 1.6\nrecord_flux = maybe\n");
    CHECK(e.key == "record_flux");

    e = capture("sigma = 1.6\nn_z = 64\n");
    CHECK(e.key == "n_z");

    e = capture("sigma = 1.6\nn_r = 3\n");
    CHECK(e.key == "n_r");

    e = capture("sigma = 1.6\nt_end = 0\n");
    CHECK(e.key == "t_end");

    e = capture("sigma = 1.6\ndt_init = 1e-3\ndt_max = 1e-4\n");
    CHECK(e.key == "dt_init");

    e = capture("sigma = 1.6\npinch_eps = 0.6\n");
    CHECK(e.key == "pinch_eps");

    e = capture("sigma = 1.6\nadapt_factor = 0.9\n");
    CHECK(e.key == "adapt_factor");

    e = capture("sigma = 1.6\nnorm_q = 0.5\n");
    CHECK(e.key == "norm_q");

    e = capture("sigma = 1.6\nvoltage = 3\n");
    CHECK(e.key == "voltage");
    CHECK(e.message == "unknown key");

    e = capture("sigma = 1.6\nsigma = 1.7\n");
    CHECK(e.key == "sigma");
    CHECK(e.line == 2);
    CHECK(e.message.find("duplicate") != std::string::npos);
    CHECK(e.message.find("line 1") != std::string::npos);

    e = capture("sigma = 1.6\nwhat is this\n");
    CHECK(e.line == 2);
    CHECK(e.message.find("key = value") != std::string::npos);

    e = capture("sigma = 1.6\nlambda =\n");
    CHECK(e.key == "lambda");
    CHECK(e.message == "empty value");
}

TEST_CASE("initial condition tokens cover all four kinds") {
    RunConfig cfg = parse_config_text("sigma = 1.6\nic = zero\n", "test");
    CHECK(cfg.ic.kind == InitialConditionSpec::Kind::Zero);

    cfg = parse_config_text("sigma = 1.6\nic = catenoid(small)\n", "test");
    CHECK(cfg.ic.kind == InitialConditionSpec::Kind::Catenoid);
    CHECK(cfg.ic.branch == CatenoidBranch::Small);

    cfg = parse_config_text("sigma = 1.6\nic = catenoid(large)\n", "test");
    CHECK(cfg.ic.branch == CatenoidBranch::Large);

    cfg = parse_config_text("sigma = 1.6\nic = scaled_catenoid(0.5)\n", "test");
    CHECK(cfg.ic.kind == InitialConditionSpec::Kind::ScaledCatenoid);
    CHECK(cfg.ic.factor == 0.5);

    cfg = parse_config_text("sigma = 1.6\nn_z = 5\nic = samples(0, 0.1, -0.2, 0.1, 0)\n",
                            "test");
    CHECK(cfg.ic.kind == InitialConditionSpec::Kind::Samples);
    REQUIRE(cfg.ic.samples.size() == 5);
    CHECK(cfg.ic.samples[2] == -0.2);
}

TEST_CASE("initial profiles are realized with exact endpoints") {
    const Grid1D g = build_grid1d(65);
    const double sigma = 2.0;

    RunConfig cfg = parse_config_text("sigma = 2\nn_z = 65\nic = zero\n", "test");
    const FilmProfile zero = initial_profile(cfg, g);
    for (double v : zero.u()) CHECK(v == 0.0);

    cfg = parse_config_text("sigma = 2\nn_z = 65\nic = catenoid(small)\n", "test");
    const FilmProfile small = initial_profile(cfg, g);
    cfg = parse_config_text("sigma = 2\nn_z = 65\nic = catenoid(large)\n", "test");
    const FilmProfile large = initial_profile(cfg, g);
    // The large branch hangs deeper toward the axis.
    CHECK(large.min_value() < small.min_value());
    CHECK(small.min_value() ==
          doctest::Approx(1.0 / std::cosh(catenoid_roots(sigma)->first.c) - 1.0)
              .epsilon(1e-12));

    cfg = parse_config_text("sigma = 2\nn_z = 65\nic = scaled_catenoid(0.5)\n", "test");
    const FilmProfile scaled = initial_profile(cfg, g);
    for (int i = 0; i < g.n; ++i)
        CHECK(scaled.u()[i] == 0.5 * small.u()[i]);  // scaling by 0.5 is exact
}

TEST_CASE("bad initial conditions fail at parse time, naming ic") {
    // No catenoid exists this far below the threshold; the message must carry
    // a single location prefix.
    const ConfigError e = capture("sigma = 1\nic = catenoid(small)\n");
    CHECK(e.key == "ic");
    CHECK(e.line == 2);
    CHECK(e.message.find("no catenoid") != std::string::npos);
    CHECK(count_occurrences(e.what(), "config error") == 1);

    CHECK(capture("sigma = 1.6\nic = catenoid(medium)\n").key == "ic");
    CHECK(capture("sigma = 1.6\nic = scaled_catenoid(abc)\n").key == "ic");
    CHECK(capture("sigma = 1.6\nic = bowl\n").key == "ic");
    CHECK(capture("sigma = 1.6\nic = samples()\n").key == "ic");

    // Out-of-band scaling and sample values are caught nodewise.
    ConfigError band = capture("sigma = 1.6\nic = scaled_catenoid(4)\n");
    CHECK(band.key == "ic");
    CHECK(band.message.find("band") != std::string::npos);

    band = capture("sigma = 1.6\nn_z = 5\nic = samples(0, 0.1, 1.5, 0.1, 0)\n");
    CHECK(band.key == "ic");

    // Sample counts must match the grid and endpoints must vanish.
    CHECK(capture("sigma = 1.6\nn_z = 5\nic = samples(0, 0.1, 0)\n").key == "ic");
    CHECK(capture("sigma = 1.6\nn_z = 5\nic = samples(0.1, 0, 0, 0, 0)\n").key == "ic");
}

TEST_CASE("parse_config reports unreadable paths") {
    try {
        parse_config("/nonexistent/dir/run.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.message.find("/nonexistent/dir/run.cfg") != std::string::npos);
    }
}

TEST_CASE("parse_config round-trips a real file") {
    const std::string path = "test_config_roundtrip.cfg";
    {
        std::ofstream out(path);
        out << "sigma = 1.9\nlambda = 4\nn_z = 33\nn_r = 17\n";
    }
    const RunConfig cfg = parse_config(path);
    CHECK(cfg.sigma == 1.9);
    CHECK(cfg.lambda == 4.0);
    CHECK(cfg.n_z == 33);
    CHECK(cfg.n_r == 17);
    std::remove(path.c_str());
}

} // TEST_SUITE
