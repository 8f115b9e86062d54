#include "filmsim/io.hpp"

#include "filmsim/runner.hpp"

#include <json.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace filmsim;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

int digits_before_exponent(const std::string& s) {
    int digits = 0;
    for (char c : s) {
        if (c == 'e' || c == 'E') break;
        if (c >= '0' && c <= '9') ++digits;
    }
    return digits;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("fmt17 round-trips doubles exactly") {
    const std::vector<double> samples = {
        0.0,
        -0.0,
        1.0 / 3.0,
        3.14159265358979323846,
        -2.718281828459045,
        1e-300,
        6.02214076e23,
        std::numeric_limits<double>::max(),
        std::numeric_limits<double>::denorm_min(),
        -1.2345678901234567e-8,
    };
    for (double x : samples) {
        const std::string s = fmt17(x);
        CHECK(digits_before_exponent(s) == 17);  // full precision, fixed width
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    // The sign of zero survives, so reruns stay byte-identical.
    CHECK(fmt17(-0.0)[0] == '-');
    CHECK(fmt17(1.0) == "1.0000000000000000e+00");
}

TEST_CASE("csv_escape quotes only when needed") {
    CHECK(csv_escape("plain_text-1.5") == "plain_text-1.5");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
    CHECK(csv_escape("") == "");
}

TEST_CASE("series text carries the documented header and full precision rows") {
    Diagnostics d;
    d.t = 0.25;
    d.E = 0.5;
    d.dE_dt = -1.5;
    d.min_u = -0.125;
    d.max_u = 0.0625;
    d.norm_proxy = 2.0;
    d.symmetry_defect = 0.0;

    const std::string text = series_csv_text({d});
    std::istringstream lines(text);
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    const bool more = static_cast<bool>(std::getline(lines, extra));

    CHECK(header == "t,E,dE_dt,min_u,max_u,norm_proxy,symmetry_defect");
    CHECK(row == fmt17(0.25) + "," + fmt17(0.5) + "," + fmt17(-1.5) + "," + fmt17(-0.125) +
                     "," + fmt17(0.0625) + "," + fmt17(2.0) + "," + fmt17(0.0));
    CHECK_FALSE(more);
}

TEST_CASE("convergence table quotes awkward case names") {
    ConvergenceResult r;
    r.case_name = "curved, steep";
    r.h = {0.5, 0.25};
    r.error = {1e-2, 2.5e-3};
    r.order = 2.0;

    const std::string text = convergence_csv_text({r});
    std::istringstream lines(text);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(header == "case,h,error,order");
    CHECK(first.rfind("\"curved, steep\",", 0) == 0);
    CHECK(first.find(fmt17(0.5)) != std::string::npos);
}

TEST_CASE("critical constants serialize to JSON, infinity as null") {
    CriticalData d;
    d.sigma = 1.6;
    d.c = 0.9;
    d.C15 = 1.7;
    d.C16 = 1.4;
    d.lambda_crit = 300.0;
    d.lambda = 150.0;
    d.C17 = -2.0;
    d.T_max_bound = std::numeric_limits<double>::infinity();
    d.resolution = 65;

    const auto j = nlohmann::json::parse(critical_json(d));
    CHECK(j["sigma"].get<double>() == 1.6);
    CHECK(j["C15"].get<double>() == 1.7);
    CHECK(j["lambda_crit"].get<double>() == 300.0);
    CHECK(j["T_max_bound"].is_null());
    CHECK(j["resolution"].get<int>() == 65);

    d.T_max_bound = 0.75;
    const auto k = nlohmann::json::parse(critical_json(d));
    CHECK(k["T_max_bound"].get<double>() == 0.75);
}

TEST_CASE("text files write, fail loudly, and round-trip") {
    const std::string path = "test_io_roundtrip.txt";
    write_text_file(path, "alpha\nbeta\n");
    CHECK(read_file(path) == "alpha\nbeta\n");
    std::remove(path.c_str());

    try {
        write_text_file("/nonexistent_dir_xyz/file.txt", "x");
        FAIL("expected a write error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/nonexistent_dir_xyz/file.txt") !=
              std::string::npos);
    }
}

TEST_CASE("profile and potential snapshots carry coordinates") {
    const Grid1D g = build_grid1d(5);
    const FilmProfile u(g, std::vector<double>(5, 0.0));
    write_profile_csv("test_io_profile.csv", u);
    const std::string prof = read_file("test_io_profile.csv");
    CHECK(prof.rfind("z,u\n", 0) == 0);
    CHECK(prof.find(fmt17(-1.0)) != std::string::npos);
    std::remove("test_io_profile.csv");

    const RectMesh mesh = build_rect_mesh(g, 4);
    PotentialField phi;
    phi.n_z = 5;
    phi.n_r = 4;
    phi.h_r = mesh.h_r;
    phi.phi.assign(20, 0.25);
    write_potential_csv("test_io_potential.csv", mesh, phi);
    const std::string pot = read_file("test_io_potential.csv");
    CHECK(pot.rfind("z,r,phi\n", 0) == 0);
    // Header plus one line per node.
    CHECK(std::count(pot.begin(), pot.end(), '\n') == 1 + 20);
    std::remove("test_io_potential.csv");
}

TEST_CASE("lambda tokens resolve numbers and critical multiples") {
    CHECK(resolve_lambda_token("0", 300.0) == 0.0);
    CHECK(resolve_lambda_token("12.5", 300.0) == 12.5);
    CHECK(resolve_lambda_token("crit", 300.0) == 300.0);
    CHECK(resolve_lambda_token("2*crit", 300.0) == 600.0);
    CHECK(resolve_lambda_token("0.5*crit", 300.0) == 150.0);

    CHECK_THROWS_AS(resolve_lambda_token("-1", 300.0), std::runtime_error);
    CHECK_THROWS_AS(resolve_lambda_token("banana", 300.0), std::runtime_error);
    CHECK_THROWS_AS(resolve_lambda_token("*crit", 300.0), std::runtime_error);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(resolve_lambda_token("crit", nan), std::runtime_error);
    CHECK_THROWS_AS(resolve_lambda_token("2*crit", nan), std::runtime_error);
    CHECK(resolve_lambda_token("1.5", nan) == 1.5);  // plain numbers never need it
}

TEST_CASE("run summaries echo the configuration") {
    RunSummary s;
    s.outcome.kind = RunOutcome::Kind::Completed;
    s.outcome.t = 1.0;
    s.final_row.t = 1.0;
    s.final_row.E = 0.125;
    s.steps = 42;
    s.max_step_dE_dt = -0.5;
    s.wall_time_s = 0.01;
    s.notes = "";

    RunConfig cfg;
    cfg.sigma = 1.6;
    cfg.lambda = 2.5;
    cfg.ic.text = "catenoid(small)";

    const auto j = nlohmann::json::parse(summary_json(s, cfg));
    CHECK(j["version"].get<std::string>() == std::string(kVersion));
    CHECK(j["outcome"]["tag"].get<std::string>() == "Completed");
    CHECK(j["final"]["E"].get<double>() == 0.125);
    CHECK(j["critical"].is_null());
    CHECK(j["steps"].get<long>() == 42);
    CHECK(j["config"]["sigma"].get<double>() == 1.6);
    CHECK(j["config"]["lambda"].get<double>() == 2.5);
    CHECK(j["config"]["ic"].get<std::string>() == "catenoid(small)");
    CHECK(j["config"]["n_z"].get<int>() == 129);
}

TEST_CASE("sweep rows render one line per cell") {
    SweepRow a;
    a.sigma = 1.6;
    a.lambda = 0.0;
    a.outcome = "Completed";
    a.t_final = 0.25;
    a.lambda_crit = 296.5;
    SweepRow b = a;
    b.outcome = "Error";
    b.detail = "solve failed, tol 1e-10";

    const std::string text = sweep_csv_text({a, b});
    std::istringstream lines(text);
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(header == "sigma,lambda,outcome,t_final,lambda_crit,detail");
    CHECK(first.find("Completed") != std::string::npos);
    CHECK(second.find("\"solve failed, tol 1e-10\"") != std::string::npos);
}

TEST_CASE("sweeps produce identical bytes at any parallelism") {
    RunConfig cfg;
    cfg.sigma = 1.6;  // placeholder; each cell overrides sigma
    cfg.n_z = 33;
    cfg.n_r = 17;
    cfg.t_end = 0.02;
    cfg.sample_interval = 0.01;
    cfg.sweep_path = "test_io_sweep_a.csv";

    const std::vector<double> sigmas = {1.6, 2.0};
    const std::vector<std::string> tokens = {"0", "0.25*crit"};

    const auto rows1 = run_sweep(cfg, sigmas, tokens, 1);
    const std::string bytes1 = read_file(cfg.sweep_path);
    std::remove(cfg.sweep_path.c_str());

    cfg.sweep_path = "test_io_sweep_b.csv";
    const auto rows4 = run_sweep(cfg, sigmas, tokens, 4);
    const std::string bytes4 = read_file(cfg.sweep_path);
    std::remove(cfg.sweep_path.c_str());

    CHECK(bytes1 == bytes4);
    REQUIRE(rows1.size() == 4);
    REQUIRE(rows4.size() == 4);
    for (size_t k = 0; k < rows1.size(); ++k) {
        CHECK(rows1[k].sigma == rows4[k].sigma);
        CHECK(rows1[k].lambda == rows4[k].lambda);
        CHECK(rows1[k].outcome == rows4[k].outcome);
        CHECK(rows1[k].t_final == rows4[k].t_final);
    }
    // Row order is sigma-major, matching the request order.
    CHECK(rows1[0].sigma == 1.6);
    CHECK(rows1[1].sigma == 1.6);
    CHECK(rows1[2].sigma == 2.0);
    CHECK(rows1[0].lambda == 0.0);
}

TEST_CASE("sweep cells without a catenoid report errors in their rows") {
    RunConfig cfg;
    cfg.sigma = 1.0;
    cfg.n_z = 33;
    cfg.n_r = 17;
    cfg.t_end = 0.01;
    cfg.sweep_path = "test_io_sweep_err.csv";

    // sigma = 1.0 has no catenoid, so the crit-relative cell must fail while
    // the plain-number cell still runs.
    const auto rows = run_sweep(cfg, {1.0}, {"0", "crit"}, 1);
    std::remove(cfg.sweep_path.c_str());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].outcome == "Completed");
    CHECK(std::isnan(rows[0].lambda_crit));
    CHECK(rows[1].outcome == "Error");
    CHECK(!rows[1].detail.empty());

    CHECK_THROWS_AS(run_sweep(cfg, {1.6}, {"oops"}, 1), std::runtime_error);
    CHECK_THROWS_AS(run_sweep(cfg, {}, {"0"}, 1), ConfigError);
}

} // TEST_SUITE
