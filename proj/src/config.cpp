#include "filmsim/config.hpp"

#include "filmsim/catenoid.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace filmsim {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"')
            quoted = !quoted;
        else if (line[i] == '#' && !quoted)
            return line.substr(0, i);
    }
    return line;
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

double to_double(const std::string& v, const std::string& key, int line) {
    size_t pos = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size() || v.empty())
        throw ConfigError("expected a number, got '" + v + "'", key, line);
    return d;
}

int to_int(const std::string& v, const std::string& key, int line) {
    size_t pos = 0;
    int n = 0;
    try {
        n = std::stoi(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size() || v.empty())
        throw ConfigError("expected an integer, got '" + v + "'", key, line);
    return n;
}

bool to_bool(const std::string& v, const std::string& key, int line) {
    if (v == "true")
        return true;
    if (v == "false")
        return false;
    throw ConfigError("expected true or false, got '" + v + "'", key, line);
}

// Accepts zero | catenoid(small|large) | scaled_catenoid(x) | samples(a,b,...).
InitialConditionSpec parse_ic(const std::string& raw, int line) {
    InitialConditionSpec ic;
    ic.text = raw;
    if (raw == "zero") {
        ic.kind = InitialConditionSpec::Kind::Zero;
        return ic;
    }

    auto inner_of = [&](const std::string& head) -> std::string {
        if (raw.rfind(head + "(", 0) == 0 && raw.back() == ')')
            return trim(raw.substr(head.size() + 1, raw.size() - head.size() - 2));
        return std::string("\x01");  // sentinel: head did not match
    };

    if (std::string inner = inner_of("catenoid"); inner != "\x01") {
        ic.kind = InitialConditionSpec::Kind::Catenoid;
        if (inner == "small")
            ic.branch = CatenoidBranch::Small;
        else if (inner == "large")
            ic.branch = CatenoidBranch::Large;
        else
            throw ConfigError("catenoid branch must be small or large, got '" + inner + "'",
                              "ic", line);
        return ic;
    }
    if (std::string inner = inner_of("scaled_catenoid"); inner != "\x01") {
        ic.kind = InitialConditionSpec::Kind::ScaledCatenoid;
        ic.factor = to_double(inner, "ic", line);
        return ic;
    }
    if (std::string inner = inner_of("samples"); inner != "\x01") {
        ic.kind = InitialConditionSpec::Kind::Samples;
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ','))
            ic.samples.push_back(to_double(trim(item), "ic", line));
        if (ic.samples.empty())
            throw ConfigError("samples(...) needs at least one value", "ic", line);
        return ic;
    }
    throw ConfigError("unrecognized initial condition '" + raw + "'", "ic", line);
}

} // namespace

ConfigError::ConfigError(const std::string& what, std::string key_, int line_)
    : std::runtime_error(line_ > 0 ? "config error at line " + std::to_string(line_) + ", key '" +
                                         key_ + "': " + what
                                   : "config error, key '" + key_ + "': " + what),
      message(what),
      key(std::move(key_)),
      line(line_) {}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::map<std::string, int> seen;  // key -> line, for duplicate checks and errors

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(strip_comment(raw));
        if (line.empty())
            continue;

        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value in '" + origin + "'", line, lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("empty key in '" + origin + "'", key, lineno);
        if (value.empty())
            throw ConfigError("empty value", key, lineno);
        if (seen.count(key))
            throw ConfigError("duplicate key, first set at line " + std::to_string(seen[key]),
                              key, lineno);
        seen[key] = lineno;

        if (key == "sigma")
            cfg.sigma = to_double(value, key, lineno);
        else if (key == "lambda")
            cfg.lambda = to_double(value, key, lineno);
        else if (key == "n_z")
            cfg.n_z = to_int(value, key, lineno);
        else if (key == "n_r")
            cfg.n_r = to_int(value, key, lineno);
        else if (key == "t_end")
            cfg.t_end = to_double(value, key, lineno);
        else if (key == "sample_interval")
            cfg.sample_interval = to_double(value, key, lineno);
        else if (key == "record_flux")
            cfg.record_flux = to_bool(value, key, lineno);
        else if (key == "ic")
            cfg.ic = parse_ic(value, lineno);
        else if (key == "dt_init")
            cfg.stepper.dt_init = to_double(value, key, lineno);
        else if (key == "dt_min")
            cfg.stepper.dt_min = to_double(value, key, lineno);
        else if (key == "dt_max")
            cfg.stepper.dt_max = to_double(value, key, lineno);
        else if (key == "max_change_per_step")
            cfg.stepper.max_change_per_step = to_double(value, key, lineno);
        else if (key == "adapt_factor")
            cfg.stepper.adapt_factor = to_double(value, key, lineno);
        else if (key == "pinch_eps")
            cfg.stepper.pinch_eps = to_double(value, key, lineno);
        else if (key == "touch_eps")
            cfg.stepper.touch_eps = to_double(value, key, lineno);
        else if (key == "norm_cap")
            cfg.stepper.norm_cap = to_double(value, key, lineno);
        else if (key == "norm_q")
            cfg.stepper.norm_q = to_double(value, key, lineno);
        else if (key == "tol")
            cfg.solver.tol = to_double(value, key, lineno);
        else if (key == "max_refine")
            cfg.solver.max_refine = to_int(value, key, lineno);
        else if (key == "series")
            cfg.series_path = value;
        else if (key == "summary")
            cfg.summary_path = value;
        else if (key == "snapshot")
            cfg.snapshot_path = value;
        else if (key == "potential")
            cfg.potential_path = value;
        else if (key == "sweep")
            cfg.sweep_path = value;
        else
            throw ConfigError("unknown key", key, lineno);
    }

    auto line_of = [&](const std::string& key) {
        auto it = seen.find(key);
        return it == seen.end() ? 0 : it->second;
    };
    auto reject = [&](const std::string& key, const std::string& why) {
        throw ConfigError(why, key, line_of(key));
    };

    if (!seen.count("sigma"))
        throw ConfigError("required key is missing", "sigma", 0);
    if (!(std::isfinite(cfg.sigma) && cfg.sigma > 0.0))
        reject("sigma", "must be a positive finite number");
    if (!(std::isfinite(cfg.lambda) && cfg.lambda >= 0.0))
        reject("lambda", "must be nonnegative");
    if (cfg.n_z < 5 || cfg.n_z % 2 == 0)
        reject("n_z", "must be an odd integer >= 5 so the grid has a symmetric center");
    if (cfg.n_r < 4)
        reject("n_r", "must be an integer >= 4");
    if (!(cfg.t_end > 0.0))
        reject("t_end", "must be positive");
    if (!(cfg.sample_interval > 0.0))
        reject("sample_interval", "must be positive");
    if (!(cfg.stepper.dt_init > 0.0))
        reject("dt_init", "must be positive");
    if (!(cfg.stepper.dt_min > 0.0))
        reject("dt_min", "must be positive");
    if (!(cfg.stepper.dt_min <= cfg.stepper.dt_init && cfg.stepper.dt_init <= cfg.stepper.dt_max))
        reject("dt_init", "needs dt_min <= dt_init <= dt_max");
    if (!(cfg.stepper.max_change_per_step > 0.0))
        reject("max_change_per_step", "must be positive");
    if (!(cfg.stepper.adapt_factor >= 1.0))
        reject("adapt_factor", "must be >= 1");
    if (!(cfg.stepper.pinch_eps > 0.0 && cfg.stepper.pinch_eps < 0.5))
        reject("pinch_eps", "must lie in (0, 0.5)");
    if (!(cfg.stepper.touch_eps > 0.0 && cfg.stepper.touch_eps < 0.5))
        reject("touch_eps", "must lie in (0, 0.5)");
    if (!(cfg.stepper.norm_cap > 0.0))
        reject("norm_cap", "must be positive");
    if (!(cfg.stepper.norm_q >= 1.0))
        reject("norm_q", "must be >= 1");
    if (!(cfg.solver.tol > 0.0))
        reject("tol", "must be positive");
    if (cfg.solver.max_refine < 0)
        reject("max_refine", "must be >= 0");

    // Realize the initial condition once so bad specs fail at parse time.
    try {
        initial_profile(cfg, build_grid1d(cfg.n_z));
    } catch (const ConfigError& e) {
        throw ConfigError(e.message, "ic", line_of("ic"));
    } catch (const std::exception& e) {
        throw ConfigError(e.what(), "ic", line_of("ic"));
    }

    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'", "", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

FilmProfile initial_profile(const RunConfig& cfg, const Grid1D& grid) {
    using Kind = InitialConditionSpec::Kind;

    auto check_admissible = [&](const std::vector<double>& u) {
        for (size_t i = 0; i < u.size(); ++i)
            if (!(std::abs(u[i]) < 1.0))
                throw ConfigError("initial condition leaves the band -1 < u < 1 at node " +
                                      std::to_string(i) + " (value " + std::to_string(u[i]) + ")",
                                  "ic", 0);
    };

    switch (cfg.ic.kind) {
        case Kind::Zero:
            return FilmProfile(grid, std::vector<double>(grid.n, 0.0));
        case Kind::Catenoid:
        case Kind::ScaledCatenoid: {
            const auto roots = catenoid_roots(cfg.sigma);
            if (!roots) {
                std::ostringstream msg;
                msg << "no catenoid exists at sigma = " << cfg.sigma
                    << "; the minimum of cosh(c)/c is " << sigma_min();
                throw ConfigError(msg.str(), "ic", 0);
            }
            const Catenoid& cat =
                cfg.ic.branch == CatenoidBranch::Small ? roots->first : roots->second;
            FilmProfile base = eval_catenoid(cat, grid);
            if (cfg.ic.kind == Kind::Catenoid)
                return base;
            std::vector<double> u = base.u();
            for (double& x : u)
                x *= cfg.ic.factor;
            u.front() = 0.0;
            u.back() = 0.0;
            check_admissible(u);
            return FilmProfile(grid, std::move(u));
        }
        case Kind::Samples: {
            if (static_cast<int>(cfg.ic.samples.size()) != grid.n)
                throw ConfigError("samples(...) supplies " +
                                      std::to_string(cfg.ic.samples.size()) +
                                      " values but n_z = " + std::to_string(grid.n),
                                  "ic", 0);
            if (cfg.ic.samples.front() != 0.0 || cfg.ic.samples.back() != 0.0)
                throw ConfigError("sample endpoints must be exactly zero", "ic", 0);
            check_admissible(cfg.ic.samples);
            return FilmProfile(grid, cfg.ic.samples);
        }
    }
    throw ConfigError("unhandled initial condition kind", "ic", 0);
}

} // namespace filmsim
