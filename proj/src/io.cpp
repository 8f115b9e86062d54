#include "filmsim/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace filmsim {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string series_csv_text(const std::vector<Diagnostics>& series) {
    std::ostringstream out;
    out << "t,E,dE_dt,min_u,max_u,norm_proxy,symmetry_defect\n";
    for (const Diagnostics& d : series)
        out << fmt17(d.t) << ',' << fmt17(d.E) << ',' << fmt17(d.dE_dt) << ','
            << fmt17(d.min_u) << ',' << fmt17(d.max_u) << ',' << fmt17(d.norm_proxy) << ','
            << fmt17(d.symmetry_defect) << '\n';
    return out.str();
}

std::string convergence_csv_text(const std::vector<ConvergenceResult>& results) {
    std::ostringstream out;
    out << "case,h,error,order\n";
    for (const ConvergenceResult& r : results)
        for (size_t k = 0; k < r.h.size(); ++k)
            out << csv_escape(r.case_name) << ',' << fmt17(r.h[k]) << ',' << fmt17(r.error[k])
                << ',' << fmt17(r.order) << '\n';
    return out.str();
}

std::string critical_json(const CriticalData& d) {
    nlohmann::json j;
    j["sigma"] = d.sigma;
    j["c"] = d.c;
    j["C15"] = d.C15;
    j["C16"] = d.C16;
    j["lambda_crit"] = d.lambda_crit;
    j["lambda"] = d.lambda;
    j["C17"] = d.C17;
    j["T_max_bound"] = d.T_max_bound;  // dumps as null when infinite
    j["resolution"] = d.resolution;
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << body;
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

void write_series_csv(const std::string& path, const std::vector<Diagnostics>& series) {
    write_text_file(path, series_csv_text(series));
}

void write_profile_csv(const std::string& path, const FilmProfile& u) {
    std::ostringstream out;
    out << "z,u\n";
    for (int i = 0; i < u.n(); ++i)
        out << fmt17(u.grid().z[i]) << ',' << fmt17(u.u()[i]) << '\n';
    write_text_file(path, out.str());
}

void write_potential_csv(const std::string& path, const RectMesh& mesh,
                         const PotentialField& phi) {
    std::ostringstream out;
    out << "z,r,phi\n";
    for (int i = 0; i < mesh.n_z(); ++i)
        for (int j = 0; j < mesh.n_r; ++j)
            out << fmt17(mesh.zgrid.z[i]) << ',' << fmt17(mesh.r[j]) << ','
                << fmt17(phi(i, j)) << '\n';
    write_text_file(path, out.str());
}

} // namespace filmsim
