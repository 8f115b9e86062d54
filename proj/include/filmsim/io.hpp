#pragma once

#include "filmsim/diagnostics.hpp"
#include "filmsim/elliptic.hpp"
#include "filmsim/grid.hpp"
#include "filmsim/verification.hpp"

#include <string>
#include <vector>

namespace filmsim {

/// Fixed 17-significant-digit scientific rendering; round-trips any double and
/// never depends on locale, so equal data always yields byte-equal text.
std::string fmt17(double x);

/// Minimal CSV quoting: wraps fields containing commas, quotes or newlines.
std::string csv_escape(const std::string& field);

/// Body text for the evolution time series (header + one row per sample).
std::string series_csv_text(const std::vector<Diagnostics>& series);

/// Body text for a convergence table.
std::string convergence_csv_text(const std::vector<ConvergenceResult>& results);

/// Pretty-printed JSON for the critical-voltage constants. Non-finite values
/// (an unbounded T_max) serialize as null.
std::string critical_json(const CriticalData& d);

void write_text_file(const std::string& path, const std::string& body);

void write_series_csv(const std::string& path, const std::vector<Diagnostics>& series);

/// Profile snapshot, header z,u.
void write_profile_csv(const std::string& path, const FilmProfile& u);

/// Potential snapshot on the reference rectangle, header z,r,phi.
void write_potential_csv(const std::string& path, const RectMesh& mesh,
                         const PotentialField& phi);

} // namespace filmsim
