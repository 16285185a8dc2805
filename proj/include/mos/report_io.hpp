#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "mos/bounds.hpp"
#include "mos/eigensolve.hpp"
#include "mos/regionscan.hpp"

namespace mos {

/// 17 significant digits, '.' decimal separator, locale independent.
std::string format_double(double v);

/// Column-named table of preformatted cells.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
};

/// "# config: <compact json>" then the header line and the rows, '\n' endings.
std::string render_csv(const CsvTable& table, const nlohmann::json& config);

/// Columns alpha, c_r, c_i, residual, bc_error, converged.
CsvTable spectrum_table(const std::vector<EigenSolution>& solutions);

/// Columns alpha, m1_over_2a, m2_over_2a, n1_over_2a, n2_over_2a, f_over_2a, g_over_2a.
CsvTable curve_table(const CurveTable& curves);

/// Columns alpha, rq1, rq2, certified, max_ci, spectrum_stable, error.
CsvTable region_table(const std::vector<RegionPoint>& points);

/// One row per check of a bounds report (check, mode, value, slack, pass).
CsvTable bounds_table(const BoundsReport& report);

nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const WaveSpeedInterval& w);
nlohmann::json to_json(const BoundsReport& r);
nlohmann::json to_json(const CurveTable& t);
nlohmann::json to_json(const RegionPoint& p);
nlohmann::json to_json(const EigenSolution& s);

}  // namespace mos
