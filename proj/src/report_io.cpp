#include "mos/report_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mos {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // snprintf honours LC_NUMERIC; the C locale is never changed here but be explicit.
    for (char* p = buf; *p; ++p)
        if (*p == ',') *p = '.';
    return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw std::invalid_argument("CSV row width does not match the header");
    rows.push_back(std::move(row));
}

std::string render_csv(const CsvTable& table, const nlohmann::json& config) {
    std::ostringstream out;
    out << "# config: " << config.dump() << '\n';
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
        out << '\n';
    };
    line(table.columns);
    for (const auto& row : table.rows) line(row);
    return out.str();
}

namespace {

std::string flag(bool b) { return b ? "1" : "0"; }

template <typename T>
std::string optional_cell(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_same_v<T, bool>)
        return flag(*v);
    else
        return format_double(*v);
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

CsvTable spectrum_table(const std::vector<EigenSolution>& solutions) {
    CsvTable t{{"alpha", "c_r", "c_i", "residual", "bc_error", "converged"}, {}};
    for (const EigenSolution& s : solutions) {
        const double alpha = s.problem ? s.problem->alpha : 0.0;
        for (const Mode& m : s.modes)
            t.add_row({format_double(alpha), format_double(m.c.real()), format_double(m.c.imag()),
                       format_double(m.residual), format_double(m.bc_error), flag(m.converged)});
    }
    return t;
}

CsvTable curve_table(const CurveTable& c) {
    CsvTable t{{"alpha", "m1_over_2a", "m2_over_2a", "n1_over_2a", "n2_over_2a", "f_over_2a", "g_over_2a"}, {}};
    for (std::size_t k = 0; k < c.size(); ++k)
        t.add_row({format_double(c.alphas[k]), format_double(c.m1_over_2a[k]), format_double(c.m2_over_2a[k]),
                   format_double(c.n1_over_2a[k]), format_double(c.n2_over_2a[k]), format_double(c.f_over_2a[k]),
                   format_double(c.g_over_2a[k])});
    return t;
}

CsvTable region_table(const std::vector<RegionPoint>& points) {
    CsvTable t{{"alpha", "rq1", "rq2", "certified", "max_ci", "spectrum_stable", "error"}, {}};
    for (const RegionPoint& p : points) {
        std::string err = p.error;
        for (char& ch : err)
            if (ch == ',' || ch == '\n') ch = ';';
        t.add_row({format_double(p.alpha), format_double(p.rq1()), format_double(p.rq2()), flag(p.certified),
                   optional_cell(p.max_ci), optional_cell(p.spectrum_stable), err});
    }
    return t;
}

CsvTable bounds_table(const BoundsReport& r) {
    CsvTable t{{"alpha", "check", "mode", "value", "slack", "pass"}, {}};
    const std::string a = format_double(r.alpha);
    for (std::size_t k = 0; k < r.identities.size(); ++k) {
        const IdentityReport& id = r.identities[k];
        t.add_row({a, "identity_ci_rel_err", std::to_string(k), format_double(id.rel_err_ci), "", ""});
        t.add_row({a, "identity_cr_rel_err", std::to_string(k), format_double(id.rel_err_cr), "", ""});
    }
    t.add_row({a, "max_ci", "", optional_cell(r.max_ci), "", ""});
    t.add_row({a, "theorem1_bound", "", optional_cell(r.theorem1_bound), "", ""});
    t.add_row({a, "certificate_as_stated", "", flag(r.certificate_as_stated), "", ""});
    t.add_row({a, "certificate_conservative", "", flag(r.certificate_conservative), "", ""});
    t.add_row({a, "interval_lower", "", format_double(r.interval.lower), "", ""});
    t.add_row({a, "interval_upper", "", format_double(r.interval.upper), "", ""});
    for (const Finding& f : r.violations) {
        std::string name = "violation_" + f.check;
        t.add_row({a, name, f.mode_index ? std::to_string(*f.mode_index) : "", "", format_double(f.slack), "0"});
    }
    t.add_row({a, "all_checks", "", "", "", flag(r.ok())});
    return t;
}

nlohmann::json to_json(const IdentityReport& r) {
    return {{"ci_direct", r.ci_direct},       {"ci_identity", r.ci_identity},
            {"cr_direct", r.cr_direct},       {"cr_identity", r.cr_identity},
            {"q_re", r.q_value.real()},       {"q_im", r.q_value.imag()},
            {"rel_err_ci", r.rel_err_ci},     {"rel_err_cr", r.rel_err_cr}};
}

nlohmann::json to_json(const WaveSpeedInterval& w) {
    return {{"lower", w.lower},
            {"upper", w.upper},
            {"case_label", std::string(1, w.case_label)},
            {"applicable_cases", w.applicable_cases}};
}

nlohmann::json to_json(const BoundsReport& r) {
    nlohmann::json ids = nlohmann::json::array();
    for (const auto& id : r.identities) ids.push_back(to_json(id));
    nlohmann::json viol = nlohmann::json::array();
    for (const Finding& f : r.violations)
        viol.push_back({{"mode_index", optional_json(f.mode_index)},
                        {"check", f.check},
                        {"slack", f.slack},
                        {"detail", f.detail}});
    return {{"alpha", r.alpha},
            {"identities", ids},
            {"literal_form_max_rel_err_ci", r.literal_form_max_rel_err_ci},
            {"literal_form_max_rel_err_cr", r.literal_form_max_rel_err_cr},
            {"r1", r.derived.r1},
            {"r2", r.derived.r2},
            {"theorem1_applicable", r.derived.theorem1_applicable},
            {"theorem1_section", r.derived.theorem1_applicable ? "checked" : "skipped"},
            {"r_effective", optional_json(r.r_effective)},
            {"q1", r.extrema.q1},
            {"q2", r.extrema.q2},
            {"max_ci", optional_json(r.max_ci)},
            {"theorem1_bound", optional_json(r.theorem1_bound)},
            {"certificate_as_stated", r.certificate_as_stated},
            {"certificate_conservative", r.certificate_conservative},
            {"stability_certified", r.stability_certified},
            {"interval", to_json(r.interval)},
            {"inequality_checks", r.inequality_checks},
            {"violations", viol},
            {"ok", r.ok()}};
}

nlohmann::json to_json(const CurveTable& t) {
    return {{"alphas", t.alphas},         {"m1_over_2a", t.m1_over_2a}, {"m2_over_2a", t.m2_over_2a},
            {"n1_over_2a", t.n1_over_2a}, {"n2_over_2a", t.n2_over_2a}, {"f_over_2a", t.f_over_2a},
            {"g_over_2a", t.g_over_2a}};
}

nlohmann::json to_json(const RegionPoint& p) {
    return {{"alpha", p.alpha},
            {"r_effective", p.r_effective},
            {"rq1", p.rq1()},
            {"rq2", p.rq2()},
            {"certified", p.certified},
            {"max_ci", optional_json(p.max_ci)},
            {"spectrum_stable", optional_json(p.spectrum_stable)},
            {"error", p.error}};
}

nlohmann::json to_json(const EigenSolution& s) {
    nlohmann::json modes = nlohmann::json::array();
    for (const Mode& m : s.modes)
        modes.push_back({{"c_r", m.c.real()},
                         {"c_i", m.c.imag()},
                         {"residual", m.residual},
                         {"bc_error", m.bc_error},
                         {"converged", m.converged}});
    return {{"alpha", s.problem ? s.problem->alpha : 0.0}, {"modes", modes}};
}

}  // namespace mos
