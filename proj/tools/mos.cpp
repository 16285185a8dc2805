// Command-line front end: spectrum, verify, region and wavespeed subcommands.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "mos/bounds.hpp"
#include "mos/eigensolve.hpp"
#include "mos/pencil.hpp"
#include "mos/regionscan.hpp"
#include "mos/report_io.hpp"

namespace {

using mos::cli::ConfigError;
using mos::cli::OutputFormat;
using mos::cli::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitViolations = 4;

struct Overrides {
    std::string config_path;
    std::string out_path;
    std::string format;
    int n = 0;
    std::string policy;
    bool with_spectrum = false;
    std::string dump_prefix;
    bool inject_corruption = false;
};

RunConfig load(const Overrides& o) {
    RunConfig c;
    try {
        c = mos::cli::parse_config(mos::cli::read_json_file(o.config_path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    if (!o.out_path.empty()) c.out_path = o.out_path;
    if (!o.format.empty()) c.format = mos::cli::parse_format(o.format);
    if (o.n != 0) {
        if (o.n < 16) throw ConfigError("'n' must be at least 16");
        c.n = o.n;
    }
    if (!o.policy.empty()) c.bounds.policy = mos::cli::parse_policy(o.policy);
    if (o.with_spectrum) c.with_spectrum = true;
    return c;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::string render_json(const RunConfig& c, const nlohmann::json& results) {
    nlohmann::json doc = {{"config", c.to_json()}, {"results", results}};
    return doc.dump(2) + "\n";
}

std::string emit_table(const RunConfig& c, const mos::CsvTable& table, const nlohmann::json& results) {
    return c.format == OutputFormat::csv ? mos::render_csv(table, c.to_json()) : render_json(c, results);
}

std::shared_ptr<const mos::EigenProblem> build_problem(const RunConfig& c, double alpha,
                                                       const std::shared_ptr<const mos::SpectralOperator>& op) {
    if (c.classical_reynolds)
        return std::make_shared<const mos::EigenProblem>(mos::classical_pencil(alpha, *c.classical_reynolds, c.flow(), op));
    return std::make_shared<const mos::EigenProblem>(mos::assemble(alpha, *c.params, c.flow(), op));
}

std::vector<mos::EigenSolution> solve_all(const RunConfig& c, const Overrides& o) {
    const auto op = std::make_shared<const mos::SpectralOperator>(c.n);
    std::vector<mos::EigenSolution> out;
    for (std::size_t k = 0; k < c.alphas.size(); ++k) {
        const auto problem = build_problem(c, c.alphas[k], op);
        if (!o.dump_prefix.empty()) mos::dump_matrices_csv(*problem, o.dump_prefix + "_" + std::to_string(k));
        out.push_back(mos::filter(mos::solve(problem), c.cutoffs));
    }
    return out;
}

int cmd_spectrum(const RunConfig& c, const Overrides& o) {
    const auto solutions = solve_all(c, o);
    nlohmann::json results = nlohmann::json::array();
    for (const auto& s : solutions) results.push_back(mos::to_json(s));
    emit(emit_table(c, mos::spectrum_table(solutions), results), c.out_path);
    return kExitOk;
}

int cmd_verify(const RunConfig& c, const Overrides& o) {
    auto solutions = solve_all(c, o);
    const mos::SpectralOperator op(c.n);
    mos::CsvTable table{{}, {}};
    nlohmann::json results = nlohmann::json::array();
    bool ok = true;
    for (auto& s : solutions) {
        if (o.inject_corruption && !s.modes.empty()) mos::perturb_eigenvalue(s, 0, {0.0, 1.0});
        const mos::BoundsReport r = mos::evaluate_all(s, c.flow(), c.effective_params(), op, c.bounds);
        ok = ok && r.ok();
        const mos::CsvTable part = mos::bounds_table(r);
        if (table.columns.empty()) table.columns = part.columns;
        for (const auto& row : part.rows) table.add_row(row);
        results.push_back(mos::to_json(r));
        for (const auto& f : r.violations)
            std::cerr << "violation at alpha " << mos::format_double(r.alpha) << ": " << f.check
                      << (f.mode_index ? " mode " + std::to_string(*f.mode_index) : std::string()) << " slack "
                      << mos::format_double(f.slack) << (f.detail.empty() ? "" : " (" + f.detail + ")") << '\n';
    }
    emit(emit_table(c, table, results), c.out_path);
    return ok ? kExitOk : kExitViolations;
}

std::string grid_path(const std::string& out) {
    if (out.empty()) return out;
    const auto dot = out.find_last_of('.');
    const auto slash = out.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + "_grid";
    return out.substr(0, dot) + "_grid" + out.substr(dot);
}

int cmd_region(const RunConfig& c, const Overrides&) {
    const double lo = *std::min_element(c.alphas.begin(), c.alphas.end());
    const double hi = *std::max_element(c.alphas.begin(), c.alphas.end());
    const int count = static_cast<int>(c.alphas.size());
    if (count < 2 || !(hi > lo)) throw ConfigError("region needs an alpha range with at least two distinct values");
    const mos::CurveTable table = mos::curves(lo, hi, count, c.bounds.beam_root);

    std::vector<mos::RegionPoint> points;
    if (c.region) {
        mos::ClassifyOptions options;
        options.policy = c.bounds.policy;
        options.with_spectrum = c.region->with_spectrum || c.with_spectrum;
        options.n = c.n;
        options.beam_root = c.bounds.beam_root;
        options.cutoffs.modulus_cutoff = c.cutoffs.modulus_cutoff;
        options.cutoffs.residual_cutoff = c.cutoffs.residual_cutoff;
        options.cutoffs.bc_tolerance = c.cutoffs.bc_tolerance;
        points = mos::classify({c.alphas, c.region->rq1.values()}, c.effective_params(), c.flow(), options);
    }

    if (c.format == OutputFormat::json) {
        nlohmann::json grid = nlohmann::json::array();
        for (const auto& p : points) grid.push_back(mos::to_json(p));
        const mos::CurveMinimum m = mos::locate_m1_minimum(table, c.bounds.beam_root);
        emit(render_json(c, {{"curves", mos::to_json(table)},
                             {"m1_minimum", {{"alpha", m.alpha}, {"value", m.value}}},
                             {"grid", grid}}),
             c.out_path);
    } else {
        emit(mos::render_csv(mos::curve_table(table), c.to_json()), c.out_path);
        if (c.region) {
            const std::string text = mos::render_csv(mos::region_table(points), c.to_json());
            if (c.out_path.empty())
                std::cout << text;
            else
                emit(text, grid_path(c.out_path));
        }
    }
    return kExitOk;
}

int cmd_wavespeed(const RunConfig& c, const Overrides& o) {
    const mos::FlowExtrema ex = mos::extrema(c.flow());
    std::vector<mos::EigenSolution> solutions;
    if (c.with_spectrum) solutions = solve_all(c, o);
    mos::CsvTable table{{"alpha", "case", "applicable_cases", "lower", "upper", "cr_min", "cr_max", "inside"}, {}};
    nlohmann::json results = nlohmann::json::array();
    bool ok = true;
    for (std::size_t k = 0; k < c.alphas.size(); ++k) {
        const mos::WaveSpeedInterval w = mos::wave_speed_interval(c.alphas[k], ex);
        std::vector<std::string> row{mos::format_double(c.alphas[k]), std::string(1, w.case_label),
                                     w.applicable_cases, mos::format_double(w.lower), mos::format_double(w.upper)};
        nlohmann::json rec = mos::to_json(w);
        rec["alpha"] = c.alphas[k];
        if (c.with_spectrum && !solutions[k].modes.empty()) {
            double cr_min = INFINITY, cr_max = -INFINITY;
            for (const auto& m : solutions[k].modes) {
                cr_min = std::min(cr_min, m.c.real());
                cr_max = std::max(cr_max, m.c.real());
            }
            const double tol = c.bounds.interval_tol;
            const bool inside = cr_min >= w.lower - tol && cr_max <= w.upper + tol;
            ok = ok && inside;
            row.insert(row.end(), {mos::format_double(cr_min), mos::format_double(cr_max), inside ? "1" : "0"});
            rec["cr_min"] = cr_min;
            rec["cr_max"] = cr_max;
            rec["inside"] = inside;
        } else {
            row.insert(row.end(), {"", "", ""});
        }
        table.add_row(row);
        results.push_back(rec);
    }
    emit(emit_table(c, table, results), c.out_path);
    return ok ? kExitOk : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear stability of micropolar shear flows"};
    app.require_subcommand(1);
    Overrides o;

    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON run configuration")->required();
        sub->add_option("--out", o.out_path, "output file (default: standard output)");
        sub->add_option("--format", o.format, "csv or json");
        sub->add_option("--n", o.n, "Chebyshev grid order (>= 16)");
        sub->add_option("--policy", o.policy, "certificate policy: as-stated or conservative");
        sub->add_flag("--with-spectrum", o.with_spectrum, "also solve the eigenproblem where optional");
        sub->add_option("--dump-matrices", o.dump_prefix, "write A and B as CSV with this path prefix");
        sub->add_flag("--inject-corruption", o.inject_corruption)->group("");
    };
    CLI::App* spectrum = app.add_subcommand("spectrum", "filtered eigenvalues per alpha");
    CLI::App* verify = app.add_subcommand("verify", "eigenvalues plus every bound and identity check");
    CLI::App* region = app.add_subcommand("region", "threshold curves and certified-region classification");
    CLI::App* wavespeed = app.add_subcommand("wavespeed", "phase-speed intervals per alpha");
    for (CLI::App* sub : {spectrum, verify, region, wavespeed}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const RunConfig c = load(o);
        if (spectrum->parsed()) return cmd_spectrum(c, o);
        if (verify->parsed()) return cmd_verify(c, o);
        if (region->parsed()) return cmd_region(c, o);
        return cmd_wavespeed(c, o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    }
}
