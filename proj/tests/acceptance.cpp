// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Every tolerance and runtime budget is fixed here.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "classical_os.hpp"
#include "mos/bounds.hpp"
#include "mos/eigensolve.hpp"
#include "mos/pencil.hpp"
#include "mos/regionscan.hpp"
#include "mos/report_io.hpp"

namespace {

using cd = std::complex<double>;
using std::numbers::pi;

constexpr double kIdentityTol = 1e-6;
constexpr double kBoundTol = 1e-8;
constexpr double kStableTol = 1e-8;
constexpr double kIntervalTol = 1e-8;
constexpr double kOracleTol = 1e-4;
constexpr double kReLow = 5770.0;
constexpr double kReHigh = 5776.0;
constexpr double kInequalityTol = 1e-9;
constexpr double kSineRatioTol = 1e-8;
constexpr double kConvergenceTol = 1e-8;
constexpr double kCurveTol = 1e-12;
constexpr double kMinimumTol = 1e-6;

const mos::MicropolarParams kParams{0.8, 10, 1, 15, 1};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v, int digits = 3) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::shared_ptr<const mos::SpectralOperator> grid(int n) { return std::make_shared<const mos::SpectralOperator>(n); }

mos::EigenSolution solve_micropolar(double alpha, const mos::MicropolarParams& p, const mos::BaseFlow& flow,
                                    const std::shared_ptr<const mos::SpectralOperator>& op) {
    return mos::filter(mos::solve(std::make_shared<const mos::EigenProblem>(mos::assemble(alpha, p, flow, op))));
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Outcome identities() {
    Stopwatch clock;
    const auto op = grid(100);
    std::size_t modes = 0;
    double worst = 0;
    for (const char* name : {"poiseuille", "couette"}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            const auto sol = solve_micropolar(alpha, kParams, mos::make_profile(name), op);
            for (const auto& m : sol.modes) {
                const auto r = mos::identity_report(m, *sol.problem);
                worst = std::max({worst, r.rel_err_ci, r.rel_err_cr});
                ++modes;
            }
        }
    }
    const double t = clock.seconds();
    return {modes > 0 && worst <= kIdentityTol && t < 30,
            std::to_string(modes) + " modes, max relative error " + num(worst) + ", " + num(t) + " s"};
}

Outcome growth_bound() {
    Stopwatch clock;
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> log_value(std::log(0.2), std::log(50.0));
    std::uniform_real_distribution<double> alpha_dist(0.2, 3.0);
    const auto op = grid(100);
    const mos::BaseFlow flow = mos::make_profile("couette");
    const mos::FlowExtrema ex = mos::extrema(flow);
    int accepted = 0;
    int violations = 0;
    double worst = -INFINITY;
    while (accepted < 50) {
        auto draw = [&] { return std::exp(log_value(rng)); };
        const mos::MicropolarParams p{draw(), draw(), draw(), draw(), draw()};
        const auto d = mos::derive(p);
        if (!d.theorem1_applicable) continue;
        ++accepted;
        const double alpha = alpha_dist(rng);
        const auto sol = solve_micropolar(alpha, p, flow, op);
        if (!sol.max_ci()) continue;
        const double excess = *sol.max_ci() - mos::theorem1_bound(alpha, d, ex);
        worst = std::max(worst, excess);
        if (excess > kBoundTol) ++violations;
    }
    const double t = clock.seconds();
    return {violations == 0 && t < 300,
            "50 configurations, max(C_i - bound) = " + num(worst) + ", " + num(t) + " s"};
}

Outcome certificate() {
    Stopwatch clock;
    const mos::BaseFlow flow = mos::make_profile("couette");
    const double r = mos::derive(kParams).r_effective();
    int points = 0, uncertified = 0, unstable = 0, errors = 0;
    double worst = -INFINITY;
    std::vector<mos::RegionPoint> all;
    for (int i = 0; i < 20; ++i) {
        const double alpha = 0.5 + 2.5 * i / 19.0;
        const auto t = mos::thresholds(alpha);
        // Conservative region: alpha R q1 <= f/2 (q2 = 0 for couette). The grid stops
        // just short of the edge so rounding in q1 cannot move a point outside it.
        const double cap = 0.999 * std::min(60.0, t.f_alpha / (2 * alpha));
        mos::RegionGrid g{{alpha}, {}};
        for (int j = 0; j < 20; ++j) g.rq1_values.push_back(1.0 + (cap - 1.0) * j / 19.0);
        mos::ClassifyOptions options;
        options.with_spectrum = true;
        options.n = 100;
        for (const auto& p : mos::classify(g, kParams, flow, options)) all.push_back(p);
    }
    for (const auto& p : all) {
        ++points;
        if (!p.certified) ++uncertified;
        if (!p.error.empty() || !p.max_ci) {
            ++errors;
            continue;
        }
        worst = std::max(worst, *p.max_ci);
        if (*p.max_ci > kStableTol) ++unstable;
    }
    const double t = clock.seconds();
    return {points == 400 && uncertified == 0 && unstable == 0 && errors == 0 && t < 300,
            std::to_string(points) + " points (R = " + num(r) + "), " + std::to_string(uncertified) +
                " uncertified, max C_i = " + num(worst) + ", " + num(t) + " s"};
}

Outcome wave_speeds() {
    Stopwatch clock;
    struct Case {
        char label;
        std::vector<double> u, w;
    };
    // Each flow realises the sign pattern of one case.
    const std::vector<Case> cases{{'a', {0, 0, 1}, {0, 1, 1}},
                                  {'b', {0, 0, 1}, {0, -1, 1}},
                                  {'d', {0, 0, -1.5, 1}, {0, 1}},
                                  {'g', {0, 4, -4}, {0, 1}},
                                  {'i', {0, 4, -4}, {0, -1}}};
    const auto op = grid(100);
    int checked = 0, outside = 0, wrong_case = 0;
    double worst = -INFINITY;
    for (const Case& c : cases) {
        const mos::BaseFlow flow = mos::make_profile(c.u, c.w, std::string(1, c.label));
        const mos::FlowExtrema ex = mos::extrema(flow);
        for (double alpha : {0.5, 1.0, 2.0}) {
            const auto iv = mos::wave_speed_interval(alpha, ex);
            if (iv.case_label != c.label) ++wrong_case;
            for (const auto& m : solve_micropolar(alpha, kParams, flow, op).modes) {
                ++checked;
                const double excess = std::max(iv.lower - m.c.real(), m.c.real() - iv.upper);
                worst = std::max(worst, excess);
                if (excess > kIntervalTol) ++outside;
            }
        }
    }
    const auto pois = mos::wave_speed_interval(1.0, mos::extrema(mos::make_profile("poiseuille")));
    const bool exact = pois.lower == -4.0 && pois.upper == 1.0;
    return {checked > 0 && outside == 0 && wrong_case == 0 && exact,
            std::to_string(checked) + " modes, max excursion " + num(worst) + ", poiseuille [" + num(pois.lower) +
                ", " + num(pois.upper) + "] case " + pois.case_label + ", " + num(clock.seconds()) + " s"};
}

Outcome classical_limit() {
    Stopwatch eig_clock;
    const auto problem = std::make_shared<const mos::EigenProblem>(
        mos::classical_pencil(1.0, 1e4, mos::make_profile("poiseuille"), grid(100)));
    const auto sol = mos::filter(mos::solve(problem));
    const cd lead = sol.modes.empty() ? cd(NAN, NAN) : sol.modes.front().c;
    const cd ref = oracle::leading_wave_speed(1.0, 1e4, 100);
    const double dr = std::abs(lead.real() - ref.real());
    const double di = std::abs(lead.imag() - ref.imag());
    const double t_eig = eig_clock.seconds();

    Stopwatch bracket_clock;
    const auto b = mos::bracket_critical_reynolds(5000, 7000, 0.9, 1.15, 100, 1.0);
    const double t_bracket = bracket_clock.seconds();
    const bool pass = dr <= kOracleTol && di <= kOracleTol && t_eig < 120 && b.lower >= kReLow &&
                      b.upper <= kReHigh && t_bracket < 600;
    char c_text[64];
    std::snprintf(c_text, sizeof c_text, "%.10f%+.10fi", lead.real(), lead.imag());
    return {pass, std::string("C = ") + c_text + " (oracle offset " + num(std::max(dr, di)) + ", " + num(t_eig) +
                      " s), Re_c in [" + num(b.lower, 7) + ", " + num(b.upper, 7) + "] at alpha " +
                      num(b.alpha_at_upper) + " (" + num(t_bracket) + " s)"};
}

cd poly(const std::vector<cd>& c, double y) {
    cd v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * y + *it;
    return v;
}

Outcome inequalities() {
    Stopwatch clock;
    const mos::SpectralOperator op(48);
    auto sample = [&op](auto f) {
        mos::GridFunction g(op.size());
        for (Eigen::Index j = 0; j < op.size(); ++j) g(j) = f(op.nodes()(j));
        return g;
    };
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> alpha_dist(0.2, 3.0);
    auto random_coeffs = [&](int degree) {
        std::vector<cd> c(degree + 1);
        for (cd& v : c) v = cd(coeff(rng), coeff(rng));
        return c;
    };
    int checks = 0, failures = 0;
    double worst = INFINITY;
    for (int draw = 0; draw < 100; ++draw) {
        // Degrees: y^2 (1-y)^2 p with deg p <= 8, y (1-y) q with deg q <= 10.
        const auto p = random_coeffs(static_cast<int>(rng() % 9));
        const auto q = random_coeffs(static_cast<int>(rng() % 11));
        const auto phi = sample([&](double y) { return y * y * (1 - y) * (1 - y) * poly(p, y); });
        const auto omega = sample([&](double y) { return y * (1 - y) * poly(q, y); });
        for (const auto& c : mos::functional_inequalities(phi, omega, alpha_dist(rng), op).checks) {
            ++checks;
            const double scale = std::max(std::abs(c.lhs), std::abs(c.rhs));
            worst = std::min(worst, scale > 0 ? c.slack / scale : 0.0);
            if (c.slack < -kInequalityTol * scale) ++failures;
        }
    }
    const mos::SpectralOperator fine(64);
    mos::GridFunction s(fine.size());
    for (Eigen::Index j = 0; j < fine.size(); ++j) s(j) = std::pow(std::sin(pi * fine.nodes()(j)), 2);
    const auto in = mos::mode_integrals(s, mos::GridFunction::Zero(fine.size()), 1.0, fine);
    const double ratio_err = std::abs(in.d2phi / in.phi - 16 * std::pow(pi, 4) / 3);
    return {failures == 0 && checks == 600 && ratio_err <= kSineRatioTol,
            std::to_string(checks) + " checks, min relative slack " + num(worst) + ", sin^2 ratio error " +
                num(ratio_err) + ", " + num(clock.seconds()) + " s"};
}

Outcome convergence() {
    Stopwatch clock;
    const mos::BaseFlow flow = mos::make_profile("couette");
    const auto lo = solve_micropolar(1.0, kParams, flow, grid(100));
    const auto hi = solve_micropolar(1.0, kParams, flow, grid(140));
    if (lo.modes.empty() || hi.modes.empty()) return {false, "no retained mode"};
    const double shift = std::abs(lo.modes.front().c - hi.modes.front().c);
    return {shift < kConvergenceTol, "leading mode moves by " + num(shift) + ", " + num(clock.seconds()) + " s"};
}

Outcome curves() {
    const double b = mos::kBeamRootShort;
    const mos::CurveTable t = mos::curves(0.1, 10.0, 1000);
    double worst = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double a = t.alphas[k];
        const double m1 = (b * b * pi + 2 * a * a * pi) / (2 * a);
        const double m2 = (b * b * pi + 2 * std::sqrt(2.0) * a * a * a) / (2 * a);
        const double n1 = (2 * b * b * pi + 2 * a * a * a) / (2 * a);
        const double n2 = (2 * b * b * pi + 2 * std::sqrt(2.0) * a * pi) / (2 * a);
        worst = std::max({worst, std::abs(t.m1_over_2a[k] - m1), std::abs(t.m2_over_2a[k] - m2),
                          std::abs(t.n1_over_2a[k] - n1), std::abs(t.n2_over_2a[k] - n2),
                          std::abs(t.f_over_2a[k] - std::max(m1, m2)), std::abs(t.g_over_2a[k] - std::max(n1, n2))});
    }
    const auto m = mos::locate_m1_minimum(t);
    const double offset = std::abs(m.alpha - b / std::sqrt(2.0));
    return {worst <= kCurveTol && offset <= kMinimumTol,
            "max curve deviation " + num(worst) + ", M1/(2a) minimum at " + std::to_string(m.alpha) + " (offset " +
                num(offset) + ")"};
}

std::string region_csv(unsigned threads) {
    mos::RegionGrid g{{0.5, 1.0, 1.5, 2.0}, {5.0, 20.0, 35.0}};
    mos::ClassifyOptions options;
    options.with_spectrum = true;
    options.n = 48;
    options.threads = threads;
    return mos::render_csv(mos::region_table(mos::classify(g, kParams, mos::make_profile("couette"), options)),
                           {{"threads", "any"}});
}

std::string spectrum_csv() {
    std::vector<mos::EigenSolution> sols;
    for (double alpha : {0.5, 1.0})
        sols.push_back(solve_micropolar(alpha, kParams, mos::make_profile("poiseuille"), grid(64)));
    return mos::render_csv(mos::spectrum_table(sols), {{"n", 64}});
}

int run_cli(const std::string& args) {
    const int status = std::system((std::string(MOS_CLI_PATH) + " " + args + " 2>/dev/null").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    bool same = spectrum_csv() == spectrum_csv();
    same = same && region_csv(1) == region_csv(1) && region_csv(1) == region_csv(4);

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mos_acceptance";
    fs::create_directories(dir);
    std::ofstream(dir / "c.json") << R"({"profile": "couette",
        "params": {"r0": 0.8, "rk": 10, "rmu": 1, "rnu": 15, "rgamma": 1}, "alpha": [0.5, 1.0], "n": 100})";
    int cli_runs = 0;
    for (const std::string cmd : {"spectrum", "verify", "wavespeed --with-spectrum"}) {
        const std::string base = cmd + " --config " + (dir / "c.json").string() + " --out ";
        const bool ok = run_cli(base + (dir / "a.csv").string()) == 0 && run_cli(base + (dir / "b.csv").string()) == 0;
        same = same && ok && slurp(dir / "a.csv") == slurp(dir / "b.csv") && !slurp(dir / "a.csv").empty();
        cli_runs += 2;
    }
    fs::remove_all(dir);
    return {same, "library tables and " + std::to_string(cli_runs) + " CLI runs byte-identical: " +
                      (same ? "yes" : "no")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 energy identities", identities},
        {"2 growth bound soundness", growth_bound},
        {"3 certificate soundness", certificate},
        {"4 wave-speed intervals", wave_speeds},
        {"5 classical limit", classical_limit},
        {"6 functional inequalities", inequalities},
        {"7 spectral convergence", convergence},
        {"8 threshold curves", curves},
        {"9 determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("[%s] criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
