#include "mos/regionscan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "mos/pencil.hpp"

namespace mos {

CurveTable curves(double alpha_min, double alpha_max, int count, double beam_root) {
    if (!(alpha_min > 0.0) || !(alpha_max > alpha_min) || !std::isfinite(alpha_max))
        throw std::invalid_argument("curve range needs 0 < alpha_min < alpha_max");
    if (count < 2) throw std::invalid_argument("curve table needs at least two points");
    CurveTable t;
    const double step = (alpha_max - alpha_min) / (count - 1);
    for (int k = 0; k < count; ++k) {
        const double a = k == count - 1 ? alpha_max : alpha_min + k * step;
        const StabilityThresholds s = thresholds(a, beam_root);
        const double h = 2.0 * a;
        t.alphas.push_back(a);
        t.m1_over_2a.push_back(s.m1 / h);
        t.m2_over_2a.push_back(s.m2 / h);
        t.n1_over_2a.push_back(s.n1 / h);
        t.n2_over_2a.push_back(s.n2 / h);
        t.f_over_2a.push_back(s.f_alpha / h);
        t.g_over_2a.push_back(s.g_alpha / h);
    }
    return t;
}

CurveMinimum locate_m1_minimum(const CurveTable& table, double beam_root) {
    if (table.size() < 2) throw std::invalid_argument("curve table needs at least two points");
    const auto it = std::min_element(table.m1_over_2a.begin(), table.m1_over_2a.end());
    const std::size_t k = static_cast<std::size_t>(it - table.m1_over_2a.begin());
    const double lo = table.alphas[k == 0 ? 0 : k - 1];
    const double hi = table.alphas[std::min(k + 1, table.size() - 1)];
    auto m1_over_2a = [beam_root](double a) { return thresholds(a, beam_root).m1 / (2.0 * a); };
    const auto [alpha, value] =
        boost::math::tools::brent_find_minima(m1_over_2a, lo, hi, std::numeric_limits<double>::digits);
    return {alpha, value};
}

unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MOS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto run = [&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<RegionPoint> classify(const RegionGrid& grid, const MicropolarParams& params, const BaseFlow& flow,
                                  const ClassifyOptions& options) {
    params.validate();
    if (grid.alphas.empty() || grid.rq1_values.empty()) throw std::invalid_argument("region grid is empty");
    const DerivedParams derived = derive(params);
    const double r = derived.r_effective();
    const FlowExtrema base = extrema(flow);
    const auto op = std::make_shared<const SpectralOperator>(options.n);

    const std::size_t cols = grid.rq1_values.size();
    std::vector<RegionPoint> out(grid.alphas.size() * cols);
    parallel_for(out.size(), worker_count(options.threads), [&](std::size_t idx) {
        RegionPoint& p = out[idx];
        p.alpha = grid.alphas[idx / cols];
        p.r_effective = r;
        try {
            const double factor = base.q1 > 0.0 ? grid.rq1_values[idx % cols] / (r * base.q1) : 1.0;
            const BaseFlow scaled = flow.scaled(factor);
            const FlowExtrema ex = extrema(scaled);
            p.q1 = ex.q1;
            p.q2 = ex.q2;
            p.certified = stability_certificate(p.alpha, r, p.q1, p.q2, options.policy, options.beam_root);
            if (options.with_spectrum) {
                const EigenSolution sol = solve_filtered(assemble(p.alpha, params, scaled, op), options.cutoffs,
                                                          options.polish_limit);
                p.max_ci = sol.max_ci();
                p.spectrum_stable = !p.max_ci || *p.max_ci <= options.stable_tol;
            }
        } catch (const std::exception& e) {
            p.error = e.what();
        }
    });
    return out;
}

double leading_growth(const EigenProblem& problem, double modulus_cutoff) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : solve_eigenvalues(problem))
        if (std::abs(c) <= modulus_cutoff) best = std::max(best, c.imag());
    if (!std::isfinite(best)) throw SolverError("no eigenvalue below the modulus cutoff");
    return best;
}

ReynoldsBracket bracket_critical_reynolds(double re_lo, double re_hi, double alpha_lo, double alpha_hi, int n,
                                          double re_tol) {
    if (!(re_lo > 0.0) || !(re_hi > re_lo)) throw std::invalid_argument("need 0 < re_lo < re_hi");
    if (!(alpha_lo > 0.0) || !(alpha_hi > alpha_lo)) throw std::invalid_argument("need 0 < alpha_lo < alpha_hi");
    const auto op = std::make_shared<const SpectralOperator>(n);
    const BaseFlow flow = make_profile("poiseuille");

    // Largest growth over the alpha window and where it occurs.
    auto growth = [&](double re) {
        auto neg_ci = [&](double a) { return -leading_growth(classical_pencil(a, re, flow, op)); };
        const auto [a, v] = boost::math::tools::brent_find_minima(neg_ci, alpha_lo, alpha_hi, 30);
        return std::pair<double, double>{-v, a};
    };

    ReynoldsBracket b{re_lo, re_hi, 0.0, 0};
    const auto lo = growth(re_lo);
    const auto hi = growth(re_hi);
    if (!(lo.first < 0.0)) throw std::invalid_argument("lower Reynolds number is not stable");
    if (!(hi.first > 0.0)) throw std::invalid_argument("upper Reynolds number is not unstable");
    b.alpha_at_upper = hi.second;
    while (b.upper - b.lower > re_tol) {
        const double mid = 0.5 * (b.lower + b.upper);
        const auto g = growth(mid);
        if (g.first > 0.0) {
            b.upper = mid;
            b.alpha_at_upper = g.second;
        } else {
            b.lower = mid;
        }
        ++b.iterations;
    }
    return b;
}

}  // namespace mos
