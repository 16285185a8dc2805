#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mos/baseflow.hpp"
#include "mos/bounds.hpp"
#include "mos/eigensolve.hpp"
#include "mos/params.hpp"

namespace mos {

/// Threshold curves divided by 2 alpha on a uniform alpha grid.
struct CurveTable {
    std::vector<double> alphas;
    std::vector<double> m1_over_2a, m2_over_2a, n1_over_2a, n2_over_2a;
    std::vector<double> f_over_2a, g_over_2a;

    std::size_t size() const { return alphas.size(); }
};

/// Tabulates the curves at `count` equally spaced alphas in [alpha_min, alpha_max].
CurveTable curves(double alpha_min, double alpha_max, int count, double beam_root = kBeamRootShort);

struct CurveMinimum {
    double alpha = 0;
    double value = 0;
};

/// Minimum of M1/(2a): the smallest tabulated value brackets it and Brent's
/// method refines it on the neighbouring interval.
CurveMinimum locate_m1_minimum(const CurveTable& table, double beam_root = kBeamRootShort);

/// Points of the (alpha, R q1) plane. R q2 follows from the profile shape.
struct RegionGrid {
    std::vector<double> alphas;
    std::vector<double> rq1_values;
};

struct RegionPoint {
    double alpha = 0;
    double r_effective = 0;
    double q1 = 0, q2 = 0;  // extrema of the amplitude-scaled flow
    double rq1() const { return r_effective * q1; }
    double rq2() const { return r_effective * q2; }
    bool certified = false;
    std::optional<double> max_ci;
    std::optional<bool> spectrum_stable;
    std::string error;  // non-empty when this point failed; the scan continues
};

struct ClassifyOptions {
    CertificatePolicy policy = CertificatePolicy::conservative;
    bool with_spectrum = false;
    int n = 100;
    FilterCutoffs cutoffs{.refine = false};
    double polish_limit = 0;   // eigenvector polishing bound passed to solve(); 0 skips it
    double stable_tol = 1e-8;  // spectrum_stable iff max C_i <= stable_tol
    double beam_root = kBeamRootShort;
    unsigned threads = 0;      // 0: MOS_THREADS or the hardware concurrency
};

/// Classifies every grid point, row-major (alpha outer, R q1 inner).
///
/// The parameters are held fixed, so R = 1/inv_r is fixed; each point scales
/// the flow amplitude so that R q1 takes the requested value. A flow with
/// q1 = 0 is used unscaled. Throws std::logic_error when the parameter
/// template does not satisfy r1 > r2.
std::vector<RegionPoint> classify(const RegionGrid& grid, const MicropolarParams& params, const BaseFlow& flow,
                                  const ClassifyOptions& options = {});

/// Worker count: `requested` if nonzero, else MOS_THREADS if set and positive,
/// else the hardware concurrency (at least 1).
unsigned worker_count(unsigned requested = 0);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Results must be
/// written to per-index slots, which keeps the outcome independent of scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

/// Largest C_i over all finite eigenvalues with |C| <= modulus_cutoff.
double leading_growth(const EigenProblem& problem, double modulus_cutoff = 1e4);

struct ReynoldsBracket {
    double lower = 0;  // every alpha in the window is stable here
    double upper = 0;  // some alpha in the window is amplified here
    double alpha_at_upper = 0;
    int iterations = 0;
};

/// Bisection on Re for the classical plane Poiseuille problem (half-width
/// scaling): the growth function is the maximum over alpha in
/// [alpha_lo, alpha_hi] of the leading C_i. Requires a stable `re_lo` and an
/// unstable `re_hi`; stops once the bracket is narrower than `re_tol`.
ReynoldsBracket bracket_critical_reynolds(double re_lo, double re_hi, double alpha_lo, double alpha_hi, int n,
                                          double re_tol = 1.0);

}  // namespace mos
