#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "contracta/certificate.hpp"
#include "contracta/errors.hpp"
#include "contracta/metric.hpp"
#include "contracta/neldermead.hpp"
#include "contracta/parallel.hpp"
#include "contracta/region.hpp"
#include "contracta/system.hpp"

namespace contracta {

/// Parametric metric family P(x) = P0 * exp(gamma * v(x)) with P0 = L L^T from
/// a lower-triangular factor whose diagonal is log-parametrized (keeps the
/// reconstruction unconditionally SPD) and trace-normalized to n (the roots
/// are scale-invariant, so the normalization removes a flat direction).
struct MetricFamily {
    int n = 0;
    VectorXd p0param;  // n(n+1)/2 entries, row-major lower triangle, log diagonal
    double gamma = 0.0;
    std::function<double(const VectorXd&)> potential;
    std::function<double(const VectorXd&)> potentialDot;

    static int param_count(int n) { return n * (n + 1) / 2; }

    MatrixXd P0() const {
        if (p0param.size() != param_count(n)) throw InputError("MetricFamily: bad parameter size");
        MatrixXd L = MatrixXd::Zero(n, n);
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j, ++k)
                L(i, j) = (i == j) ? std::exp(p0param[k]) : p0param[k];
        MatrixXd P = L * L.transpose();
        return P * (static_cast<double>(n) / P.trace());
    }

    MetricField field() const {
        return exponential_metric(P0(), gamma, potential, potentialDot, "synthesized family");
    }

    /// Identity base point of the parametrization.
    static VectorXd identity_params(int n) { return VectorXd::Zero(param_count(n)); }
};

/// Max over the sampling grid of the forward functional for the family; the
/// family certifies the dimension when this is negative.
inline double feasibility(const DynamicalSystem& sys, const MetricFamily& family,
                          const Region& region, const FractionalDimension& dim,
                          bool parallel = true) {
    MatrixXd P0 = family.P0();
    if (!is_spd(P0)) return std::numeric_limits<double>::infinity();
    MetricField field = family.field();
    const auto pts = region.grid_points();
    std::vector<double> vals(pts.size());
    auto eval = [&](long i) {
        const MatrixXd P = field.P(pts[i]);
        const MatrixXd Pdot = field.Pdot(pts[i]);
        if (!is_spd(P) || !Pdot.allFinite()) {  // overflown exponent etc.
            vals[i] = std::numeric_limits<double>::infinity();
            return;
        }
        const auto roots = criterion_roots(sys.jacobian(pts[i]), P, Pdot);
        vals[i] = xi_d(roots, dim).forward;
    };
    if (parallel)
        parallel_for(static_cast<long>(pts.size()), eval);
    else
        for (long i = 0; i < static_cast<long>(pts.size()); ++i) eval(i);
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : vals) mx = std::max(mx, v);
    return mx;
}

struct SynthesisOptions {
    int restarts = 10;
    unsigned long seedBase = 0;  // restart i uses seed seedBase + i
    int maxEval = 600;           // Nelder-Mead budget per restart per level
    double bisectTol = 1e-4;
    int innerCoarsening = 5;  // lattice decimation for the inner search grid
};

struct SynthesisResult {
    bool feasible = false;
    double sStar = 1.0;
    MetricFamily params;
    double worstXi = std::numeric_limits<double>::infinity();
    int restarts = 0;
    std::vector<double> trace;  // accepted upper bounds on s, non-increasing
    GridMeta grid;
    std::vector<unsigned long> seeds;
};

namespace detail {

inline Region coarsen(const Region& region, int factor) {
    long total = 1;
    for (int c : region.counts) total *= c;
    if (total <= 4096) return region;  // small grids are cheap; don't lose resolution
    Region out = region;
    // keep at least 3 samples per refined axis so interior points (and with
    // them any indicator-restricted mass) survive the decimation
    for (auto& c : out.counts)
        if (c > 2) c = std::max(3, (c - 1) / factor + 1);
    return out;
}

/// Family search at fixed s: multi-restart Nelder-Mead on the coarse grid,
/// then certification of every candidate on the full grid. Deterministic:
/// restarts are seeded and the reduction is by (certified value, index).
struct LevelResult {
    MetricFamily family;
    double certifiedXi = std::numeric_limits<double>::infinity();
    bool feasible = false;
};

inline LevelResult optimize_level(
    const DynamicalSystem& sys, int d0, double s, const Region& region, const Region& coarse,
    const std::function<double(const VectorXd&)>& potential,
    const std::function<double(const VectorXd&)>& potentialDot, const SynthesisOptions& opts,
    const std::vector<MetricFamily>& warm_starts) {
    const int n = sys.dim();
    const int np = MetricFamily::param_count(n);
    const FractionalDimension dim =
        s > 0.0 ? FractionalDimension::of(d0 + s, n) : FractionalDimension::of(d0, n);

    auto unpack = [&](const VectorXd& theta) {
        MetricFamily fam;
        fam.n = n;
        fam.p0param = theta.head(np);
        fam.gamma = std::exp(theta[np]);
        fam.potential = potential;
        fam.potentialDot = potentialDot;
        return fam;
    };
    auto objective = [&](const VectorXd& theta) {
        MetricFamily fam = unpack(theta);
        MatrixXd P0 = fam.P0();
        if (!P0.allFinite()) return 1e12;
        // numerical-degeneracy guard on the reconstruction
        const double lmin = symmetric_eigenvalues(P0).minCoeff();
        double penalty = 1e6 * std::max(0.0, 1e-8 - lmin);
        return feasibility(sys, fam, coarse, dim, /*parallel=*/false) + penalty;
    };

    std::vector<VectorXd> starts;
    for (const auto& w : warm_starts) {
        VectorXd theta(np + 1);
        theta.head(np) = w.p0param;
        theta[np] = std::log(std::max(w.gamma, 1e-8));
        starts.push_back(theta);
    }
    for (int r = 0; r < opts.restarts; ++r) {
        std::mt19937_64 rng(opts.seedBase + static_cast<unsigned long>(r));
        std::normal_distribution<double> g(0.0, 0.4);
        VectorXd theta = VectorXd::Zero(np + 1);
        for (int i = 0; i < np; ++i) theta[i] = g(rng);
        theta[np] = std::log(0.3) + g(rng);  // gamma around 0.3
        starts.push_back(theta);
    }

    std::vector<MetricFamily> candidates(starts.size());
    parallel_for(static_cast<long>(starts.size()), [&](long i) {
        NelderMeadOptions nm;
        nm.maxEval = opts.maxEval;
        nm.initialStep = 0.3;
        candidates[i] = unpack(nelder_mead(objective, starts[i], nm).x);
    });

    LevelResult best;
    for (size_t i = 0; i < candidates.size(); ++i) {
        const double certified = feasibility(sys, candidates[i], region, dim);
        if (certified < best.certifiedXi) {
            best.certifiedXi = certified;
            best.family = candidates[i];
        }
    }
    best.feasible = best.certifiedXi < 0.0;
    return best;
}

}  // namespace detail

/// Search for a family certifying dimension d0 + s at a fixed s.
inline SynthesisResult synthesize_at_s(const DynamicalSystem& sys, int d0, double s,
                                       const Region& region,
                                       std::function<double(const VectorXd&)> potential,
                                       std::function<double(const VectorXd&)> potentialDot,
                                       const SynthesisOptions& opts = {}) {
    if (d0 < 1 || d0 >= sys.dim()) throw InputError("synthesize_at_s: d0 out of range");
    const Region coarse = detail::coarsen(region, opts.innerCoarsening);
    auto level =
        detail::optimize_level(sys, d0, s, region, coarse, potential, potentialDot, opts, {});
    SynthesisResult out;
    out.feasible = level.feasible;
    out.sStar = s;
    out.params = level.family;
    out.worstXi = level.certifiedXi;
    out.restarts = opts.restarts;
    out.grid = GridMeta::of(region, static_cast<long>(region.grid_points().size()));
    for (int r = 0; r < opts.restarts; ++r) out.seeds.push_back(opts.seedBase + r);
    return out;
}

/// Smallest certified fractional part: outer bisection on s in [0, 1] (the
/// forward functional is monotone in s wherever the pivot root is negative),
/// inner multi-restart Nelder-Mead over (P0 factor, gamma) with warm starts
/// carried down from the last feasible level.
inline SynthesisResult minimize_fractional_s(const DynamicalSystem& sys, int d0,
                                             const Region& region,
                                             std::function<double(const VectorXd&)> potential,
                                             std::function<double(const VectorXd&)> potentialDot,
                                             const SynthesisOptions& opts = {}) {
    if (d0 < 1 || d0 >= sys.dim()) throw InputError("minimize_fractional_s: d0 out of range");
    const Region coarse = detail::coarsen(region, opts.innerCoarsening);

    SynthesisResult out;
    out.restarts = opts.restarts;
    out.grid = GridMeta::of(region, static_cast<long>(region.grid_points().size()));
    for (int r = 0; r < opts.restarts; ++r) out.seeds.push_back(opts.seedBase + r);

    auto run = [&](double s, const std::vector<MetricFamily>& warm) {
        return detail::optimize_level(sys, d0, s, region, coarse, potential, potentialDot, opts,
                                      warm);
    };

    // quick exit when even s = 0 certifies
    auto at_zero = run(0.0, {});
    if (at_zero.feasible) {
        out.feasible = true;
        out.sStar = 0.0;
        out.params = at_zero.family;
        out.worstXi = at_zero.certifiedXi;
        out.trace.push_back(0.0);
        return out;
    }

    auto at_one = run(1.0, {at_zero.family});
    if (!at_one.feasible) {
        out.feasible = false;  // nothing certifiable at this d0; try d0 + 1
        out.sStar = 1.0;
        out.params = at_one.family;
        out.worstXi = at_one.certifiedXi;
        return out;
    }

    double lo = 0.0, hi = 1.0;
    MetricFamily witness = at_one.family;
    double witnessXi = at_one.certifiedXi;
    out.trace.push_back(1.0);
    while (hi - lo > opts.bisectTol) {
        const double mid = 0.5 * (lo + hi);
        auto level = run(mid, {witness});
        if (level.feasible) {
            hi = mid;
            witness = level.family;
            witnessXi = level.certifiedXi;
            out.trace.push_back(hi);
        } else {
            lo = mid;
        }
    }
    out.feasible = true;
    out.sStar = hi;
    out.params = witness;
    out.worstXi = witnessXi;
    return out;
}

}  // namespace contracta
