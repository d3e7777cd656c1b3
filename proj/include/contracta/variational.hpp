#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "contracta/errors.hpp"
#include "contracta/fractional.hpp"
#include "contracta/integrate.hpp"
#include "contracta/linalg.hpp"
#include "contracta/system.hpp"

namespace contracta {

/// State of the linearized flow: the true flow Jacobian is exp(logScale) * X.
/// X is renormalized by its max-abs entry whenever that entry leaves
/// [1e-100, 1e100], so entries never overflow while the scale lives in
/// log space.
struct VariationalState {
    double t = 0.0;
    VectorXd x;
    MatrixXd X;
    double logScale = 0.0;

    /// Descending singular values of the true Jacobian expressed as logs.
    VectorXd log_singular_values() const {
        VectorXd sv = singular_values(X);
        return sv.array().log() + logScale;
    }

    /// Condition number of the stored factor (scale cancels).
    double cond() const {
        VectorXd sv = singular_values(X);
        return sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1]
                                       : std::numeric_limits<double>::infinity();
    }
};

/// Cocycle composition: given X(t, x0) and X(tau, phi^t x0), forms X(t+tau, x0).
inline VariationalState compose_cocycle(const VariationalState& first,
                                        const VariationalState& second) {
    VariationalState out;
    out.t = first.t + second.t;
    out.x = second.x;
    out.X = second.X * first.X;
    out.logScale = first.logScale + second.logScale;
    const double m = out.X.cwiseAbs().maxCoeff();
    if (m > 0.0 && (m > 1e100 || m < 1e-100)) {
        out.X /= m;
        out.logScale += std::log(m);
    }
    return out;
}

namespace detail {

// Keeping matrix blocks at unit scale makes the integrator's mixed tolerance
// act as a relative tolerance on them; the rescale is exact in log space.
constexpr double kRenormHi = 1e3;
constexpr double kRenormLo = 1e-3;

/// Rescales the trailing blocks of a packed state by their max-abs entries.
/// Valid under FSAL because the variational right-hand sides are linear in
/// those blocks. `blocks` are (offset, size) pairs; logs accumulate per block.
inline void renormalize_blocks(VectorXd& y, VectorXd& k1,
                               const std::vector<std::pair<int, int>>& blocks,
                               std::vector<double>& logScales) {
    for (size_t b = 0; b < blocks.size(); ++b) {
        auto seg = y.segment(blocks[b].first, blocks[b].second);
        const double m = seg.cwiseAbs().maxCoeff();
        if (m > 0.0 && (m > kRenormHi || m < kRenormLo)) {
            seg /= m;
            if (k1.size() == y.size()) k1.segment(blocks[b].first, blocks[b].second) /= m;
            logScales[b] += std::log(m);
        }
    }
}

}  // namespace detail

/// Jointly integrates dx/dt = f(x), dX/dt = Df(x) X with X(0) = I.
/// `stop_cond` (optional) ends the run early once cond(X) exceeds it; the
/// returned state then carries the reached time.
inline VariationalState variational_flow(const DynamicalSystem& sys, const VectorXd& x0, double t,
                                         const IntegratorOptions& opts = {},
                                         double stop_cond = 0.0, long cond_check_stride = 64) {
    if (!x0.allFinite()) throw InputError("variational_flow: non-finite initial state");
    if (x0.size() != sys.dim()) throw InputError("variational_flow: state dimension mismatch");
    const int n = sys.dim();
    VectorXd y(n + n * n);
    y.head(n) = x0;
    Eigen::Map<MatrixXd>(y.data() + n, n, n) = MatrixXd::Identity(n, n);

    OdeRhs rhs = [&sys, n](const VectorXd& z) {
        VectorXd dz(z.size());
        const VectorXd x = z.head(n);
        dz.head(n) = sys.f(x);
        const MatrixXd A = sys.jacobian(x);
        Eigen::Map<MatrixXd>(dz.data() + n, n, n) =
            A * Eigen::Map<const MatrixXd>(z.data() + n, n, n);
        return dz;
    };

    std::vector<std::pair<int, int>> blocks{{n, n * n}};
    std::vector<double> logs{0.0};
    long steps = 0, since_check = 0;
    double err_acc = 0.0;
    const double reached =
        detail::solve_ode(rhs, y, t, opts, steps, err_acc, [&](double, VectorXd& z, VectorXd& k1) {
            detail::renormalize_blocks(z, k1, blocks, logs);
            if (stop_cond > 0.0 && ++since_check >= cond_check_stride) {
                since_check = 0;
                VectorXd sv = singular_values(Eigen::Map<MatrixXd>(z.data() + n, n, n));
                if (sv[n - 1] <= 0.0 || sv[0] / sv[n - 1] > stop_cond) return false;
            }
            return true;
        });

    VariationalState out;
    out.t = reached;
    out.x = y.head(n);
    out.X = Eigen::Map<MatrixXd>(y.data() + n, n, n);
    out.logScale = logs[0];
    return out;
}

/// Equispaced variational checkpoints over [0, t], composed leg by leg.
inline std::vector<VariationalState> variational_trajectory(const DynamicalSystem& sys,
                                                            const VectorXd& x0, double t,
                                                            const IntegratorOptions& opts = {},
                                                            int samples = 100) {
    if (samples < 1) throw InputError("variational_trajectory: need at least one sample");
    std::vector<VariationalState> out;
    out.reserve(samples + 1);
    VariationalState acc;
    acc.t = 0.0;
    acc.x = x0;
    acc.X = MatrixXd::Identity(sys.dim(), sys.dim());
    acc.logScale = 0.0;
    out.push_back(acc);
    const double dt = t / samples;
    for (int k = 0; k < samples; ++k) {
        VariationalState leg = variational_flow(sys, acc.x, dt, opts);
        acc = compose_cocycle(acc, leg);
        out.push_back(acc);
    }
    return out;
}

/// log omega_k of the flow Jacobian for each k in `ks`, via the compound
/// variational equations dY_k/dt = A(x)^{[k]} Y_k: log omega_k[X(t,x0)] equals
/// the log spectral norm of Y_k(t). Every partial product of singular values
/// is the norm of the dominant compound direction, so the computation stays
/// well conditioned at horizons where the full Jacobian does not.
struct CompoundFlowResult {
    double t = 0.0;
    VectorXd x;
    std::vector<int> ks;
    std::vector<double> logOmega;
};

inline CompoundFlowResult compound_log_omegas(const DynamicalSystem& sys, const VectorXd& x0,
                                              double t, const std::vector<int>& ks,
                                              const IntegratorOptions& opts = {}) {
    const int n = sys.dim();
    long total = n;
    std::vector<std::pair<int, int>> blocks;
    std::vector<long> sizes;
    for (int k : ks) {
        if (k < 1 || k > n) throw InputError("compound_log_omegas: k out of range");
        const long m = binomial(n, k);
        if (m > 256)
            throw InputError("compound_log_omegas: compound dimension too large at this n");
        blocks.emplace_back(static_cast<int>(total), static_cast<int>(m * m));
        sizes.push_back(m);
        total += m * m;
    }
    VectorXd y = VectorXd::Zero(total);
    y.head(n) = x0;
    for (size_t b = 0; b < blocks.size(); ++b)
        Eigen::Map<MatrixXd>(y.data() + blocks[b].first, sizes[b], sizes[b]) =
            MatrixXd::Identity(sizes[b], sizes[b]);

    OdeRhs rhs = [&](const VectorXd& z) {
        VectorXd dz(z.size());
        const VectorXd x = z.head(n);
        dz.head(n) = sys.f(x);
        const MatrixXd A = sys.jacobian(x);
        for (size_t b = 0; b < blocks.size(); ++b) {
            const MatrixXd Ak = additive_compound(A, ks[b]);
            Eigen::Map<MatrixXd>(dz.data() + blocks[b].first, sizes[b], sizes[b]) =
                Ak * Eigen::Map<const MatrixXd>(z.data() + blocks[b].first, sizes[b], sizes[b]);
        }
        return dz;
    };

    std::vector<double> logs(blocks.size(), 0.0);
    long steps = 0;
    double err_acc = 0.0;
    detail::solve_ode(rhs, y, t, opts, steps, err_acc, [&](double, VectorXd& z, VectorXd& k1) {
        detail::renormalize_blocks(z, k1, blocks, logs);
        return true;
    });

    CompoundFlowResult out;
    out.t = t;
    out.x = y.head(n);
    out.ks = ks;
    for (size_t b = 0; b < blocks.size(); ++b) {
        const MatrixXd Yk = Eigen::Map<MatrixXd>(y.data() + blocks[b].first, sizes[b], sizes[b]);
        out.logOmega.push_back(logs[b] + std::log(singular_values(Yk)[0]));
    }
    return out;
}

/// Conservative Horn-split upper bound on log omega_d[X(t,x0)]: the run is cut
/// into legs whenever cond(X) approaches `cond_cap` and the per-leg
/// log omega_d values are summed (submultiplicativity).
struct HornSplitBound {
    double t = 0.0;
    double logOmegaUpper = 0.0;
    int segments = 0;
    bool split = false;  // true when more than one leg was needed
};

inline HornSplitBound horn_split_log_omega(const DynamicalSystem& sys, const VectorXd& x0,
                                           double t, const FractionalDimension& dim,
                                           const IntegratorOptions& opts = {},
                                           double cond_cap = 1e12) {
    HornSplitBound out;
    VectorXd x = x0;
    double remaining = t;
    while (remaining > 1e-12) {
        VariationalState leg = variational_flow(sys, x, remaining, opts, cond_cap, 16);
        out.logOmegaUpper += log_omega_d_of_values(singular_values(leg.X), dim) +
                             dim.d * leg.logScale;
        out.t += leg.t;
        ++out.segments;
        if (leg.t <= 1e-12) throw NumericalError("horn_split_log_omega: leg made no progress");
        x = leg.x;
        remaining -= leg.t;
    }
    out.split = out.segments > 1;
    return out;
}

}  // namespace contracta
