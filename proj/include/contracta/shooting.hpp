#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "contracta/errors.hpp"
#include "contracta/integrate.hpp"
#include "contracta/system.hpp"
#include "contracta/variational.hpp"

namespace contracta {

struct PeriodicOrbit {
    VectorXd x0;
    double T = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

namespace detail {

/// Golden-section polish of the period alone: minimizes |phi^T(x) - x| over a
/// bracket around T_guess. Cheap, and it moves the Newton start close enough
/// that the bordered solve cannot slide off toward an equilibrium.
inline double polish_period(const DynamicalSystem& sys, const VectorXd& x, double T_guess,
                            const IntegratorOptions& opts) {
    auto q = [&](double T) { return (flow(sys, x, T, opts) - x).norm(); };
    double lo = 0.5 * T_guess, hi = 1.5 * T_guess;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double qa = q(a), qb = q(b);
    while (hi - lo > 1e-10 * T_guess) {
        if (qa <= qb) {
            hi = b;
            b = a;
            qb = qa;
            a = hi - gr * (hi - lo);
            qa = q(a);
        } else {
            lo = a;
            a = b;
            qa = qb;
            b = lo + gr * (hi - lo);
            qb = q(b);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Newton shooting for phi^T(x) = x on the section through x_guess with normal
/// f(x_guess). Each step solves the bordered (n+1) system for the in-section
/// state correction and the period correction, with a backtracking line search
/// on the return residual.
inline PeriodicOrbit find_periodic_orbit(const DynamicalSystem& sys, const VectorXd& x_guess,
                                         double T_guess, const IntegratorOptions& opts = {},
                                         int max_iter = 40) {
    if (!(T_guess > 0.0)) throw InputError("find_periodic_orbit: T_guess must be positive");
    if (x_guess.size() != sys.dim()) throw InputError("find_periodic_orbit: dimension mismatch");
    const int n = sys.dim();

    VectorXd normal = sys.f(x_guess);
    const double fn = normal.norm();
    if (fn == 0.0)
        throw InputError("find_periodic_orbit: guess is an equilibrium, no section normal");
    normal /= fn;

    VectorXd x = x_guess;
    double T = T_guess;
    if ((flow(sys, x, T, opts) - x).norm() > 0.05 * (1.0 + x.norm()))
        T = detail::polish_period(sys, x, T_guess, opts);

    VectorXd best_x = x;
    double best_res = std::numeric_limits<double>::infinity();

    for (int it = 1; it <= max_iter; ++it) {
        VariationalState vs = variational_flow(sys, x, T, opts);
        const MatrixXd M = std::exp(vs.logScale) * vs.X;
        const VectorXd r = vs.x - x;
        const double res = r.norm();
        if (res < best_res) {
            best_res = res;
            best_x = x;
        }
        if (res <= 1e-9 * (1.0 + x.norm())) {
            if (sys.f(x).norm() <= 1e-8 * (1.0 + x.norm()))
                throw NoConvergenceError("find_periodic_orbit: collapsed to an equilibrium", x,
                                         res);
            return {x, T, res, it};
        }

        Eigen::MatrixXd J(n + 1, n + 1);
        J.topLeftCorner(n, n) = M - MatrixXd::Identity(n, n);
        J.topRightCorner(n, 1) = sys.f(vs.x);
        J.bottomLeftCorner(1, n) = normal.transpose();
        J(n, n) = 0.0;
        VectorXd rhs(n + 1);
        rhs.head(n) = -r;
        rhs[n] = -normal.dot(x - x_guess);
        const VectorXd delta = J.fullPivLu().solve(rhs);
        if (!delta.allFinite())
            throw NoConvergenceError("find_periodic_orbit: singular shooting system", best_x,
                                     best_res);

        double step_scale = 1.0;
        const double dn = delta.head(n).norm();
        const double cap = 0.5 * (1.0 + x.norm());
        if (dn > cap) step_scale = cap / dn;
        VectorXd x_new;
        double T_new = T;
        for (int half = 0; half < 8; ++half) {
            x_new = x + step_scale * delta.head(n);
            T_new = T + step_scale * delta[n];
            if (T_new > 0.0 && (flow(sys, x_new, T_new, opts) - x_new).norm() < res) break;
            step_scale *= 0.5;
        }
        x = x_new;
        T = T_new;
        if (!(T > 0.0))
            throw NoConvergenceError("find_periodic_orbit: period collapsed", best_x, best_res);
    }
    throw NoConvergenceError("find_periodic_orbit: Newton stagnation", best_x, best_res);
}

/// Monodromy matrix over one period. Requires phi^T(x0) to return to x0.
inline MatrixXd monodromy(const DynamicalSystem& sys, const VectorXd& x0, double T,
                          const IntegratorOptions& opts = {}) {
    if (!(T > 0.0)) throw InputError("monodromy: period must be positive");
    VariationalState vs = variational_flow(sys, x0, T, opts);
    const double res = (vs.x - x0).norm();
    if (res > 1e-6 * (1.0 + x0.norm()))
        throw InputError("monodromy: trajectory is not periodic within 1e-6 (residual " +
                         std::to_string(res) + ")");
    return std::exp(vs.logScale) * vs.X;
}

}  // namespace contracta
