#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "contracta/errors.hpp"
#include "contracta/system.hpp"

namespace contracta {

enum class StepMethod { Rk4Fixed, Rk45Adaptive };

struct IntegratorOptions {
    StepMethod method = StepMethod::Rk45Adaptive;
    double absTol = 1e-10;
    double relTol = 1e-10;
    double maxStep = 1.0;
    double minStep = 1e-12;
    long maxSteps = 50'000'000;
    double fixedStep = 1e-3;  // Rk4Fixed only

    void validate() const {
        if (!(absTol > 0.0) || !(relTol > 0.0))
            throw InputError("IntegratorOptions: tolerances must be positive");
        if (!(minStep <= maxStep)) throw InputError("IntegratorOptions: minStep > maxStep");
    }

    static IntegratorOptions certification() { return IntegratorOptions{}; }
    static IntegratorOptions sweep() {
        IntegratorOptions o;
        o.absTol = o.relTol = 1e-8;
        return o;
    }
};

struct TrajectoryPoint {
    double t;
    VectorXd x;
};

struct Trajectory {
    std::vector<TrajectoryPoint> samples;
    VectorXd final_state;
    double error_estimate = 0.0;  // accumulated local-error proxy
    long steps = 0;
};

using OdeRhs = std::function<VectorXd(const VectorXd&)>;

namespace detail {

// Dormand-Prince 5(4) embedded pair, FSAL.
struct Dopri5Tableau {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200, e6 = 11.0 / 84 - 187.0 / 2100,
                            e7 = -1.0 / 40;
};

/// One Dopri5 attempt from y with step h. Returns the scaled error norm and
/// fills ynew plus the FSAL stage k7 = f(ynew).
inline double dopri5_step(const OdeRhs& f, const VectorXd& y, const VectorXd& k1, double h,
                          double absTol, double relTol, VectorXd& ynew, VectorXd& k7) {
    using T = Dopri5Tableau;
    const VectorXd k2 = f(y + h * (T::a21 * k1));
    const VectorXd k3 = f(y + h * (T::a31 * k1 + T::a32 * k2));
    const VectorXd k4 = f(y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3));
    const VectorXd k5 = f(y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4));
    const VectorXd k6 =
        f(y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5));
    ynew = y + h * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 + T::b6 * k6);
    k7 = f(ynew);
    const VectorXd err =
        h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double sc = absTol + relTol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        const double q = err[i] / sc;
        acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(y.size()));
}

/// Core loop over [0, |t_end|]; negative t_end integrates the negated field.
/// The observer runs after each accepted step as observe(t, y, k1); it may
/// rescale y (and then must rescale the cached derivative k1 identically,
/// which is exact for right-hand sides linear in the rescaled components) and
/// returns false to stop early. Returns the time actually reached.
template <typename Observer>
double solve_ode(const OdeRhs& f, VectorXd& y, double t_end, const IntegratorOptions& opts,
                 long& steps, double& err_acc, Observer&& observe) {
    opts.validate();
    if (t_end == 0.0) return 0.0;
    if (t_end < 0.0) {
        OdeRhs g = [&f](const VectorXd& z) -> VectorXd { return -f(z); };
        return -solve_ode(g, y, -t_end, opts, steps, err_acc, std::forward<Observer>(observe));
    }

    double t = 0.0;
    if (opts.method == StepMethod::Rk4Fixed) {
        const double h0 = std::min(opts.fixedStep, opts.maxStep);
        VectorXd no_k1;
        while (t < t_end) {
            const double h = std::min(h0, t_end - t);
            const VectorXd k1 = f(y);
            const VectorXd k2 = f(y + 0.5 * h * k1);
            const VectorXd k3 = f(y + 0.5 * h * k2);
            const VectorXd k4 = f(y + h * k3);
            y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += h;
            if (!y.allFinite()) throw IntegrationError("integration diverged", t, y);
            if (++steps > opts.maxSteps) throw IntegrationError("maxSteps exceeded", t, y);
            if (!observe(t, y, no_k1)) return t;
        }
        return t;
    }

    VectorXd k1 = f(y);
    double h = std::min(opts.maxStep, t_end);
    {
        const double fy = k1.cwiseAbs().maxCoeff();
        if (fy > 0.0)
            h = std::min(h, std::max(opts.minStep,
                                     0.01 * (1.0 + y.cwiseAbs().maxCoeff()) / fy));
    }
    VectorXd ynew(y.size()), k7(y.size());
    while (t < t_end) {
        h = std::min(h, t_end - t);
        const double errn = dopri5_step(f, y, k1, h, opts.absTol, opts.relTol, ynew, k7);
        bool accepted = false;
        if (std::isfinite(errn) && ynew.allFinite()) {
            if (errn <= 1.0) {
                t += h;
                y.swap(ynew);
                k1.swap(k7);  // FSAL
                err_acc += errn * (opts.absTol + opts.relTol * y.cwiseAbs().maxCoeff());
                accepted = true;
            }
            const double factor = std::clamp(0.9 * std::pow(std::max(errn, 1e-10), -0.2), 0.2, 5.0);
            h = std::min(h * factor, opts.maxStep);
        } else {
            h *= 0.25;
        }
        if (h < opts.minStep) throw IntegrationError("step underflow", t, y);
        if (++steps > opts.maxSteps) throw IntegrationError("maxSteps exceeded", t, y);
        if (accepted && !observe(t, y, k1)) return t;
    }
    return t;
}

}  // namespace detail

/// Flow map: integrates dx/dt = f(x) from x0 over [0, t] (t may be negative).
/// With sample_count > 0, stores roughly equispaced samples plus both endpoints.
inline Trajectory integrate(const DynamicalSystem& sys, const VectorXd& x0, double t,
                            const IntegratorOptions& opts = {}, int sample_count = 0) {
    if (!x0.allFinite()) throw InputError("integrate: non-finite initial state");
    if (x0.size() != sys.dim()) throw InputError("integrate: state dimension mismatch");
    Trajectory out;
    VectorXd y = x0;
    const double stride = sample_count > 0 ? std::abs(t) / sample_count : 0.0;
    double next_sample = stride;
    if (sample_count > 0) out.samples.push_back({0.0, x0});
    OdeRhs rhs = [&sys](const VectorXd& z) { return sys.f(z); };
    const double sign = t < 0.0 ? -1.0 : 1.0;
    detail::solve_ode(rhs, y, t, opts, out.steps, out.error_estimate,
                      [&](double tau, VectorXd& z, VectorXd&) {
                          if (sample_count > 0 && tau >= next_sample - 1e-15) {
                              out.samples.push_back({sign * tau, z});
                              next_sample += stride;
                          }
                          return true;
                      });
    if (sample_count > 0 && (out.samples.empty() || std::abs(out.samples.back().t - t) > 1e-12))
        out.samples.push_back({t, y});
    out.final_state = y;
    return out;
}

/// Point evaluation of the flow.
inline VectorXd flow(const DynamicalSystem& sys, const VectorXd& x0, double t,
                     const IntegratorOptions& opts = {}) {
    return integrate(sys, x0, t, opts).final_state;
}

}  // namespace contracta
