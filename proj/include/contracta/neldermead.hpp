#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Core>

#include "contracta/errors.hpp"

namespace contracta {

using Eigen::VectorXd;

struct NelderMeadOptions {
    int maxEval = 400;
    double fTol = 1e-10;   // spread of simplex values
    double xTol = 1e-9;    // spread of simplex vertices
    double initialStep = 0.5;
};

struct NelderMeadResult {
    VectorXd x;
    double f = 0.0;
    int evals = 0;
};

/// Downhill simplex with the standard reflection/expansion/contraction/shrink
/// coefficients. Fully deterministic for a fixed start point.
inline NelderMeadResult nelder_mead(const std::function<double(const VectorXd&)>& fn,
                                    const VectorXd& x0, const NelderMeadOptions& opts = {}) {
    const int n = static_cast<int>(x0.size());
    if (n == 0) throw InputError("nelder_mead: empty start point");
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<VectorXd> x(n + 1, x0);
    std::vector<double> f(n + 1);
    int evals = 0;
    for (int i = 1; i <= n; ++i) x[i][i - 1] += opts.initialStep;
    for (int i = 0; i <= n; ++i) {
        f[i] = fn(x[i]);
        ++evals;
    }
    std::vector<int> order(n + 1);

    while (evals < opts.maxEval) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
        const int best = order[0], worst = order[n], second_worst = order[n - 1];

        double fspread = f[worst] - f[best];
        double xspread = 0.0;
        for (int i = 1; i <= n; ++i)
            xspread = std::max(xspread, (x[order[i]] - x[best]).cwiseAbs().maxCoeff());
        if (fspread <= opts.fTol && xspread <= opts.xTol) break;

        VectorXd centroid = VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += x[i];
        centroid /= n;

        VectorXd xr = centroid + alpha * (centroid - x[worst]);
        const double fr = fn(xr);
        ++evals;
        if (fr < f[best]) {
            VectorXd xe = centroid + gamma * (xr - centroid);
            const double fe = fn(xe);
            ++evals;
            if (fe < fr) {
                x[worst] = xe;
                f[worst] = fe;
            } else {
                x[worst] = xr;
                f[worst] = fr;
            }
        } else if (fr < f[second_worst]) {
            x[worst] = xr;
            f[worst] = fr;
        } else {
            const bool outside = fr < f[worst];
            VectorXd xc = outside ? centroid + rho * (xr - centroid)
                                  : centroid + rho * (x[worst] - centroid);
            const double fc = fn(xc);
            ++evals;
            if (fc < std::min(fr, f[worst])) {
                x[worst] = xc;
                f[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    x[i] = x[best] + sigma * (x[i] - x[best]);
                    f[i] = fn(x[i]);
                    ++evals;
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (f[i] < f[best]) best = i;
    return {x[best], f[best], evals};
}

}  // namespace contracta
