#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "contracta/errors.hpp"

namespace contracta {

using Eigen::VectorXd;

/// Axis-aligned sampling box with per-axis counts and an optional indicator
/// restricting the lattice to the invariant set. Positive invariance of the
/// indicated set is the caller's responsibility; see boundary_escapes().
struct Region {
    VectorXd lo;
    VectorXd hi;
    std::vector<int> counts;
    std::function<bool(const VectorXd&)> indicator;  // may be empty

    int dim() const { return static_cast<int>(lo.size()); }

    void validate() const {
        if (lo.size() != hi.size() || static_cast<size_t>(lo.size()) != counts.size())
            throw InputError("Region: lo/hi/counts sizes disagree");
        for (int i = 0; i < dim(); ++i) {
            if (!(lo[i] <= hi[i])) throw InputError("Region: lo > hi on some axis");
            if (counts[i] < 1) throw InputError("Region: counts must be >= 1");
            if (counts[i] > 1 && !(lo[i] < hi[i]))
                throw InputError("Region: degenerate axis with several samples");
        }
    }

    /// Lattice coordinate along one axis: endpoints included for counts >= 2,
    /// the midpoint for a single sample.
    double coordinate(int axis, int index) const {
        if (counts[axis] == 1) return 0.5 * (lo[axis] + hi[axis]);
        return lo[axis] +
               (hi[axis] - lo[axis]) * static_cast<double>(index) / (counts[axis] - 1);
    }

    /// Regular lattice filtered by the indicator, row-major axis order.
    std::vector<VectorXd> grid_points() const {
        validate();
        long total = 1;
        for (int c : counts) total *= c;
        std::vector<VectorXd> pts;
        pts.reserve(total);
        VectorXd x(dim());
        std::vector<int> idx(dim(), 0);
        for (long flat = 0; flat < total; ++flat) {
            long rem = flat;
            for (int a = dim() - 1; a >= 0; --a) {
                idx[a] = static_cast<int>(rem % counts[a]);
                rem /= counts[a];
            }
            for (int a = 0; a < dim(); ++a) x[a] = coordinate(a, idx[a]);
            if (!indicator || indicator(x)) pts.push_back(x);
        }
        if (pts.empty()) throw InputError("Region: no grid point passes the indicator");
        return pts;
    }

    /// Largest per-axis lattice spacing (0 on single-sample axes).
    double max_spacing() const {
        double h = 0.0;
        for (int a = 0; a < dim(); ++a)
            if (counts[a] > 1) h = std::max(h, (hi[a] - lo[a]) / (counts[a] - 1));
        return h;
    }

    static Region box(const VectorXd& lo, const VectorXd& hi, const std::vector<int>& counts,
                      std::function<bool(const VectorXd&)> indicator = nullptr) {
        Region r{lo, hi, counts, std::move(indicator)};
        r.validate();
        return r;
    }
};

}  // namespace contracta
