#pragma once

#include <vector>

#include "contracta/certificate.hpp"
#include "contracta/linalg.hpp"
#include "contracta/metric.hpp"
#include "contracta/parallel.hpp"
#include "contracta/region.hpp"
#include "contracta/system.hpp"

namespace contracta {

/// Classical integer-order contraction test: grid supremum of the logarithmic
/// norm of the k-th additive compound of the Jacobian. A negative supremum is
/// the standard sufficient condition for k-contraction; the report carries the
/// flat-metric root criterion at d = k for comparison.
struct KCompoundReport {
    int k = 0;
    double supLogNorm = 0.0;
    VectorXd argmax;
    bool sufficient = false;
    GridMeta grid;
    ContractionCertificate comparison;  // identity-metric certificate at d = k
};

inline KCompoundReport kcompound_check(const DynamicalSystem& sys, int k, const Region& region,
                                       double margin = 1e-6) {
    if (k < 1 || k > sys.dim()) throw InputError("kcompound_check: k out of range");
    const auto pts = region.grid_points();
    std::vector<double> vals(pts.size());
    parallel_for(static_cast<long>(pts.size()), [&](long i) {
        vals[i] = log_norm2(additive_compound(sys.jacobian(pts[i]), k));
    });
    KCompoundReport rep;
    rep.k = k;
    rep.grid = GridMeta::of(region, static_cast<long>(pts.size()));
    rep.supLogNorm = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] > rep.supLogNorm) {
            rep.supLogNorm = vals[i];
            rep.argmax = pts[i];
        }
    }
    rep.sufficient = rep.supLogNorm < 0.0;
    rep.comparison =
        certify_second_method(sys, constant_metric(MatrixXd::Identity(sys.dim(), sys.dim())),
                              region, FractionalDimension::of(k, sys.dim()), margin);
    return rep;
}

}  // namespace contracta
