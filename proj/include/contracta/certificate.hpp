#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "contracta/fractional.hpp"
#include "contracta/region.hpp"

namespace contracta {

enum class Verdict { Contractive, NotContractive, Inconclusive, InvalidMetric };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Contractive: return "CONTRACTIVE";
        case Verdict::NotContractive: return "NOT-CONTRACTIVE";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
        case Verdict::InvalidMetric: return "INVALID-METRIC";
    }
    return "?";
}

struct GridMeta {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
    std::vector<int> counts;
    double spacing = 0.0;
    long points = 0;
    std::vector<double> horizons;

    static GridMeta of(const Region& region, long admissible,
                       std::vector<double> horizons = {}) {
        GridMeta m;
        m.lo = region.lo;
        m.hi = region.hi;
        m.counts = region.counts;
        m.spacing = region.max_spacing();
        m.points = admissible;
        m.horizons = std::move(horizons);
        return m;
    }
};

struct ContractionCertificate {
    std::string method;  // "first" or "second"
    FractionalDimension dim = FractionalDimension::of(1.0, 1);
    double bound = 0.0;                      // bold Sigma_d estimate or Lambda
    std::optional<double> reverseBound;      // Lambda_minus (second method)
    std::optional<double> decayRate;         // Lambda / 2
    double margin = 1e-6;
    GridMeta grid;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> notes;
};

inline Verdict sign_verdict(double bound, double margin) {
    if (bound < -margin) return Verdict::Contractive;
    if (bound > margin) return Verdict::NotContractive;
    return Verdict::Inconclusive;
}

}  // namespace contracta
