#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "contracta/certificate.hpp"
#include "contracta/errors.hpp"
#include "contracta/exponents.hpp"
#include "contracta/floquet.hpp"
#include "contracta/integrate.hpp"
#include "contracta/kcompound.hpp"
#include "contracta/metric.hpp"
#include "contracta/synthesis.hpp"
#include "contracta/variational.hpp"
#include "contracta/version.hpp"

namespace contracta {

using json = nlohmann::json;

/// 17-significant-digit decimal, the round-trip-exact CSV float format.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline json to_json(const VectorXd& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

inline json to_json_rowmajor(const MatrixXd& M) {
    json a = json::array();
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) a.push_back(M(i, j));
    return a;
}

inline json grid_json(const GridMeta& g) {
    json j;
    j["lo"] = to_json(g.lo);
    j["hi"] = to_json(g.hi);
    j["counts"] = g.counts;
    j["spacing"] = g.spacing;
    j["points"] = g.points;
    if (!g.horizons.empty()) j["horizons"] = g.horizons;
    return j;
}

inline json certificate_json(const ContractionCertificate& cert) {
    json j;
    j["method"] = cert.method;
    j["d"] = cert.dim.d;
    j["Lambda"] = cert.bound;
    if (cert.reverseBound) j["LambdaMinus"] = *cert.reverseBound;
    if (cert.decayRate) j["decayRate"] = *cert.decayRate;
    j["verdict"] = verdict_name(cert.verdict);
    j["grid"] = grid_json(cert.grid);
    j["margins"] = {{"verdict", cert.margin}};
    j["toolVersion"] = kToolVersion;
    if (!cert.notes.empty()) j["notes"] = cert.notes;
    return j;
}

inline json exponent_report_json(const ExponentReport& rep) {
    json j;
    j["d"] = rep.dim.d;
    j["boldSigmaEstimate"] = rep.boldSigmaEstimate;
    json horizons = json::array();
    for (const auto& h : rep.perHorizon) horizons.push_back({{"t", h.t}, {"maxSigma", h.maxSigma}});
    j["perHorizon"] = horizons;
    j["flags"] = rep.flags;
    j["grid"] = grid_json(rep.grid);
    j["points"] = rep.perPoint.size();
    j["toolVersion"] = kToolVersion;
    return j;
}

inline json floquet_json(const OrbitalStabilityReport& rep) {
    json j;
    j["x0"] = to_json(rep.orbit.x0);
    j["T"] = rep.orbit.T;
    j["shootingResidual"] = rep.orbit.residual;
    json mults = json::array();
    for (const auto& m : rep.floquet.multipliers)
        mults.push_back({{"re", m.real()}, {"im", m.imag()}, {"modulus", std::abs(m)}});
    j["multipliers"] = mults;
    j["trivialResidual"] = rep.floquet.trivialResidual;
    j["andronovWitt"] = rep.andronovWitt;
    if (rep.metric) {
        j["XiEigenvalues"] = to_json(rep.metric->root_constants());
        j["lambda12Max"] = rep.lambda12Max;
    }
    j["criterionAgreement"] = rep.agreement;
    j["verdict"] = orbital_verdict_name(rep.verdict);
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    j["toolVersion"] = kToolVersion;
    return j;
}

inline json synthesis_json(int d0, const SynthesisResult& res) {
    json j;
    j["d0"] = d0;
    j["sStar"] = res.sStar;
    j["feasible"] = res.feasible;
    j["P0"] = to_json_rowmajor(res.params.P0());
    j["gamma"] = res.params.gamma;
    j["worstXi"] = res.worstXi;
    j["gridMeta"] = grid_json(res.grid);
    j["seeds"] = res.seeds;
    j["restarts"] = res.restarts;
    if (!res.trace.empty()) j["trace"] = res.trace;
    j["toolVersion"] = kToolVersion;
    return j;
}

inline json kcompound_json(const KCompoundReport& rep) {
    json j;
    j["k"] = rep.k;
    j["supLogNorm"] = rep.supLogNorm;
    j["argmax"] = to_json(rep.argmax);
    j["sufficient"] = rep.sufficient;
    j["grid"] = grid_json(rep.grid);
    j["identityMetricComparison"] = certificate_json(rep.comparison);
    j["toolVersion"] = kToolVersion;
    return j;
}

// ---------------------------------------------------------------------------
// CSV writers (one schema per task)
// ---------------------------------------------------------------------------

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    if (traj.samples.empty()) throw InputError("write_trajectory_csv: empty trajectory");
    const int n = static_cast<int>(traj.samples.front().x.size());
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",x" << i;
    os << "\n";
    for (const auto& p : traj.samples) {
        os << format_g17(p.t);
        for (int i = 0; i < n; ++i) os << "," << format_g17(p.x[i]);
        os << "\n";
    }
}

inline void write_variational_csv(std::ostream& os, const std::vector<VariationalState>& states) {
    if (states.empty()) throw InputError("write_variational_csv: empty trajectory");
    const int n = static_cast<int>(states.front().x.size());
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",x" << i;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) os << ",X" << i << j;
    os << ",logScale\n";
    for (const auto& s : states) {
        os << format_g17(s.t);
        for (int i = 0; i < n; ++i) os << "," << format_g17(s.x[i]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) os << "," << format_g17(s.X(i, j));
        os << "," << format_g17(s.logScale) << "\n";
    }
}

inline void write_exponents_csv(std::ostream& os, const ExponentReport& rep) {
    if (rep.perPoint.empty()) throw InputError("write_exponents_csv: empty report");
    const int n = static_cast<int>(rep.perPoint.front().x.size());
    for (int i = 1; i <= n; ++i) os << "x" << i << ",";
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",Lambda" << i;
    os << ",Sigma_d\n";
    for (const auto& r : rep.perPoint) {
        for (int i = 0; i < n; ++i) os << format_g17(r.x[i]) << ",";
        os << format_g17(r.t);
        for (int i = 0; i < n; ++i) os << "," << format_g17(r.lambda[i]);
        os << "," << format_g17(r.sigma) << "\n";
    }
}

/// Plot companion: the per-horizon grid maxima of Sigma_d against t.
inline void write_sigma_curve_csv(std::ostream& os, const ExponentReport& rep) {
    os << "t,maxSigma\n";
    for (const auto& h : rep.perHorizon)
        os << format_g17(h.t) << "," << format_g17(h.maxSigma) << "\n";
}

inline void write_criterion_csv(std::ostream& os, const std::vector<CriterionSample>& table) {
    if (table.empty()) throw InputError("write_criterion_csv: empty table");
    const int n = static_cast<int>(table.front().x.size());
    for (int i = 1; i <= n; ++i) os << "x" << i << ",";
    for (int i = 1; i <= n; ++i) os << "lambda" << i << ",";
    os << "xi_forward,xi_reverse\n";
    for (const auto& row : table) {
        if (!row.valid) continue;
        for (int i = 0; i < n; ++i) os << format_g17(row.x[i]) << ",";
        for (int i = 0; i < n; ++i) os << format_g17(row.lambdas[i]) << ",";
        os << format_g17(row.forward) << "," << format_g17(row.reverse) << "\n";
    }
}

// ---------------------------------------------------------------------------
// Report envelope
// ---------------------------------------------------------------------------

struct Report {
    json config;  // effective (post-override) configuration echo
    std::string task;
    json results;
    std::vector<std::string> warnings;
    unsigned long seed = 0;
};

/// Envelope serialization. The results payload is reproducible for identical
/// config + seed; wall-clock provenance lives outside it.
inline json report_json(const Report& rep, const std::string& timestamp = "") {
    json j;
    j["config"] = rep.config;
    j["task"] = rep.task;
    j["results"] = rep.results;
    j["warnings"] = rep.warnings;  // empty list serializes as []
    j["provenance"] = {{"toolVersion", kToolVersion},
                       {"seed", rep.seed},
                       {"timestamp", timestamp}};
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw NumericalError("cannot open output file: " + path);
    out << content;
    if (!out.good()) throw NumericalError("write failed: " + path);
}

}  // namespace contracta
