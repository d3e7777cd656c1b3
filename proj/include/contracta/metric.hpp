#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "contracta/certificate.hpp"
#include "contracta/errors.hpp"
#include "contracta/exponents.hpp"
#include "contracta/integrate.hpp"
#include "contracta/linalg.hpp"
#include "contracta/parallel.hpp"
#include "contracta/region.hpp"
#include "contracta/system.hpp"
#include "contracta/variational.hpp"

namespace contracta {

using MatrixField = std::function<MatrixXd(const VectorXd&)>;

/// State-dependent SPD metric P(x) with an optional analytic orbital
/// derivative; without one, the derivative is taken along the flow by central
/// differences (see orbital_derivative).
struct MetricField {
    MatrixField P;
    MatrixField Pdot;  // may be empty
    std::string description;
};

inline MetricField constant_metric(const MatrixXd& P0, std::string description = "constant") {
    if (!is_spd(P0)) throw InputError("constant_metric: P0 must be SPD");
    const int n = static_cast<int>(P0.rows());
    return {[P0](const VectorXd&) { return P0; },
            [n](const VectorXd&) { return MatrixXd::Zero(n, n); }, std::move(description)};
}

/// P(x) = P0 * exp(gamma * v(x)) with the analytic orbital derivative
/// gamma * vdot(x) * P(x).
inline MetricField exponential_metric(const MatrixXd& P0, double gamma,
                                      std::function<double(const VectorXd&)> v,
                                      std::function<double(const VectorXd&)> vdot,
                                      std::string description = "P0*exp(gamma*v)") {
    if (!is_spd(P0)) throw InputError("exponential_metric: P0 must be SPD");
    auto P = [P0, gamma, v](const VectorXd& x) -> MatrixXd {
        return std::exp(gamma * v(x)) * P0;
    };
    auto Pdot = [P0, gamma, v, vdot](const VectorXd& x) -> MatrixXd {
        return gamma * vdot(x) * std::exp(gamma * v(x)) * P0;
    };
    return {P, Pdot, std::move(description)};
}

/// Orbital derivative of the metric at x: analytic when provided, otherwise a
/// central difference along the flow, symmetrized.
inline MatrixXd orbital_derivative(const MetricField& field, const DynamicalSystem& sys,
                                   const VectorXd& x, const IntegratorOptions& opts = {}) {
    if (field.Pdot) return field.Pdot(x);
    const double h =
        1e-5 * (1.0 + x.cwiseAbs().maxCoeff()) / (1.0 + sys.f(x).cwiseAbs().maxCoeff());
    MatrixXd diff;
    try {
        diff = (field.P(flow(sys, x, h, opts)) - field.P(flow(sys, x, -h, opts))) / (2.0 * h);
    } catch (const IntegrationError& e) {
        throw NumericalError(std::string("orbital_derivative: flow evaluation failed: ") +
                             e.what());
    }
    return 0.5 * (diff + diff.transpose());
}

struct CriterionRoots {
    VectorXd lambdas;  // descending
};

/// The n real roots of det[A^T P + P A + Pdot - lambda P] = 0, via Cholesky
/// reduction to an ordinary symmetric eigenproblem.
inline CriterionRoots criterion_roots(const MatrixXd& A, const MatrixXd& P,
                                      const MatrixXd& Pdot) {
    require_spd_shape(P, "criterion_roots");
    if (!is_symmetric(Pdot, 1e-10)) throw InputError("criterion_roots: Pdot is not symmetric");
    Eigen::LLT<MatrixXd> llt(P);
    if (llt.info() != Eigen::Success)
        throw InputError("criterion_roots: P is not positive definite");
    MatrixXd G = A.transpose() * P + P * A + Pdot;
    G = 0.5 * (G + G.transpose());
    const MatrixXd L = llt.matrixL();
    // B = L^{-1} G L^{-T}
    MatrixXd B = L.triangularView<Eigen::Lower>().solve(G);
    B = L.triangularView<Eigen::Lower>().solve(B.transpose()).transpose();
    return {symmetric_eigenvalues(0.5 * (B + B.transpose()))};
}

/// Independent route through S = sqrt(P): the roots are the eigenvalues of
/// F + F^T with F = S A S^{-1} + Sdot S^{-1}, Sdot solving Sdot S + S Sdot =
/// Pdot. Kept as a cross-check oracle for the Cholesky route.
inline CriterionRoots criterion_roots_sqrt_route(const MatrixXd& A, const MatrixXd& P,
                                                 const MatrixXd& Pdot) {
    const MatrixXd S = spd_sqrt(P);
    const MatrixXd Sdot = solve_sym_sylvester(S, Pdot);
    const MatrixXd Sinv = S.inverse();
    const MatrixXd F = S * A * Sinv + Sdot * Sinv;
    return {symmetric_eigenvalues(F + F.transpose())};
}

struct XiPair {
    double forward = 0.0;
    double reverse = 0.0;
};

/// Forward: lambda_1 + ... + lambda_d0 + s*lambda_{d0+1}.
/// Reverse: lambda_n + ... + lambda_{n-d0+1} + s*lambda_{n-d0}.
inline XiPair xi_d(const CriterionRoots& roots, const FractionalDimension& dim) {
    const int n = static_cast<int>(roots.lambdas.size());
    if (n != dim.n) throw InputError("xi_d: dimension mismatch");
    XiPair out;
    for (int i = 0; i < dim.d0; ++i) {
        out.forward += roots.lambdas[i];
        out.reverse += roots.lambdas[n - 1 - i];
    }
    if (dim.s > 0.0) {
        out.forward += dim.s * roots.lambdas[dim.d0];
        out.reverse += dim.s * roots.lambdas[n - 1 - dim.d0];
    }
    return out;
}

struct CriterionSample {
    VectorXd x;
    VectorXd lambdas;
    double forward = 0.0;
    double reverse = 0.0;
    bool valid = false;  // metric SPD at x
};

/// Per-grid-point criterion roots and Xi values for the given metric.
inline std::vector<CriterionSample> criterion_table(const DynamicalSystem& sys,
                                                    const MetricField& field,
                                                    const Region& region,
                                                    const FractionalDimension& dim,
                                                    const IntegratorOptions& opts = {}) {
    const auto pts = region.grid_points();
    std::vector<CriterionSample> table(pts.size());
    parallel_for(static_cast<long>(pts.size()), [&](long i) {
        table[i].x = pts[i];
        MatrixXd P = field.P(pts[i]);
        if (!is_spd(P)) return;
        const MatrixXd A = sys.jacobian(pts[i]);
        const MatrixXd Pdot = orbital_derivative(field, sys, pts[i], opts);
        const CriterionRoots roots = criterion_roots(A, P, Pdot);
        const XiPair xi = xi_d(roots, dim);
        table[i].lambdas = roots.lambdas;
        table[i].forward = xi.forward;
        table[i].reverse = xi.reverse;
        table[i].valid = true;
    });
    return table;
}

/// Second Lyapunov method over a sampling region: Lambda = grid max of the
/// forward functional (contraction certificate when negative, with decay rate
/// Lambda/2), Lambda_minus = grid min of the reverse functional.
inline ContractionCertificate certify_second_method(const DynamicalSystem& sys,
                                                    const MetricField& field,
                                                    const Region& region,
                                                    const FractionalDimension& dim,
                                                    double margin = 1e-6,
                                                    const IntegratorOptions& opts = {}) {
    const auto table = criterion_table(sys, field, region, dim, opts);
    ContractionCertificate cert;
    cert.method = "second";
    cert.dim = dim;
    cert.margin = margin;
    cert.grid = GridMeta::of(region, static_cast<long>(table.size()));
    double Lambda = -std::numeric_limits<double>::infinity();
    double LambdaMinus = std::numeric_limits<double>::infinity();
    for (const auto& row : table) {
        if (!row.valid) {
            cert.verdict = Verdict::InvalidMetric;
            std::string pt = "(";
            for (int a = 0; a < row.x.size(); ++a)
                pt += (a ? "," : "") + std::to_string(row.x[a]);
            cert.notes.push_back("metric not positive definite at grid point " + pt + ")");
            return cert;
        }
        Lambda = std::max(Lambda, row.forward);
        LambdaMinus = std::min(LambdaMinus, row.reverse);
    }
    cert.bound = Lambda;
    cert.reverseBound = LambdaMinus;
    cert.decayRate = 0.5 * Lambda;
    cert.verdict = sign_verdict(Lambda, margin);
    return cert;
}

struct FlowExpansionReport {
    double t = 0.0;
    double maxOmega = 0.0;
    double maxLogOmega = 0.0;
    VectorXd argmax;
    std::optional<double> bound;  // exp(Lambda t / 2) when Lambda supplied
    bool satisfied = true;
};

/// Weighted flow expansion: max over the grid of omega_d(Y_x(t)) with
/// Y_x(t) = S(phi^t x) X(t, x) S(x)^{-1}, the expansion factor of the
/// metric-weighted d-volume transported by the flow over horizon t.
inline FlowExpansionReport weighted_flow_expansion(const DynamicalSystem& sys,
                                                   const MetricField& field, const Region& region,
                                                   const FractionalDimension& dim, double t,
                                                   std::optional<double> Lambda = std::nullopt,
                                                   const IntegratorOptions& opts = {}) {
    if (!(t > 0.0)) throw InputError("weighted_flow_expansion: t must be positive");
    const auto pts = region.grid_points();
    std::vector<double> logs(pts.size());
    parallel_for(static_cast<long>(pts.size()), [&](long i) {
        const VariationalState vs = variational_flow(sys, pts[i], t, opts);
        const MatrixXd Y =
            spd_sqrt(field.P(vs.x)) * vs.X * spd_sqrt(field.P(pts[i])).inverse();
        logs[i] = log_omega_d_of_values(singular_values(Y), dim) + dim.d * vs.logScale;
    });
    FlowExpansionReport rep;
    rep.t = t;
    rep.maxLogOmega = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < logs.size(); ++i) {
        if (logs[i] > rep.maxLogOmega) {
            rep.maxLogOmega = logs[i];
            rep.argmax = pts[i];
        }
    }
    rep.maxOmega = std::exp(rep.maxLogOmega);
    if (Lambda) {
        rep.bound = std::exp(0.5 * *Lambda * t);
        rep.satisfied = rep.maxOmega <= *rep.bound * (1.0 + 1e-6);
    }
    return rep;
}

}  // namespace contracta
