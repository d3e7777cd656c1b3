#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "contracta/ellipsoid.hpp"
#include "contracta/errors.hpp"
#include "contracta/metric.hpp"
#include "contracta/region.hpp"
#include "contracta/system.hpp"

namespace contracta {

// ---------------------------------------------------------------------------
// Rigid body with friction and constant torque around the intermediate axis
// ---------------------------------------------------------------------------

struct RigidBodyParams {
    double J1, J2, J3;  // moments of inertia, 0 < J1 < J2 < J3
    double delta;       // friction coefficient, > 0
    double tau;         // constant torque

    void validate() const {
        if (!(0.0 < J1 && J1 < J2 && J2 < J3))
            throw InputError("RigidBodyParams: need 0 < J1 < J2 < J3");
        if (!(delta > 0.0)) throw InputError("RigidBodyParams: delta must be positive");
    }
};

struct RigidBodyBundle {
    RigidBodyParams p;
    DynamicalSystem sys;
    double rho = 0.0;          // sqrt((J3-J2)(J2-J1)/(J1 J3))
    double tauBound = 0.0;     // 2 delta^2 J2 / rho: torque threshold for 2-contraction
    double torqueRatio = 0.0;  // u = |tau| / tauBound
    VectorXd equilibrium;  // (0, tau/(J2 delta), 0)
    Eigen::Vector3d equilibriumEigs;  // descending: delta(2u-1), -delta, -delta(1+2u)
    MatrixXd P0;                      // diagonal base metric adapted to the inertia ratios
    double betaStar = 0.0;            // tau^2 / (2 delta J2): dissipation offset in Wdot
    std::string provenance;

    /// Quadratic energy-like storage function.
    double W(const VectorXd& w) const {
        return 0.5 * (p.J1 * w[0] * w[0] + p.J2 * w[1] * w[1] + p.J3 * w[2] * w[2]);
    }

    /// Orbital derivative of W: -2 delta W + tau * w2.
    double Wdot(const VectorXd& w) const { return -2.0 * p.delta * W(w) + p.tau * w[1]; }

    /// Roots of the P0-pencil of the Jacobian on the middle axis (0, w2, 0),
    /// descending.
    Eigen::Vector3d chi_roots(double omega2) const {
        const double off = 2.0 * std::abs(omega2) * rho;
        return {-2.0 * p.delta + off, -2.0 * p.delta, -2.0 * p.delta - off};
    }

    /// Sublevel set { W <= beta / delta }, which traps every trajectory once
    /// beta > betaStar.
    Ellipsoid trapping_ellipsoid(double beta) const {
        if (!(beta > 0.0)) throw InputError("trapping_ellipsoid: beta must be positive");
        const double level = beta / p.delta;
        Ellipsoid e;
        e.center = VectorXd::Zero(3);
        e.shape = Eigen::Vector3d(2.0 * level / p.J1, 2.0 * level / p.J2, 2.0 * level / p.J3)
                      .asDiagonal();
        return e;
    }

    /// Sampling region covering the trapping ellipsoid, indicator-restricted.
    Region trapping_region(double beta, int per_axis) const {
        const Ellipsoid e = trapping_ellipsoid(beta);
        VectorXd half = e.shape.diagonal().cwiseSqrt();
        auto self = *this;
        const double level = beta / p.delta;
        return Region::box(-half, half, {per_axis, per_axis, per_axis},
                           [self, level](const VectorXd& w) { return self.W(w) <= level; });
    }

    /// Metric family P0 * exp(gamma W).
    MetricField metric(double gamma) const {
        auto self = *this;
        return exponential_metric(
            P0, gamma, [self](const VectorXd& w) { return self.W(w); },
            [self](const VectorXd& w) { return self.Wdot(w); }, "P0*exp(gamma*W)");
    }
};

inline RigidBodyBundle rigid_body_system(const RigidBodyParams& p) {
    p.validate();
    const double J1 = p.J1, J2 = p.J2, J3 = p.J3, delta = p.delta, tau = p.tau;
    auto f = [J1, J2, J3, delta, tau](const VectorXd& w) -> VectorXd {
        VectorXd d(3);
        d << ((J2 - J3) * w[1] * w[2] - J1 * delta * w[0]) / J1,
            ((J3 - J1) * w[0] * w[2] - J2 * delta * w[1] + tau) / J2,
            ((J1 - J2) * w[0] * w[1] - J3 * delta * w[2]) / J3;
        return d;
    };
    auto jac = [J1, J2, J3, delta](const VectorXd& w) -> MatrixXd {
        MatrixXd A(3, 3);
        A << -delta, (J2 - J3) / J1 * w[2], (J2 - J3) / J1 * w[1],
            (J3 - J1) / J2 * w[2], -delta, (J3 - J1) / J2 * w[0],
            (J1 - J2) / J3 * w[1], (J1 - J2) / J3 * w[0], -delta;
        return A;
    };

    RigidBodyBundle b{p, DynamicalSystem(3, "rigid-body", f, jac)};
    b.rho = std::sqrt((J3 - J2) * (J2 - J1) / (J1 * J3));
    b.tauBound = 2.0 * delta * delta * J2 / b.rho;
    b.torqueRatio = std::abs(tau) / b.tauBound;
    b.equilibrium = Eigen::Vector3d(0.0, tau / (J2 * delta), 0.0);
    const double u = b.torqueRatio;
    b.equilibriumEigs = {delta * (2.0 * u - 1.0), -delta, -delta * (1.0 + 2.0 * u)};
    b.P0 = Eigen::Vector3d(1.0, (J2 / J1) * (J3 - J2) / (J3 - J1),
                           (J3 / J1) * (J3 - J2) / (J2 - J1))
               .asDiagonal();
    b.betaStar = tau * tau / (2.0 * delta * J2);
    b.provenance =
        "Euler rotation equations with friction delta and constant torque tau on the middle "
        "axis; torque threshold 2*delta^2*J2*sqrt(J1*J3/((J3-J2)*(J2-J1)))";
    return b;
}

// ---------------------------------------------------------------------------
// Rossler system
// ---------------------------------------------------------------------------

struct RosslerParams {
    double a, b;

    void validate() const {
        if (!(a > 0.0) || !(b > 0.0)) throw InputError("RosslerParams: a, b must be positive");
    }
};

struct RosslerBundle {
    RosslerParams p;
    DynamicalSystem sys;
    double gamma = 0.0;          // minus the real root of l^3 + b l^2 + l + (a+b)
    double sigma = 0.0;          // real part of the complex pair, (gamma - b)/2
    double deltaImag = 0.0;      // imaginary part of the complex pair
    double dLower = 0.0;         // 3 - b/gamma: dimension threshold at the origin
    double cubicResidual = 0.0;  // |characteristic polynomial| at the computed root
    bool saddleFocus = false;    // gamma > 0 and sigma > 0
    VectorXd E0, E1;       // equilibria
    std::string provenance;

    /// Scalar potential z - b x whose orbital derivative depends on y only.
    double v(const VectorXd& u) const { return u[2] - p.b * u[0]; }
    double vdot(const VectorXd& u) const { return (p.a + p.b) * u[1] - p.a * u[1] * u[1]; }

    /// Metric family P0 * exp(tau (z - b x)).
    MetricField metric(const MatrixXd& P0, double tau) const {
        auto self = *this;
        return exponential_metric(
            P0, tau, [self](const VectorXd& u) { return self.v(u); },
            [self](const VectorXd& u) { return self.vdot(u); }, "P0*exp(tau*(z-b*x))");
    }

    /// 1-D sampling region in y (the criterion roots depend on y only).
    Region y_region(double ylo, double yhi, double step) const {
        const int count = static_cast<int>(std::round((yhi - ylo) / step)) + 1;
        return Region::box(Eigen::Vector3d(0.0, ylo, 0.0), Eigen::Vector3d(0.0, yhi, 0.0),
                           {1, count, 1});
    }
};

inline RosslerBundle rossler_system(const RosslerParams& p) {
    p.validate();
    const double a = p.a, b = p.b;
    auto f = [a, b](const VectorXd& u) -> VectorXd {
        VectorXd d(3);
        d << -u[1] - u[2], u[0], -b * u[2] + a * (u[1] - u[1] * u[1]);
        return d;
    };
    auto jac = [a, b](const VectorXd& u) -> MatrixXd {
        MatrixXd A(3, 3);
        A << 0, -1, -1, 1, 0, 0, 0, a - 2.0 * a * u[1], -b;
        return A;
    };

    RosslerBundle out{p, DynamicalSystem(3, "rossler", f, jac)};

    // real root of l^3 + b l^2 + l + (a+b) = 0 by safeguarded Newton with a
    // bracketing bisection fallback; the root is negative for a, b > 0
    auto poly = [a, b](double l) { return ((l + b) * l + 1.0) * l + (a + b); };
    auto dpoly = [b](double l) { return (3.0 * l + 2.0 * b) * l + 1.0; };
    double lo = -(1.0 + std::max({b, 1.0, a + b})), hi = 0.0;
    if (!(poly(lo) < 0.0 && poly(hi) > 0.0))
        throw NumericalError("rossler_system: failed to bracket the real root");
    double root = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fr = poly(root), dfr = dpoly(root);
        double next = dfr != 0.0 ? root - fr / dfr : lo;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection safeguard
        (poly(next) < 0.0 ? lo : hi) = next;
        if (std::abs(next - root) <= 1e-16 * std::abs(root)) {
            root = next;
            break;
        }
        root = next;
    }
    out.cubicResidual = std::abs(poly(root));
    if (out.cubicResidual > 1e-12)
        throw NumericalError("rossler_system: cubic residual above 1e-12");

    out.gamma = -root;
    out.sigma = 0.5 * (out.gamma - b);
    const double prod = (a + b) / out.gamma;  // product of the complex pair
    out.deltaImag = std::sqrt(std::max(prod - out.sigma * out.sigma, 0.0));
    out.dLower = 3.0 - b / out.gamma;
    out.saddleFocus = out.gamma > 0.0 && out.sigma > 0.0;
    const double e = 1.0 + b / a;
    out.E0 = Eigen::Vector3d::Zero();
    out.E1 = Eigen::Vector3d(0.0, e, -e);
    out.provenance =
        "Rossler-type system dx=-y-z, dy=x, dz=-bz+a(y-y^2); gamma is minus the real "
        "eigenvalue at the origin, dLower = 3 - b/gamma bounds the contraction dimension "
        "from below";
    return out;
}

/// Reference certificate metric for the classical Rossler parameters
/// (a, b) = (0.386, 0.2): fixture values for the certified fractional
/// dimension 2 + sStar.
struct RosslerReferenceMetric {
    MatrixXd Pstar;
    double tauStar = 0.25;
    double sStar = 0.60557;
};

inline RosslerReferenceMetric rossler_reference_metric() {
    RosslerReferenceMetric m;
    m.Pstar = MatrixXd(3, 3);
    m.Pstar << 0.50578332, -0.03189052, -0.15406100,
        -0.03189052, 0.36983503, 0.26733901,
        -0.15406100, 0.26733901, 0.52428427;
    return m;
}

// ---------------------------------------------------------------------------
// Langford system
// ---------------------------------------------------------------------------

struct LangfordParams {
    double a;

    void validate() const {
        if (!(a > 0.5 && a < 1.0))
            throw InputError("LangfordParams: a must lie in (1/2, 1) for the analytic orbit");
    }
};

struct LangfordBundle {
    LangfordParams p;
    DynamicalSystem sys;
    double R = 0.0;      // orbit radius sqrt((1-a)(2a-1))
    double T = 0.0;      // period 2*pi
    Eigen::Matrix2d A2;  // rotating-frame transverse block
    std::complex<double> A2eigs[2];
    bool hurwitz = false;  // true iff a < 2/3
    std::string provenance;

    /// The explicit periodic solution (R cos t, R sin t, 1 - a).
    VectorXd orbit_point(double t) const {
        return Eigen::Vector3d(R * std::cos(t), R * std::sin(t), 1.0 - p.a);
    }
};

inline LangfordBundle langford_system(const LangfordParams& p) {
    p.validate();
    const double a = p.a;
    auto f = [a](const VectorXd& u) -> VectorXd {
        VectorXd d(3);
        d << (a - 1.0) * u[0] - u[1] + u[0] * u[2],
            u[0] + (a - 1.0) * u[1] + u[1] * u[2],
            a * u[2] - (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
        return d;
    };
    auto jac = [a](const VectorXd& u) -> MatrixXd {
        MatrixXd A(3, 3);
        A << a - 1.0 + u[2], -1.0, u[0],
            1.0, a - 1.0 + u[2], u[1],
            -2.0 * u[0], -2.0 * u[1], a - 2.0 * u[2];
        return A;
    };

    LangfordBundle b{p, DynamicalSystem(3, "langford", f, jac)};
    b.R = std::sqrt((1.0 - a) * (2.0 * a - 1.0));
    b.T = 2.0 * M_PI;
    b.A2 << 0.0, b.R, -2.0 * b.R, 3.0 * a - 2.0;
    // roots of l^2 - (3a-2) l + 2 R^2
    const double tr = 3.0 * a - 2.0, det = 2.0 * b.R * b.R;
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        b.A2eigs[0] = 0.5 * (tr + std::sqrt(disc));
        b.A2eigs[1] = 0.5 * (tr - std::sqrt(disc));
    } else {
        b.A2eigs[0] = {0.5 * tr, 0.5 * std::sqrt(-disc)};
        b.A2eigs[1] = {0.5 * tr, -0.5 * std::sqrt(-disc)};
    }
    b.hurwitz = a < 2.0 / 3.0;
    b.provenance =
        "Langford system with the explicit 2*pi-periodic solution of radius "
        "sqrt((1-a)(2a-1)); transverse rotating-frame block has trace 3a-2";
    return b;
}

}  // namespace contracta
