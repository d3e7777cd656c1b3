#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "contracta/errors.hpp"
#include "contracta/fractional.hpp"
#include "contracta/linalg.hpp"

namespace contracta {

/// Solid ellipsoid { x : (x - center)^T shape^{-1} (x - center) <= 1 } stored by
/// its SPD shape matrix, which makes affine images exact; semi-axes are derived
/// on demand as square roots of the shape eigenvalues.
struct Ellipsoid {
    VectorXd center;
    MatrixXd shape;

    static Ellipsoid ball(int n, double radius, const VectorXd& center = VectorXd()) {
        if (radius <= 0.0) throw InputError("Ellipsoid::ball: radius must be positive");
        Ellipsoid e;
        e.center = center.size() == n ? center : VectorXd::Zero(n);
        e.shape = radius * radius * MatrixXd::Identity(n, n);
        return e;
    }

    /// From an axis-aligned semi-axis list (descending not required).
    static Ellipsoid axis_aligned(const VectorXd& semiaxes, const VectorXd& center = VectorXd()) {
        const int n = static_cast<int>(semiaxes.size());
        Ellipsoid e;
        e.center = center.size() == n ? center : VectorXd::Zero(n);
        e.shape = semiaxes.array().square().matrix().asDiagonal();
        return e;
    }

    int dim() const { return static_cast<int>(center.size()); }

    void validate() const {
        require_spd_shape(shape, "Ellipsoid");
        if (!is_spd(shape)) throw InputError("Ellipsoid: shape matrix is not positive definite");
    }

    /// Semi-axes, descending.
    VectorXd semiaxes() const {
        validate();
        return symmetric_eigenvalues(shape).cwiseSqrt();
    }
};

/// Image A * E (centers transform too); exact since shape -> A shape A^T.
inline Ellipsoid affine_image(const MatrixXd& A, const Ellipsoid& E) {
    require_finite(A, "affine_image");
    Ellipsoid out;
    out.center = A * E.center;
    out.shape = A * E.shape * A.transpose();
    return out;
}

/// x + c * E in the Minkowski sense, c > 0.
inline Ellipsoid translate_scale(const Ellipsoid& E, const VectorXd& x, double c) {
    if (!(c > 0.0)) throw InputError("translate_scale: c must be positive");
    Ellipsoid out;
    out.center = x + c * E.center;
    out.shape = c * c * E.shape;
    return out;
}

struct EllipsoidProfile {
    double varpi;       // semi-axis volume functional at dimension d
    double ecc;         // eccentricity: largest over smallest semi-axis
    VectorXd semiaxes;  // descending
};

/// Plain or P-weighted ellipsoid profile. The weighted quantities are those of
/// the image sqrt(P) * E, which realizes the P-metric measurements exactly.
inline EllipsoidProfile ellipsoid_profile(const Ellipsoid& E, const FractionalDimension& dim,
                                          const MatrixXd* P = nullptr) {
    if (E.dim() != dim.n) throw InputError("ellipsoid_profile: dimension mismatch");
    const Ellipsoid* target = &E;
    Ellipsoid weighted;
    if (P != nullptr) {
        if (P->rows() != dim.n) throw InputError("ellipsoid_profile: metric dimension mismatch");
        weighted = affine_image(spd_sqrt(*P), E);
        target = &weighted;
    }
    EllipsoidProfile out;
    out.semiaxes = target->semiaxes();
    if (out.semiaxes.minCoeff() <= 0.0)
        throw InputError("ellipsoid_profile: degenerate shape matrix");
    out.ecc = out.semiaxes[0] / out.semiaxes[dim.n - 1];
    out.varpi = omega_d_of_values(out.semiaxes, dim);
    return out;
}

}  // namespace contracta
