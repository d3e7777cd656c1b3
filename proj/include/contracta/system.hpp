#pragma once

#include <functional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "contracta/errors.hpp"
#include "contracta/linalg.hpp"

namespace contracta {

using VectorField = std::function<VectorXd(const VectorXd&)>;
using JacobianField = std::function<MatrixXd(const VectorXd&)>;

/// Central-difference Jacobian with per-component step h = 1e-6 * (1 + |x|_inf).
inline MatrixXd numeric_jacobian(const VectorField& f, const VectorXd& x) {
    const int n = static_cast<int>(x.size());
    const double h = 1e-6 * (1.0 + x.cwiseAbs().maxCoeff());
    MatrixXd J(n, n);
    VectorXd xp = x, xm = x;
    for (int i = 0; i < n; ++i) {
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        J.col(i) = (f(xp) - f(xm)) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return J;
}

/// Autonomous ODE dx/dt = f(x) with its Jacobian field. Immutable after
/// construction; safe to share across threads.
class DynamicalSystem {
public:
    DynamicalSystem(int n, std::string name, VectorField f, JacobianField jacobian = nullptr)
        : n_(n), name_(std::move(name)), f_(std::move(f)), jac_(std::move(jacobian)) {
        if (n_ <= 0) throw InputError("DynamicalSystem: dimension must be positive");
        if (!f_) throw InputError("DynamicalSystem: vector field is required");
        if (!jac_) {
            auto f_copy = f_;
            jac_ = [f_copy](const VectorXd& x) { return numeric_jacobian(f_copy, x); };
        }
    }

    int dim() const { return n_; }
    const std::string& name() const { return name_; }

    VectorXd f(const VectorXd& x) const {
        if (x.size() != n_) throw InputError("DynamicalSystem: state dimension mismatch");
        return f_(x);
    }

    MatrixXd jacobian(const VectorXd& x) const {
        if (x.size() != n_) throw InputError("DynamicalSystem: state dimension mismatch");
        return jac_(x);
    }

    /// Max column-wise disagreement between the supplied Jacobian and central
    /// differences at x; used by the self-check tests.
    double jacobian_consistency(const VectorXd& x) const {
        return (jacobian(x) - numeric_jacobian(f_, x)).cwiseAbs().maxCoeff();
    }

private:
    int n_;
    std::string name_;
    VectorField f_;
    JacobianField jac_;
};

}  // namespace contracta
