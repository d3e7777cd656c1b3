#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "contracta/errors.hpp"
#include "contracta/fractional.hpp"

namespace contracta {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline void require_finite(const MatrixXd& A, const char* who) {
    if (!A.allFinite()) throw InputError(std::string(who) + ": non-finite entries");
}

/// Relative symmetry check; tolerance is relative to the largest entry.
inline bool is_symmetric(const MatrixXd& A, double rel_tol = 1e-12) {
    const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
    return (A - A.transpose()).cwiseAbs().maxCoeff() <= rel_tol * std::max(scale, 1.0);
}

/// Singular values of a square matrix, descending. Deterministic for fixed input.
inline VectorXd singular_values(const MatrixXd& A) {
    require_finite(A, "singular_values");
    Eigen::JacobiSVD<MatrixXd> svd(A);
    return svd.singularValues();  // Eigen returns them sorted descending
}

/// sigma_1 ... sigma_{d0} * sigma_{d0+1}^s from a descending singular-value list.
/// Empty product is 1; the fractional factor is dropped when s == 0.
inline double omega_d_of_values(const VectorXd& sv, const FractionalDimension& dim) {
    if (sv.size() != dim.n)
        throw InputError("omega_d: dimension mismatch between matrix and FractionalDimension");
    double prod = 1.0;
    for (int i = 0; i < dim.d0; ++i) prod *= sv[i];
    if (dim.s > 0.0) prod *= std::pow(sv[dim.d0], dim.s);
    return prod;
}

/// Volume-growth functional on the singular values of A.
inline double omega_d(const MatrixXd& A, const FractionalDimension& dim) {
    if (A.rows() != A.cols() || A.rows() != dim.n)
        throw InputError("omega_d: matrix must be n x n with n = dim.n");
    return omega_d_of_values(singular_values(A), dim);
}

/// log of omega_d from a descending singular-value list; -inf on a zero factor.
inline double log_omega_d_of_values(const VectorXd& sv, const FractionalDimension& dim) {
    if (sv.size() != dim.n)
        throw InputError("log_omega_d: dimension mismatch");
    double acc = 0.0;
    for (int i = 0; i < dim.d0; ++i) acc += std::log(sv[i]);
    if (dim.s > 0.0) acc += dim.s * std::log(sv[dim.d0]);
    return acc;
}

inline void require_spd_shape(const MatrixXd& P, const char* who) {
    if (P.rows() != P.cols()) throw InputError(std::string(who) + ": matrix must be square");
    require_finite(P, who);
    if (!is_symmetric(P)) throw InputError(std::string(who) + ": matrix is not symmetric");
}

inline bool is_spd(const MatrixXd& P) {
    if (P.rows() != P.cols() || !P.allFinite() || !is_symmetric(P)) return false;
    Eigen::LLT<MatrixXd> llt(P);
    return llt.info() == Eigen::Success;
}

/// Eigenvalues of a symmetric matrix, descending.
inline VectorXd symmetric_eigenvalues(const MatrixXd& S) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(S, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
    return es.eigenvalues().reverse();
}

/// Symmetric positive definite square root.
inline MatrixXd spd_sqrt(const MatrixXd& P) {
    require_spd_shape(P, "spd_sqrt");
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(P);
    if (es.info() != Eigen::Success) throw NumericalError("spd_sqrt: eigensolver failed");
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw InputError("spd_sqrt: matrix is not positive definite");
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
           es.eigenvectors().transpose();
}

/// Principal logarithm of a symmetric positive definite matrix.
inline MatrixXd spd_log(const MatrixXd& P) {
    require_spd_shape(P, "spd_log");
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(P);
    if (es.info() != Eigen::Success) throw NumericalError("spd_log: eigensolver failed");
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw InputError("spd_log: matrix is not positive definite");
    return es.eigenvectors() * es.eigenvalues().array().log().matrix().asDiagonal() *
           es.eigenvectors().transpose();
}

/// Solves Sdot*S + S*Sdot = Pdot for the symmetric Sdot, with S SPD.
inline MatrixXd solve_sym_sylvester(const MatrixXd& S, const MatrixXd& Pdot) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
    if (es.info() != Eigen::Success) throw NumericalError("solve_sym_sylvester: eigensolver failed");
    const MatrixXd& V = es.eigenvectors();
    const VectorXd& d = es.eigenvalues();
    MatrixXd W = V.transpose() * Pdot * V;
    for (int i = 0; i < S.rows(); ++i)
        for (int j = 0; j < S.cols(); ++j) W(i, j) /= d[i] + d[j];
    return V * W * V.transpose();
}

/// Logarithmic norm for the spectral norm: top eigenvalue of (A + A^T)/2.
inline double log_norm2(const MatrixXd& A) {
    require_finite(A, "log_norm2");
    MatrixXd H = 0.5 * (A + A.transpose());
    return symmetric_eigenvalues(H)[0];
}

inline long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// All k-element subsets of {0,...,n-1} in lexicographic order.
inline std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

/// k-th multiplicative compound: the matrix of all k x k minors, rows and
/// columns indexed by lexicographically ordered k-subsets.
inline MatrixXd multiplicative_compound(const MatrixXd& A, int k) {
    const int n = static_cast<int>(A.rows());
    if (A.cols() != n) throw InputError("multiplicative_compound: matrix must be square");
    if (k < 1 || k > n) throw InputError("multiplicative_compound: k out of range");
    require_finite(A, "multiplicative_compound");
    const auto subsets = k_subsets(n, k);
    const long m = static_cast<long>(subsets.size());
    MatrixXd C(m, m);
    MatrixXd minor_block(k, k);
    for (long r = 0; r < m; ++r) {
        for (long c = 0; c < m; ++c) {
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) minor_block(i, j) = A(subsets[r][i], subsets[c][j]);
            C(r, c) = minor_block.determinant();
        }
    }
    return C;
}

/// k-th additive compound, d/de (I + e B)^(k) at e = 0 in closed form:
/// diagonal entries are trace slices, off-diagonal entries couple subsets
/// differing in one index with the sign (-1)^(r+c) of the positions.
inline MatrixXd additive_compound(const MatrixXd& B, int k) {
    const int n = static_cast<int>(B.rows());
    if (B.cols() != n) throw InputError("additive_compound: matrix must be square");
    if (k < 1 || k > n) throw InputError("additive_compound: k out of range");
    require_finite(B, "additive_compound");
    const auto subsets = k_subsets(n, k);
    const long m = static_cast<long>(subsets.size());
    MatrixXd C = MatrixXd::Zero(m, m);
    for (long r = 0; r < m; ++r) {
        for (int i : subsets[r]) C(r, r) += B(i, i);
        for (long c = 0; c < m; ++c) {
            if (r == c) continue;
            // locate the (at most one) differing index pair
            int miss_r = -1, miss_c = -1, pos_r = 0, pos_c = 0, diff = 0;
            {
                int i = 0, j = 0;
                while (i < k && j < k) {
                    if (subsets[r][i] == subsets[c][j]) { ++i; ++j; continue; }
                    if (subsets[r][i] < subsets[c][j]) { miss_r = subsets[r][i]; pos_r = i; ++i; }
                    else { miss_c = subsets[c][j]; pos_c = j; ++j; }
                    if (++diff > 2) break;
                }
                while (i < k) { miss_r = subsets[r][i]; pos_r = i; ++i; ++diff; }
                while (j < k) { miss_c = subsets[c][j]; pos_c = j; ++j; ++diff; }
            }
            if (diff == 2 && miss_r >= 0 && miss_c >= 0) {
                const double sign = ((pos_r + pos_c) % 2 == 0) ? 1.0 : -1.0;
                C(r, c) = sign * B(miss_r, miss_c);
            }
        }
    }
    return C;
}

}  // namespace contracta
