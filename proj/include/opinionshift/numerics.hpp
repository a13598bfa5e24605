#pragma once

#include "opinionshift/common.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>
#include <vector>

namespace opinionshift {

namespace detail {
template <typename Rhs>
Rhs solve_impl(const Matrix& a, const Rhs& b) {
    if (a.rows() != a.cols()) throw ValidationError("solve: matrix must be square");
    if (a.rows() != b.rows()) throw ValidationError("solve: dimension mismatch");
    if (a.rows() == 0) return b;
    Eigen::PartialPivLU<Matrix> lu(a);
    Rhs x = lu.solve(b);
    const double scale = 1.0 + b.cwiseAbs().maxCoeff();
    const double residual = (a * x - b).cwiseAbs().maxCoeff();
    if (!std::isfinite(residual) || residual > kTol * scale)
        throw NumericError("solve: system singular to tolerance (rcond ~ " +
                           std::to_string(lu.rcond()) + ", residual " + std::to_string(residual) +
                           ")");
    return x;
}
}  // namespace detail

// Direct dense solve with a residual guarantee of 1e-8*(1+|b|_inf).
inline Vector solve(const Matrix& a, const Vector& b) { return detail::solve_impl(a, b); }
inline Matrix solve(const Matrix& a, const Matrix& b) { return detail::solve_impl(a, b); }

inline Matrix invert(const Matrix& a) {
    return detail::solve_impl(a, Matrix(Matrix::Identity(a.rows(), a.cols())));
}

// Moore-Penrose pseudoinverse by SVD. Rank = number of singular values
// >= max(rows, cols) * sigma_max * 1e-12; a zero matrix maps to zero.
inline Matrix pinv(const Matrix& a) {
    if (a.size() == 0) return Matrix(a.cols(), a.rows());
    const auto options = Eigen::ComputeThinU | Eigen::ComputeThinV;
    Vector sigma;
    Matrix u, v;
    if (std::min(a.rows(), a.cols()) > 16) {
        Eigen::BDCSVD<Matrix> svd(a, options);
        sigma = svd.singularValues();
        u = svd.matrixU();
        v = svd.matrixV();
    } else {
        Eigen::JacobiSVD<Matrix> svd(a, options);
        sigma = svd.singularValues();
        u = svd.matrixU();
        v = svd.matrixV();
    }
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    if (sigma_max == 0.0) return Matrix::Zero(a.cols(), a.rows());
    const double cutoff = static_cast<double>(std::max(a.rows(), a.cols())) * sigma_max * kRankCutoff;
    Vector inv = Vector::Zero(sigma.size());
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) >= cutoff) inv(i) = 1.0 / sigma(i);
    return v * inv.asDiagonal() * u.transpose();
}

// (a + u v^T)^{-1} from a^{-1}.
inline Matrix sherman_morrison_update(const Matrix& a_inv, const Vector& u, const Vector& v) {
    if (a_inv.rows() != a_inv.cols() || a_inv.rows() != u.size() || u.size() != v.size())
        throw ValidationError("sherman_morrison_update: dimension mismatch");
    const Vector au = a_inv * u;
    const double denom = 1.0 + v.dot(au);
    if (!(std::abs(denom) > kPivotTol))
        throw NumericError("sherman_morrison_update: denominator " + std::to_string(denom) +
                           " makes the update singular");
    return a_inv - (au / denom) * (v.transpose() * a_inv);
}

// (L + kappa0 * e_{s0} e_{s0}^T)^{-1} from the Laplacian pseudoinverse of a
// strongly connected graph; q = D^{-1} pi spans the left kernel of L. Only
// this rank-1 case of the general pseudoinverse update is supported.
inline Matrix laplacian_rank1_pinv_update(const Matrix& l_pinv, NodeId s0, double kappa0,
                                          const Vector& q) {
    const Eigen::Index n = l_pinv.rows();
    if (l_pinv.cols() != n || q.size() != n)
        throw ValidationError("laplacian_rank1_pinv_update: dimension mismatch");
    if (s0 < 0 || s0 >= n) throw ValidationError("laplacian_rank1_pinv_update: bad node id");
    if (!(kappa0 > 0.0)) throw ValidationError("laplacian_rank1_pinv_update: kappa must be > 0");
    if (!(q(s0) > kPivotTol))
        throw NumericError("laplacian_rank1_pinv_update: q[s0] vanishes, update undefined");
    const Vector col = l_pinv.col(s0);
    const Eigen::RowVectorXd row = l_pinv.row(s0);
    const Vector ones = Vector::Ones(n);
    Matrix m = l_pinv;
    m.noalias() -= (col / q(s0)) * q.transpose();
    m.noalias() -= ones * row;
    m.noalias() += ((1.0 / kappa0 + l_pinv(s0, s0)) / q(s0)) * ones * q.transpose();
    return m;
}

// Inverse of `a` with row/column idx deleted, from a^{-1} (blockwise
// inversion downdate): subtract col*row/pivot, then drop idx.
inline Matrix block_remove_inverse(const Matrix& a_inv, Eigen::Index idx) {
    const Eigen::Index n = a_inv.rows();
    if (a_inv.cols() != n) throw ValidationError("block_remove_inverse: matrix must be square");
    if (idx < 0 || idx >= n) throw ValidationError("block_remove_inverse: index out of range");
    const double pivot = a_inv(idx, idx);
    if (!(std::abs(pivot) > kPivotTol))
        throw NumericError("block_remove_inverse: zero diagonal pivot at index " +
                           std::to_string(idx));
    std::vector<Eigen::Index> keep;
    keep.reserve(n - 1);
    for (Eigen::Index i = 0; i < n; ++i)
        if (i != idx) keep.push_back(i);
    Matrix out = a_inv(keep, keep);
    out.noalias() -= (a_inv(keep, {idx}) / pivot) * a_inv({idx}, keep);
    return out;
}

}  // namespace opinionshift
