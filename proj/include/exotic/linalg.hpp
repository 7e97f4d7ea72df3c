#pragma once

// Dense complex linear-algebra helpers over Eigen: numerical rank with a
// relative singular-value cutoff, pivoted least squares, reduced echelon form.

#include "exotic/core.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <limits>

namespace exotic::linalg {

inline constexpr double default_rank_cutoff = 1e-8;

struct RankInfo {
    int rank = 0;
    std::vector<double> singular_values;  // descending
    double cutoff = 0.0;
    /// Smallest kept over largest discarded singular value. When nothing is
    /// discarded the denominator is machine epsilon times the largest one.
    double gap = 0.0;
};

inline RankInfo numerical_rank(const Matrix& m, double relative_cutoff = default_rank_cutoff) {
    RankInfo info;
    if (m.size() == 0) return info;
    // JacobiSVD: BDCSVD in Eigen 3.4.0 trips an index assertion on some complex shapes
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    info.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double smax = info.singular_values.front();
    info.cutoff = relative_cutoff * smax;
    for (double s : info.singular_values)
        if (s > info.cutoff) ++info.rank;
    if (info.rank == 0) return info;
    const double kept = info.singular_values[info.rank - 1];
    const double dropped = info.rank < static_cast<int>(info.singular_values.size())
                               ? info.singular_values[info.rank]
                               : std::numeric_limits<double>::epsilon() * smax;
    info.gap = dropped > 0.0 ? kept / dropped : std::numeric_limits<double>::infinity();
    return info;
}

inline int rank(const Matrix& m, double relative_cutoff = default_rank_cutoff) {
    return numerical_rank(m, relative_cutoff).rank;
}

/// Column-pivoted QR solution of min |a x - b|; basic solution when rank deficient.
inline Vector solve(const Matrix& a, const Vector& b, double relative_cutoff = default_rank_cutoff) {
    Eigen::ColPivHouseholderQR<Matrix> qr(a);
    qr.setThreshold(relative_cutoff);
    return qr.solve(b);
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// |a b| relative to |a| |b| in Frobenius norm; zero when an operand is zero.
inline double relative_product_residual(const Matrix& a, const Matrix& b) {
    const double scale = a.norm() * b.norm();
    return scale > 0.0 ? (a * b).norm() / scale : 0.0;
}

/// max |(a b)_ij| / (|a| |b|)_ij with |a|, |b| entrywise magnitude bounds of
/// the operands; a nonzero entry with zero bound gives infinity.
inline double bounded_product_residual(const Matrix& a, const Matrix& b, const Eigen::MatrixXd& a_abs,
                                       const Eigen::MatrixXd& b_abs) {
    const Matrix p = a * b;
    const Eigen::MatrixXd bound = a_abs * b_abs;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double v = std::abs(p.data()[i]);
        if (v == 0.0) continue;
        worst = std::max(worst, bound.data()[i] > 0.0 ? v / bound.data()[i] : std::numeric_limits<double>::infinity());
    }
    return worst;
}

/// max |a_ij - b_ij| / scale_ij; a nonzero difference with zero scale gives infinity.
inline double bounded_difference(const Matrix& a, const Matrix& b, const Eigen::MatrixXd& scale) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double v = std::abs(a.data()[i] - b.data()[i]);
        if (v == 0.0) continue;
        worst = std::max(worst, scale.data()[i] > 0.0 ? v / scale.data()[i] : std::numeric_limits<double>::infinity());
    }
    return worst;
}

/// Rows divided by their largest magnitude; zero rows are left alone. Rank
/// is unchanged, and a per-row rescaling of the input no longer affects it.
inline Matrix equilibrate_rows(Matrix m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const double s = m.row(r).cwiseAbs().maxCoeff();
        if (s > 0.0) m.row(r) /= s;
    }
    return m;
}

inline Matrix equilibrate_columns(const Matrix& m) { return equilibrate_rows(m.transpose()).transpose(); }

struct Echelon {
    Matrix reduced;
    std::vector<int> pivots;
};

/// Reduced row echelon form with partial pivoting, pivot columns taken
/// left to right. Entries below `tol * max|m|` count as zero.
inline Echelon rref(Matrix m, double tol = 1e-10) {
    Echelon out;
    const double scale = std::max(max_abs(m), 1e-300);
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index best = r;
        for (Eigen::Index i = r + 1; i < rows; ++i)
            if (std::abs(m(i, c)) > std::abs(m(best, c))) best = i;
        if (std::abs(m(best, c)) <= tol * scale) {
            m.col(c).tail(rows - r).setZero();
            continue;
        }
        m.row(r).swap(m.row(best));
        m.row(r) /= m(r, c);
        for (Eigen::Index i = 0; i < rows; ++i)
            if (i != r && m(i, c) != Complex{}) m.row(i) -= m(i, c) * m.row(r);
        out.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    for (Eigen::Index i = 0; i < m.size(); ++i)
        if (std::abs(m.data()[i]) <= tol * scale) m.data()[i] = 0.0;
    out.reduced = m.topRows(r);
    return out;
}

/// Null-space basis read off the reduced echelon form: one column per free
/// variable, with a unit entry at that variable.
inline Matrix echelon_null_space(const Matrix& m, double tol = 1e-10) {
    const auto e = rref(m, tol);
    const Eigen::Index cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int p : e.pivots) is_pivot[p] = true;
    std::vector<int> free;
    for (Eigen::Index c = 0; c < cols; ++c)
        if (!is_pivot[c]) free.push_back(static_cast<int>(c));
    Matrix basis = Matrix::Zero(cols, static_cast<Eigen::Index>(free.size()));
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = 1.0;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, free[k]);
    }
    return basis;
}

}  // namespace exotic::linalg
