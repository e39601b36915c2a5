/**
 * Small exact dense routines over rational matrices: reduced row echelon
 * form, nullspace bases and particular solutions. Deterministic pivoting
 * (first nonzero entry in column order) so every canonical form derived from
 * these is reproducible bit for bit.
 */

#ifndef MSP_LINALG_HPP
#define MSP_LINALG_HPP

#include "msp/rational.hpp"

#include <optional>
#include <vector>

namespace msp {

/** RREF in place; returns the pivot column indices (their count is the rank). */
inline std::vector<int> rref_in_place(MatrixXr& m)
{
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i) {
            if (m(i, c) != 0) {
                p = i;
                break;
            }
        }
        if (p < 0)
            continue;
        if (p != r)
            m.row(p).swap(m.row(r));
        const Rational piv = m(r, c);
        m.row(r) /= piv;
        for (int i = 0; i < rows; ++i) {
            if (i != r && m(i, c) != 0) {
                const Rational f = m(i, c);
                m.row(i) -= f * m.row(r);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/** Canonical nullspace basis of A (unit value at each free column). */
inline std::vector<VectorXr> nullspace_basis(const MatrixXr& a)
{
    MatrixXr m = a;
    const std::vector<int> pivots = rref_in_place(m);
    const int cols = static_cast<int>(a.cols());
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots)
        is_pivot[c] = true;

    std::vector<VectorXr> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        VectorXr v = VectorXr::Zero(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -m(static_cast<int>(i), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/** One exact solution of A x = b, or nullopt when the system is inconsistent. */
inline std::optional<VectorXr> solve_particular(const MatrixXr& a, const VectorXr& b)
{
    const int cols = static_cast<int>(a.cols());
    MatrixXr m(a.rows(), cols + 1);
    m.leftCols(cols) = a;
    m.col(cols) = b;
    const std::vector<int> pivots = rref_in_place(m);
    if (!pivots.empty() && pivots.back() == cols)
        return std::nullopt;
    VectorXr x = VectorXr::Zero(cols);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = m(static_cast<int>(i), cols);
    return x;
}

} // namespace msp

#endif // MSP_LINALG_HPP
