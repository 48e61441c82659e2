#pragma once

#include <cassert>
#include <vector>

#include "terracini/dual.hpp"
#include "terracini/errors.hpp"
#include "terracini/fp.hpp"

namespace terracini {

// Dense row-major matrix over F_p or the dual numbers.
template <class R>
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<R> a;

    Matrix() = default;
    Matrix(int r, int c, R fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    R& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const R& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

template <class R>
std::vector<R> matvec(const Matrix<R>& m, const std::vector<R>& v) {
    assert(static_cast<int>(v.size()) == m.cols);
    std::vector<R> out;
    out.reserve(static_cast<size_t>(m.rows));
    for (int i = 0; i < m.rows; ++i) {
        R acc = m.at(i, 0) * v[0];
        for (int j = 1; j < m.cols; ++j) acc += m.at(i, j) * v[static_cast<size_t>(j)];
        out.push_back(acc);
    }
    return out;
}

struct RrefResult {
    Matrix<Fp> m;
    std::vector<int> pivot_cols;
    int rank = 0;
};

// Reduced row echelon form with first-nonzero pivoting. Over F_p there is no
// pivot-magnitude notion; scanning order keeps the result deterministic.
inline RrefResult rref(Matrix<Fp> m) {
    RrefResult out;
    int r = 0;
    for (int col = 0; col < m.cols && r < m.rows; ++col) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i) {
            if (!m.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Fp inv = m.at(r, col).inv();
        for (int j = col; j < m.cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, col).is_zero()) continue;
            Fp f = m.at(i, col);
            for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        out.pivot_cols.push_back(col);
        ++r;
    }
    out.rank = r;
    out.m = std::move(m);
    return out;
}

inline int rank(const Matrix<Fp>& m) {
    Matrix<Fp> w = m;
    int r = 0;
    for (int col = 0; col < w.cols && r < w.rows; ++col) {
        int piv = -1;
        for (int i = r; i < w.rows; ++i) {
            if (!w.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = col; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(r, j));
        Fp inv = w.at(r, col).inv();
        for (int i = r + 1; i < w.rows; ++i) {
            if (w.at(i, col).is_zero()) continue;
            Fp f = w.at(i, col) * inv;
            for (int j = col; j < w.cols; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        ++r;
    }
    return r;
}

// Canonical basis of the right kernel: one vector per free column, with a 1
// in the free position. Size is always cols - rank.
inline std::vector<std::vector<Fp>> kernel_basis(const Matrix<Fp>& m, const FieldContext& ctx) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
    for (int c : rr.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<Fp>> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        std::vector<Fp> v(static_cast<size_t>(m.cols), ctx.zero());
        v[static_cast<size_t>(free)] = ctx.one();
        for (size_t k = 0; k < rr.pivot_cols.size(); ++k)
            v[static_cast<size_t>(rr.pivot_cols[k])] = -rr.m.at(static_cast<int>(k), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Fp determinant(const Matrix<Fp>& m, const FieldContext& ctx) {
    assert(m.rows == m.cols);
    Matrix<Fp> w = m;
    Fp det = ctx.one();
    for (int col = 0; col < w.cols; ++col) {
        int piv = -1;
        for (int i = col; i < w.rows; ++i) {
            if (!w.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        }
        if (piv < 0) return ctx.zero();
        if (piv != col) {
            for (int j = col; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(col, j));
            det = -det;
        }
        det *= w.at(col, col);
        Fp inv = w.at(col, col).inv();
        for (int i = col + 1; i < w.rows; ++i) {
            if (w.at(i, col).is_zero()) continue;
            Fp f = w.at(i, col) * inv;
            for (int j = col; j < w.cols; ++j) w.at(i, j) -= f * w.at(col, j);
        }
    }
    return det;
}

inline void split_dual(const Matrix<Dual>& m, Matrix<Fp>& m0, Matrix<Fp>& m1) {
    assert(!m.a.empty());
    Fp z(0, m.a[0].a.p);
    m0 = Matrix<Fp>(m.rows, m.cols, z);
    m1 = Matrix<Fp>(m.rows, m.cols, z);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            m0.at(i, j) = m.at(i, j).a;
            m1.at(i, j) = m.at(i, j).b;
        }
}

namespace detail {

// Solves M0 * x = rhs for each rhs column, with free coordinates set to zero.
// Throws InternalInconsistency when some rhs leaves the column space.
inline std::vector<std::vector<Fp>> solve_particular(const Matrix<Fp>& m0,
                                                     const std::vector<std::vector<Fp>>& rhs,
                                                     const FieldContext& ctx) {
    const int k = static_cast<int>(rhs.size());
    Matrix<Fp> aug(m0.rows, m0.cols + k, ctx.zero());
    for (int i = 0; i < m0.rows; ++i) {
        for (int j = 0; j < m0.cols; ++j) aug.at(i, j) = m0.at(i, j);
        for (int j = 0; j < k; ++j) aug.at(i, m0.cols + j) = rhs[static_cast<size_t>(j)][static_cast<size_t>(i)];
    }
    RrefResult rr = rref(aug);
    for (int c : rr.pivot_cols)
        if (c >= m0.cols)
            throw InternalInconsistency("dual kernel lift: eps-part lies outside the column space");
    std::vector<std::vector<Fp>> sols(static_cast<size_t>(k),
                                      std::vector<Fp>(static_cast<size_t>(m0.cols), ctx.zero()));
    for (size_t r = 0; r < rr.pivot_cols.size(); ++r)
        for (int j = 0; j < k; ++j)
            sols[static_cast<size_t>(j)][static_cast<size_t>(rr.pivot_cols[r])] =
                rr.m.at(static_cast<int>(r), m0.cols + j);
    return sols;
}

}  // namespace detail

// Kernel of M0 + eps*M1 when the residue corank is exactly one. The result
// v0 + eps*v1 satisfies M0 v0 = 0 and M0 v1 = -M1 v0; v1 is the particular
// solution supported on the pivot columns, which pins the lift uniquely.
inline std::vector<Dual> kernel_lift(const Matrix<Dual>& m, const FieldContext& ctx) {
    Matrix<Fp> m0, m1;
    split_dual(m, m0, m1);
    auto basis = kernel_basis(m0, ctx);
    if (basis.size() != 1)
        throw CorankNotOne("kernel_lift: residue corank is " + std::to_string(basis.size()) +
                           ", expected 1");
    const std::vector<Fp>& v0 = basis[0];
    std::vector<Fp> rhs = matvec(m1, v0);
    for (Fp& x : rhs) x = -x;
    auto sols = detail::solve_particular(m0, {rhs}, ctx);
    std::vector<Dual> out;
    out.reserve(v0.size());
    for (size_t i = 0; i < v0.size(); ++i) out.push_back(Dual(v0[i], sols[0][i]));
    return out;
}

// Lifts the full canonical kernel basis of M0 through M0 + eps*M1. Used by
// the family constructions whose evaluation matrices have full row rank, so
// every residue kernel vector lifts; inconsistency is an internal error.
inline std::vector<std::vector<Dual>> lifted_kernel_basis(const Matrix<Dual>& m,
                                                          const FieldContext& ctx) {
    Matrix<Fp> m0, m1;
    split_dual(m, m0, m1);
    auto basis = kernel_basis(m0, ctx);
    std::vector<std::vector<Fp>> rhs;
    rhs.reserve(basis.size());
    for (const auto& v0 : basis) {
        std::vector<Fp> r = matvec(m1, v0);
        for (Fp& x : r) x = -x;
        rhs.push_back(std::move(r));
    }
    auto sols = detail::solve_particular(m0, rhs, ctx);
    std::vector<std::vector<Dual>> out;
    out.reserve(basis.size());
    for (size_t k = 0; k < basis.size(); ++k) {
        std::vector<Dual> v;
        v.reserve(basis[k].size());
        for (size_t i = 0; i < basis[k].size(); ++i) v.push_back(Dual(basis[k][i], sols[k][i]));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace terracini
