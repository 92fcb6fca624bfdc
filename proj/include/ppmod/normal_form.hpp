#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ppmod/matrix.hpp"

namespace ppmod {

namespace detail {

template <class D>
void swap_cols(Mat<D>& m, int j1, int j2) {
    if (j1 == j2) return;
    for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, j1), m.at(i, j2));
}

template <class D>
void swap_rows(Mat<D>& m, int i1, int i2) {
    if (i1 == i2) return;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(i1, j), m.at(i2, j));
}

/// col_j += c * col_js
template <class D>
void col_axpy(const D& dom, Mat<D>& m, int j, int js, const typename D::Elem& c) {
    for (int i = 0; i < m.rows; ++i)
        m.at(i, j) = dom.add(m.at(i, j), dom.mul(c, m.at(i, js)));
}

/// row_i += c * row_is
template <class D>
void row_axpy(const D& dom, Mat<D>& m, int i, int is, const typename D::Elem& c) {
    for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = dom.add(m.at(i, j), dom.mul(c, m.at(is, j)));
}

template <class D>
void scale_col(const D& dom, Mat<D>& m, int j, const typename D::Elem& u) {
    for (int i = 0; i < m.rows; ++i) m.at(i, j) = dom.mul(u, m.at(i, j));
}

template <class D>
void scale_row(const D& dom, Mat<D>& m, int i, const typename D::Elem& u) {
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = dom.mul(u, m.at(i, j));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Column-style Hermite form.  Invertible column operations only, so the
// column span (the generated submodule of D^rows) is preserved.  The result
// is the canonical echelon form: pivot rows strictly increase column by
// column, pivots are unit-normalized (positive over Z, monic over F_p[t]),
// entries left of a pivot are reduced modulo it, zero columns are dropped.
// Canonicity is what makes submodule equality a matrix comparison.
// ---------------------------------------------------------------------------
template <class D>
Mat<D> hermite_form(const D& dom, Mat<D> m) {
    const int k = m.rows, n = m.cols;
    int j0 = 0;
    for (int r = 0; r < k && j0 < n; ++r) {
        // Euclid on row r across the active columns until one survivor remains.
        while (true) {
            int jmin = -1;
            for (int j = j0; j < n; ++j)
                if (!dom.is_zero(m.at(r, j)) &&
                    (jmin < 0 || dom.size_less(m.at(r, j), m.at(r, jmin))))
                    jmin = j;
            if (jmin < 0) break;
            detail::swap_cols(m, j0, jmin);
            bool cleared = true;
            for (int j = j0 + 1; j < n; ++j) {
                if (dom.is_zero(m.at(r, j))) continue;
                auto [q, rem] = dom.divmod(m.at(r, j), m.at(r, j0));
                detail::col_axpy(dom, m, j, j0, dom.neg(q));
                if (!dom.is_zero(m.at(r, j))) cleared = false;
            }
            if (cleared) break;
        }
        if (j0 < n && !dom.is_zero(m.at(r, j0))) {
            auto u = dom.canon_unit(m.at(r, j0));
            if (!dom.eq(u, dom.one())) detail::scale_col(dom, m, j0, u);
            for (int j = 0; j < j0; ++j) {
                if (dom.is_zero(m.at(r, j))) continue;
                auto [q, rem] = dom.divmod(m.at(r, j), m.at(r, j0));
                detail::col_axpy(dom, m, j, j0, dom.neg(q));
            }
            ++j0;
        }
    }
    // Columns j0.. are zero by construction.
    Mat<D> out;
    out.rows = k;
    out.cols = j0;
    out.a.reserve(static_cast<std::size_t>(k) * j0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < j0; ++j) out.a.push_back(m.at(i, j));
    return out;
}

/// Pivot rows of an echelon (Hermite) matrix, in column order.
template <class D>
std::vector<int> echelon_pivot_rows(const D& dom, const Mat<D>& h) {
    std::vector<int> piv;
    piv.reserve(h.cols);
    for (int j = 0; j < h.cols; ++j) {
        int r = 0;
        while (r < h.rows && dom.is_zero(h.at(r, j))) ++r;
        piv.push_back(r);  // h.rows would mean a zero column; hermite_form drops those
    }
    return piv;
}

/// Canonical coset representative of v modulo the column span of echelon h.
template <class D>
std::vector<typename D::Elem> reduce_mod_echelon(const D& dom, const Mat<D>& h,
                                                 std::vector<typename D::Elem> v) {
    auto piv = echelon_pivot_rows(dom, h);
    for (int j = 0; j < h.cols; ++j) {
        int r = piv[j];
        if (dom.is_zero(v[r])) continue;
        auto [q, rem] = dom.divmod(v[r], h.at(r, j));
        if (dom.is_zero(q)) continue;
        auto nq = dom.neg(q);
        for (int i = r; i < h.rows; ++i)
            v[i] = dom.add(v[i], dom.mul(nq, h.at(i, j)));
    }
    return v;
}

/// Does v lie in the column span of echelon h?
template <class D>
bool member_of_echelon(const D& dom, const Mat<D>& h,
                       const std::vector<typename D::Elem>& v) {
    auto rep = reduce_mod_echelon(dom, h, v);
    for (const auto& e : rep)
        if (!dom.is_zero(e)) return false;
    return true;
}

/// Exact coordinates of v in the basis formed by the columns of echelon h.
template <class D>
std::optional<std::vector<typename D::Elem>> coords_in_echelon(
    const D& dom, const Mat<D>& h, std::vector<typename D::Elem> v) {
    auto piv = echelon_pivot_rows(dom, h);
    std::vector<typename D::Elem> c(h.cols, dom.zero());
    for (int j = 0; j < h.cols; ++j) {
        int r = piv[j];
        if (dom.is_zero(v[r])) continue;
        auto [q, rem] = dom.divmod(v[r], h.at(r, j));
        if (!dom.is_zero(rem)) return std::nullopt;
        c[j] = q;
        auto nq = dom.neg(q);
        for (int i = r; i < h.rows; ++i)
            v[i] = dom.add(v[i], dom.mul(nq, h.at(i, j)));
    }
    for (const auto& e : v)
        if (!dom.is_zero(e)) return std::nullopt;
    return c;
}

// ---------------------------------------------------------------------------
// Smith normal form: U * m * V = S with U, V invertible over the domain and
// S diagonal with successive divisibility d1 | d2 | ...  Diagonal entries are
// unit-normalized; zeros come last.
// ---------------------------------------------------------------------------
template <class D>
struct SmithResult {
    Mat<D> U, S, V;
    int rank = 0;  // number of nonzero diagonal entries
};

namespace detail {

/// Clear row t and column t of S (outside the pivot) by Euclidean steps.
template <class D>
void snf_clear_position(const D& dom, Mat<D>& S, Mat<D>& U, Mat<D>& V, int t) {
    const int m = S.rows, n = S.cols;
    while (true) {
        // Move the smallest nonzero of the trailing block to (t, t).
        int bi = -1, bj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (!dom.is_zero(S.at(i, j)) &&
                    (bi < 0 || dom.size_less(S.at(i, j), S.at(bi, bj)))) {
                    bi = i;
                    bj = j;
                }
        if (bi < 0) return;  // trailing block is zero
        detail::swap_rows(S, t, bi);
        detail::swap_rows(U, t, bi);
        detail::swap_cols(S, t, bj);
        detail::swap_cols(V, t, bj);

        bool dirty = false;
        for (int i = t + 1; i < m; ++i) {
            if (dom.is_zero(S.at(i, t))) continue;
            auto [q, rem] = dom.divmod(S.at(i, t), S.at(t, t));
            auto nq = dom.neg(q);
            detail::row_axpy(dom, S, i, t, nq);
            detail::row_axpy(dom, U, i, t, nq);
            if (!dom.is_zero(S.at(i, t))) dirty = true;
        }
        for (int j = t + 1; j < n; ++j) {
            if (dom.is_zero(S.at(t, j))) continue;
            auto [q, rem] = dom.divmod(S.at(t, j), S.at(t, t));
            auto nq = dom.neg(q);
            detail::col_axpy(dom, S, j, t, nq);
            detail::col_axpy(dom, V, j, t, nq);
            if (!dom.is_zero(S.at(t, j))) dirty = true;
        }
        if (!dirty) return;
    }
}

}  // namespace detail

template <class D>
SmithResult<D> smith_form(const D& dom, const Mat<D>& input) {
    const int m = input.rows, n = input.cols;
    SmithResult<D> res;
    res.U = Mat<D>::identity(dom, m);
    res.V = Mat<D>::identity(dom, n);
    res.S = input;
    const int dmax = std::min(m, n);

    for (int t = 0; t < dmax; ++t)
        detail::snf_clear_position(dom, res.S, res.U, res.V, t);

    // Enforce successive divisibility d_t | d_{t+1}.  Each fix works on the
    // 2x2 diagonal block (t, t+1) only, so the rest of the diagonal is safe:
    // pull d_{t+1} into column t, run the Euclid loop on that column, then a
    // single exact column step clears the fill-in (every entry of the block
    // is a combination of d_t and d_{t+1}, hence divisible by their gcd).
    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = 0; t + 1 < dmax; ++t) {
            const auto a = res.S.at(t, t);
            const auto b = res.S.at(t + 1, t + 1);
            if (dom.is_zero(a)) {
                if (dom.is_zero(b)) continue;
                detail::swap_rows(res.S, t, t + 1);
                detail::swap_rows(res.U, t, t + 1);
                detail::swap_cols(res.S, t, t + 1);
                detail::swap_cols(res.V, t, t + 1);
                changed = true;
                continue;
            }
            if (dom.is_zero(b) || dom.is_zero(dom.divmod(b, a).second)) continue;
            detail::col_axpy(dom, res.S, t, t + 1, dom.one());
            detail::col_axpy(dom, res.V, t, t + 1, dom.one());
            while (!dom.is_zero(res.S.at(t + 1, t))) {
                auto [q, rem] = dom.divmod(res.S.at(t, t), res.S.at(t + 1, t));
                auto nq = dom.neg(q);
                detail::row_axpy(dom, res.S, t, t + 1, nq);
                detail::row_axpy(dom, res.U, t, t + 1, nq);
                detail::swap_rows(res.S, t, t + 1);
                detail::swap_rows(res.U, t, t + 1);
            }
            if (!dom.is_zero(res.S.at(t, t + 1))) {
                auto q = dom.exact_div(res.S.at(t, t + 1), res.S.at(t, t));
                auto nq = dom.neg(q);
                detail::col_axpy(dom, res.S, t + 1, t, nq);
                detail::col_axpy(dom, res.V, t + 1, t, nq);
            }
            changed = true;
        }
    }

    for (int t = 0; t < dmax; ++t) {
        if (dom.is_zero(res.S.at(t, t))) continue;
        auto u = dom.canon_unit(res.S.at(t, t));
        if (!dom.eq(u, dom.one())) {
            detail::scale_row(dom, res.S, t, u);
            detail::scale_row(dom, res.U, t, u);
        }
        ++res.rank;
    }
    return res;
}

/// A particular solution of A x = b over the domain, if one exists.
template <class D>
std::optional<std::vector<typename D::Elem>> solve_domain(const D& dom, const Mat<D>& A,
                                                          const std::vector<typename D::Elem>& b) {
    if (A.rows != static_cast<int>(b.size()))
        throw DimensionMismatch("solve_domain: rhs length differs from row count");
    auto snf = smith_form(dom, A);
    auto z = mat_vec(dom, snf.U, b);
    std::vector<typename D::Elem> y(A.cols, dom.zero());
    const int dmax = std::min(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i) {
        if (i < dmax && !dom.is_zero(snf.S.at(i, i))) {
            auto [q, rem] = dom.divmod(z[i], snf.S.at(i, i));
            if (!dom.is_zero(rem)) return std::nullopt;
            y[i] = q;
        } else if (!dom.is_zero(z[i])) {
            return std::nullopt;
        }
    }
    return mat_vec(dom, snf.V, y);
}

/// Basis of the kernel lattice {x : A x = 0}, as columns.
template <class D>
Mat<D> kernel_basis(const D& dom, const Mat<D>& A) {
    auto snf = smith_form(dom, A);
    std::vector<int> free_cols;
    const int dmax = std::min(A.rows, A.cols);
    for (int j = 0; j < A.cols; ++j)
        if (j >= dmax || dom.is_zero(snf.S.at(j, j))) free_cols.push_back(j);
    return select_cols(snf.V, free_cols);
}

/// Fraction-free determinant (Bareiss).  Exact over any integral domain.
template <class D>
typename D::Elem determinant(const D& dom, Mat<D> A) {
    if (A.rows != A.cols) throw DimensionMismatch("determinant: matrix not square");
    const int n = A.rows;
    if (n == 0) return dom.one();
    bool negate = false;
    auto prev = dom.one();
    for (int k = 0; k + 1 < n; ++k) {
        if (dom.is_zero(A.at(k, k))) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!dom.is_zero(A.at(i, k))) { piv = i; break; }
            if (piv < 0) return dom.zero();
            detail::swap_rows(A, k, piv);
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                auto num = dom.sub(dom.mul(A.at(i, j), A.at(k, k)),
                                   dom.mul(A.at(i, k), A.at(k, j)));
                A.at(i, j) = dom.exact_div(num, prev);
            }
        prev = A.at(k, k);
    }
    auto det = A.at(n - 1, n - 1);
    return negate ? dom.neg(det) : det;
}

}  // namespace ppmod
