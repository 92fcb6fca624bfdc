#pragma once

#include <vector>

#include "ppmod/matrix.hpp"

namespace ppmod {

/// Positive primitive formula in matrix normal shape: E yy (A yy = B xx),
/// with A an m x bound and B an m x arity matrix over the ring.  Formula
/// equality is matrix equality; semantic comparison is equivalent().
template <class D>
struct PpFormula {
    using E = typename D::Elem;

    Ring<D> ring;
    int arity = 0;
    int bound = 0;
    Mat<D> A, B;

    bool operator==(const PpFormula& o) const {
        return ring == o.ring && arity == o.arity && bound == o.bound && A == o.A && B == o.B;
    }
    bool operator!=(const PpFormula& o) const { return !(*this == o); }
};

template <class D>
PpFormula<D> make_formula(const Ring<D>& ring, int arity, int bound, const Mat<D>& A,
                          const Mat<D>& B) {
    if (A.rows != B.rows) throw DimensionMismatch("pp formula: A and B row counts differ");
    if (A.cols != bound || B.cols != arity)
        throw DimensionMismatch("pp formula: matrix widths do not match arity/bound");
    return PpFormula<D>{ring, arity, bound, reduce_entries(ring, A), reduce_entries(ring, B)};
}

/// The always-true formula of the given arity.
template <class D>
PpFormula<D> top_formula(const Ring<D>& ring, int arity) {
    Mat<D> a, b;
    a.rows = b.rows = 0;
    a.cols = 0;
    b.cols = arity;
    return make_formula(ring, arity, 0, a, b);
}

/// A | xx, i.e. E yy (A yy = xx); arity is the row count of A.
template <class D>
PpFormula<D> divisibility(const Ring<D>& ring, const Mat<D>& A) {
    return make_formula(ring, A.rows, A.cols, A, Mat<D>::identity(ring.dom, A.rows));
}

template <class D>
PpFormula<D> divisibility_by(const Ring<D>& ring, const typename D::Elem& a) {
    Mat<D> m(1, 1, a);
    return divisibility(ring, m);
}

/// C xx = 0 (no bound variables).
template <class D>
PpFormula<D> annihilator(const Ring<D>& ring, const Mat<D>& C) {
    Mat<D> a;
    a.rows = C.rows;
    a.cols = 0;
    return make_formula(ring, C.cols, 0, a, C);
}

template <class D>
PpFormula<D> annihilator_by(const Ring<D>& ring, const typename D::Elem& r) {
    Mat<D> m(1, 1, r);
    return annihilator(ring, m);
}

/// xx = 0.
template <class D>
PpFormula<D> zero_formula(const Ring<D>& ring, int arity) {
    return annihilator(ring, Mat<D>::identity(ring.dom, arity));
}

/// E y (xx = aa y  and  bb y = 0): the one-bound-variable cyclic shape.
template <class D>
PpFormula<D> cyc_formula(const Ring<D>& ring, const std::vector<typename D::Elem>& a_col,
                         const std::vector<typename D::Elem>& b_col) {
    const int n = static_cast<int>(a_col.size());
    const int r = static_cast<int>(b_col.size());
    Mat<D> A(n + r, 1, ring.zero());
    for (int i = 0; i < n; ++i) A.at(i, 0) = a_col[i];
    for (int i = 0; i < r; ++i) A.at(n + i, 0) = b_col[i];
    Mat<D> B = Mat<D>::zero(ring.dom, n + r, n);
    for (int i = 0; i < n; ++i) B.at(i, i) = ring.one();
    return make_formula(ring, n, 1, A, B);
}

/// E y (xx = aa y  and  r y = 0).
template <class D>
PpFormula<D> cypr_formula(const Ring<D>& ring, const std::vector<typename D::Elem>& a_col,
                          const typename D::Elem& r) {
    return cyc_formula(ring, a_col, std::vector<typename D::Elem>{r});
}

namespace detail {

template <class D>
void check_comparable(const PpFormula<D>& f, const PpFormula<D>& g) {
    if (f.ring != g.ring) throw RingMismatch("pp formulas over different rings");
    if (f.arity != g.arity) throw ArityMismatch("pp formulas of different arity");
}

}  // namespace detail

/// phi and psi: rows stacked, bound variables concatenated.
template <class D>
PpFormula<D> conj(const PpFormula<D>& f, const PpFormula<D>& g) {
    detail::check_comparable(f, g);
    const auto& dom = f.ring.dom;
    Mat<D> A = block_diag(dom, f.A, g.A);
    Mat<D> B = vstack(f.B, g.B);
    return make_formula(f.ring, f.arity, f.bound + g.bound, A, B);
}

/// phi + psi: xx = xx1 + xx2 with phi(xx1), psi(xx2); xx2 joins the bound block.
template <class D>
PpFormula<D> sum_formula(const PpFormula<D>& f, const PpFormula<D>& g) {
    detail::check_comparable(f, g);
    const auto& dom = f.ring.dom;
    const int n = f.arity;
    // rows: [A_f ya  + B_f xx2 = B_f xx] and [A_g yb - B_g xx2 = 0]
    Mat<D> top = hstack(hstack(f.A, Mat<D>::zero(dom, f.A.rows, g.bound)), f.B);
    Mat<D> bot = hstack(hstack(Mat<D>::zero(dom, g.A.rows, f.bound), g.A), mat_neg(dom, g.B));
    Mat<D> A = vstack(top, bot);
    Mat<D> B = vstack(f.B, Mat<D>::zero(dom, g.B.rows, n));
    return make_formula(f.ring, n, f.bound + g.bound + n, A, B);
}

/// Keep only the listed free variables; the others move into the bound block.
template <class D>
PpFormula<D> project(const PpFormula<D>& f, const std::vector<int>& keep) {
    std::vector<bool> keeping(f.arity, false);
    for (int i : keep) {
        if (i < 0 || i >= f.arity) throw BadIndex("project: free variable index out of range");
        keeping[i] = true;
    }
    std::vector<int> kept, dropped;
    for (int i = 0; i < f.arity; ++i) (keeping[i] ? kept : dropped).push_back(i);
    Mat<D> Bkeep = select_cols(f.B, kept);
    Mat<D> Bdrop = select_cols(f.B, dropped);
    // A yy + (-Bdrop) xdrop = Bkeep xkept
    Mat<D> A = hstack(f.A, mat_neg(f.ring.dom, Bdrop));
    return make_formula(f.ring, static_cast<int>(kept.size()),
                        f.bound + static_cast<int>(dropped.size()), A, Bkeep);
}

/// Substitute 0 for the listed free variables (delete their B-columns).
template <class D>
PpFormula<D> kernel(const PpFormula<D>& f, const std::vector<int>& zeroed) {
    std::vector<bool> kill(f.arity, false);
    for (int i : zeroed) {
        if (i < 0 || i >= f.arity) throw BadIndex("kernel: free variable index out of range");
        kill[i] = true;
    }
    std::vector<int> kept;
    for (int i = 0; i < f.arity; ++i)
        if (!kill[i]) kept.push_back(i);
    return make_formula(f.ring, static_cast<int>(kept.size()), f.bound, f.A,
                        select_cols(f.B, kept));
}

}  // namespace ppmod
