#pragma once

#include <optional>
#include <vector>

#include "ppmod/normal_form.hpp"

namespace ppmod {

namespace detail {

/// Columns m*e_1 .. m*e_k when the ring is a quotient D/(m); empty otherwise.
template <class D>
Mat<D> modulus_cols(const Ring<D>& ring, int ambient) {
    if (!ring.modulus) {
        Mat<D> none;
        none.rows = ambient;
        none.cols = 0;
        return none;
    }
    Mat<D> m = Mat<D>::zero(ring.dom, ambient, ambient);
    for (int i = 0; i < ambient; ++i) m.at(i, i) = *ring.modulus;
    return m;
}

}  // namespace detail

/// Finitely generated submodule of R^ambient.  Internally a lattice over the
/// base domain; for quotient rings the lattice always contains m*D^ambient,
/// so lattice equality is exactly submodule equality.  The canonical Hermite
/// form is computed at construction and never changes.
template <class D>
struct Submodule {
    using E = typename D::Elem;

    Ring<D> ring;
    int ambient = 0;
    Mat<D> gens;   // the columns handed in, ring-reduced
    Mat<D> canon;  // Hermite form of [gens | modulus-columns]

    static Submodule from_cols(const Ring<D>& ring, int ambient, const Mat<D>& cols) {
        if (cols.cols > 0 && cols.rows != ambient)
            throw AmbientMismatch("submodule generators do not match ambient rank");
        Submodule s;
        s.ring = ring;
        s.ambient = ambient;
        Mat<D> g = reduce_entries(ring, cols);
        g.rows = ambient;  // allow a 0x0 "no generators" matrix
        s.gens = g;
        s.canon = hermite_form(ring.dom, hstack(g, detail::modulus_cols(ring, ambient)));
        return s;
    }

    static Submodule zero(const Ring<D>& ring, int ambient) {
        Mat<D> none;
        none.rows = ambient;
        none.cols = 0;
        return from_cols(ring, ambient, none);
    }

    static Submodule full(const Ring<D>& ring, int ambient) {
        return from_cols(ring, ambient, Mat<D>::identity(ring.dom, ambient));
    }

    bool contains(const std::vector<E>& v) const {
        if (static_cast<int>(v.size()) != ambient)
            throw AmbientMismatch("membership: vector length differs from ambient rank");
        return member_of_echelon(ring.dom, canon, v);
    }

    std::vector<E> reduce(std::vector<E> v) const {
        return reduce_mod_echelon(ring.dom, canon, std::move(v));
    }
};

template <class D>
bool sub_membership(const std::vector<typename D::Elem>& v, const Submodule<D>& s) {
    return s.contains(v);
}

namespace detail {

template <class D>
void check_same_ambient(const Submodule<D>& a, const Submodule<D>& b) {
    if (a.ring != b.ring) throw RingMismatch("submodules over different rings");
    if (a.ambient != b.ambient) throw AmbientMismatch("submodules in different ambient ranks");
}

}  // namespace detail

template <class D>
Submodule<D> sub_sum(const Submodule<D>& a, const Submodule<D>& b) {
    detail::check_same_ambient(a, b);
    return Submodule<D>::from_cols(a.ring, a.ambient, hstack(a.canon, b.canon));
}

/// Intersection via the kernel trick: for kernel vectors (x, y) of [A | B],
/// A x = -B y runs exactly over the intersection lattice.
template <class D>
Submodule<D> sub_intersection(const Submodule<D>& a, const Submodule<D>& b) {
    detail::check_same_ambient(a, b);
    const auto& dom = a.ring.dom;
    Mat<D> stacked = hstack(a.canon, b.canon);
    Mat<D> ker = kernel_basis(dom, stacked);
    Mat<D> xpart;
    xpart.rows = a.canon.cols;
    xpart.cols = ker.cols;
    xpart.a.assign(ker.a.begin(), ker.a.begin() + static_cast<std::size_t>(xpart.rows) * ker.cols);
    return Submodule<D>::from_cols(a.ring, a.ambient, mat_mul(dom, a.canon, xpart));
}

template <class D>
bool sub_leq(const Submodule<D>& a, const Submodule<D>& b) {
    detail::check_same_ambient(a, b);
    for (int j = 0; j < a.canon.cols; ++j)
        if (!b.contains(a.canon.col(j))) return false;
    return true;
}

template <class D>
bool sub_eq(const Submodule<D>& a, const Submodule<D>& b) {
    detail::check_same_ambient(a, b);
    return a.canon == b.canon;
}

/// |S_big / S_small| as an exact cardinality.
template <class D>
Card quotient_order(const Submodule<D>& big, const Submodule<D>& small) {
    detail::check_same_ambient(big, small);
    if (!sub_leq(small, big)) throw NotContained("quotient_order: second argument not contained in first");
    const auto& dom = big.ring.dom;
    // Coordinates of the small generators in the (independent) big basis.
    Mat<D> coords = Mat<D>::zero(dom, big.canon.cols, small.canon.cols);
    for (int j = 0; j < small.canon.cols; ++j) {
        auto c = coords_in_echelon(dom, big.canon, small.canon.col(j));
        if (!c) throw Error("quotient_order: internal containment failure");
        for (int i = 0; i < big.canon.cols; ++i) coords.at(i, j) = (*c)[i];
    }
    auto snf = smith_form(dom, coords);
    if (snf.rank < big.canon.cols) return Card::inf();
    Card order = Card::fin(1);
    for (int t = 0; t < snf.rank; ++t) {
        auto cnt = dom.residue_count(snf.S.at(t, t));
        if (!cnt) return Card::inf();
        order = order * Card::fin(*cnt);
    }
    return order;
}

/// Some x with A x == b modulo the given submodule (and the ring modulus), or
/// nothing.  Any returned x verifies by substitution.
template <class D>
std::optional<std::vector<typename D::Elem>> solve_linear(
    const Ring<D>& ring, const Mat<D>& A, const std::vector<typename D::Elem>& b,
    const std::optional<Submodule<D>>& modulo = std::nullopt, bool alt_order = false) {
    if (A.rows != static_cast<int>(b.size()))
        throw DimensionMismatch("solve_linear: rhs length differs from row count");
    if (modulo) {
        if (modulo->ring != ring) throw RingMismatch("solve_linear: modulo over a different ring");
        if (modulo->ambient != A.rows)
            throw AmbientMismatch("solve_linear: modulo lives in a different ambient rank");
    }
    const auto& dom = ring.dom;
    Mat<D> aug = modulo ? hstack(A, modulo->canon)
                        : hstack(A, detail::modulus_cols(ring, A.rows));
    if (alt_order) {
        // Deterministic alternate tie-breaking: solve with x-columns reversed.
        std::vector<int> order;
        for (int j = A.cols - 1; j >= 0; --j) order.push_back(j);
        for (int j = A.cols; j < aug.cols; ++j) order.push_back(j);
        Mat<D> perm = select_cols(aug, order);
        auto sol = solve_domain(dom, perm, b);
        if (!sol) return std::nullopt;
        std::vector<typename D::Elem> x(A.cols, dom.zero());
        for (int j = 0; j < A.cols; ++j) x[A.cols - 1 - j] = ring.reduce((*sol)[j]);
        return x;
    }
    auto sol = solve_domain(dom, aug, b);
    if (!sol) return std::nullopt;
    std::vector<typename D::Elem> x(sol->begin(), sol->begin() + A.cols);
    for (auto& e : x) e = ring.reduce(e);
    return x;
}

template <class D>
std::optional<std::vector<typename D::Elem>> solve_linear(
    const Ring<D>& ring, const Mat<D>& A, const std::vector<typename D::Elem>& b,
    const Submodule<D>& modulo, bool alt_order = false) {
    return solve_linear(ring, A, b, std::optional<Submodule<D>>(modulo), alt_order);
}

}  // namespace ppmod
