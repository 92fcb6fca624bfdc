#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ppmod/fpmod.hpp"
#include "ppmod/pp_formula.hpp"

namespace ppmod {

/// A module together with a distinguished tuple (columns of `tuple`, one per
/// free variable).
template <class D>
struct PointedModule {
    std::shared_ptr<const FpModule<D>> mod;
    Mat<D> tuple;  // num_gens x arity, canonical coordinates

    int arity() const { return tuple.cols; }
};

template <class D>
PointedModule<D> pointed(std::shared_ptr<const FpModule<D>> mod, Mat<D> tuple) {
    if (tuple.rows != mod->num_gens && tuple.cols > 0)
        throw DimensionMismatch("pointed module: tuple column length differs from generators");
    std::vector<typename D::Elem> staged;
    staged.reserve(tuple.a.size());
    for (int j = 0; j < tuple.cols; ++j) {
        auto c = mod->rel.reduce(tuple.col(j));
        staged.insert(staged.end(), c.begin(), c.end());
    }
    Mat<D> t = transpose(Mat<D>::from_data(tuple.cols, mod->num_gens, std::move(staged)));
    return PointedModule<D>{std::move(mod), std::move(t)};
}

template <class D>
PointedModule<D> pointed(std::shared_ptr<const FpModule<D>> mod,
                         const std::vector<ModElem<D>>& tuple) {
    Mat<D> t = Mat<D>::zero(mod->ring.dom, mod->num_gens, static_cast<int>(tuple.size()));
    for (int j = 0; j < t.cols; ++j) {
        if (*tuple[j].mod != *mod) throw ModuleMismatch("pointed module: tuple entry elsewhere");
        for (int i = 0; i < mod->num_gens; ++i) t.at(i, j) = tuple[j].coords[i];
    }
    return PointedModule<D>{std::move(mod), std::move(t)};
}

namespace detail {

/// Stacked coordinates of a tuple (columns of t), as one long vector.
template <class D>
std::vector<typename D::Elem> stack_tuple(const Mat<D>& t) {
    std::vector<typename D::Elem> v;
    v.reserve(t.a.size());
    for (int j = 0; j < t.cols; ++j)
        for (int i = 0; i < t.rows; ++i) v.push_back(t.at(i, j));
    return v;
}

template <class D>
Mat<D> unstack_tuple(std::vector<typename D::Elem> v, int k, int n) {
    return transpose(Mat<D>::from_data(n, k, std::move(v)));
}

}  // namespace detail

/// Does the tuple satisfy the formula in its module?  One linear solve: find
/// bound-variable coordinates and relation slack with A yy = B aa.
template <class D>
bool satisfies(const FpModule<D>& m, const Mat<D>& tuple, const PpFormula<D>& f) {
    if (m.ring != f.ring) throw RingMismatch("satisfies: formula over a different ring");
    if (tuple.cols != f.arity) throw ArityMismatch("satisfies: tuple length differs from arity");
    const auto& dom = m.ring.dom;
    const int k = m.num_gens;
    Mat<D> bigA = kron_identity(dom, f.A, k);
    Mat<D> relblock = block_diag_copies(dom, m.rel.canon, f.A.rows);
    Mat<D> lhs = hstack(bigA, relblock);
    Mat<D> bigB = kron_identity(dom, f.B, k);
    auto rhs = mat_vec(dom, bigB, detail::stack_tuple(tuple));
    return solve_domain(dom, lhs, rhs).has_value();
}

template <class D>
bool satisfies(const PointedModule<D>& p, const PpFormula<D>& f) {
    return satisfies(*p.mod, p.tuple, f);
}

/// The solution subgroup phi(M) <= M^arity, as a canonical lattice in
/// R^(arity * num_gens) (stacked coordinates; contains the relation lattice
/// of M^arity, so membership and comparisons act on cosets).
template <class D>
Submodule<D> evaluate(const PpFormula<D>& f, const FpModule<D>& m) {
    if (m.ring != f.ring) throw RingMismatch("evaluate: formula over a different ring");
    const auto& dom = m.ring.dom;
    const int k = m.num_gens;
    const int nk = f.arity * k;
    Mat<D> bigB = kron_identity(dom, f.B, k);
    Mat<D> bigA = kron_identity(dom, f.A, k);
    Mat<D> relblock = block_diag_copies(dom, m.rel.canon, f.B.rows);
    Mat<D> ker = kernel_basis(dom, hstack(hstack(bigB, bigA), relblock));
    Mat<D> xpart = submatrix_rows(ker, 0, nk);
    Mat<D> ambient_rel = block_diag_copies(dom, m.rel.canon, f.arity);
    return Submodule<D>::from_cols(m.ring, nk, hstack(xpart, ambient_rel));
}

/// Number of solutions of f in M (cosets, not lattice points).
template <class D>
Card solution_count(const PpFormula<D>& f, const FpModule<D>& m) {
    auto sols = evaluate(f, m);
    auto rel_n = Submodule<D>::from_cols(m.ring, sols.ambient,
                                         block_diag_copies(m.ring.dom, m.rel.canon, f.arity));
    return quotient_order(sols, rel_n);
}

/// Free realization: generators (xx, yy) with relation rows [B | -A]; the
/// distinguished tuple is the images of the xx generators.
template <class D>
PointedModule<D> free_realization(const PpFormula<D>& f) {
    const auto& dom = f.ring.dom;
    Mat<D> rows = hstack(f.B, mat_neg(dom, f.A));
    auto m = share(make_module(f.ring, f.arity + f.bound, rows));
    Mat<D> tuple = Mat<D>::zero(dom, f.arity + f.bound, f.arity);
    for (int j = 0; j < f.arity; ++j) tuple.at(j, j) = f.ring.one();
    return pointed(std::move(m), std::move(tuple));
}

/// The canonical generator of the pp type of the tuple: E yy (xx = G yy and
/// H yy = 0) with G the tuple in generator coordinates and H the relations.
template <class D>
PpFormula<D> canonical_generator(const PointedModule<D>& p) {
    const auto& m = *p.mod;
    const auto& dom = m.ring.dom;
    const int n = p.arity(), k = m.num_gens;
    Mat<D> G = transpose(p.tuple);                       // n x k
    Mat<D> H = m.relations;                              // r x k
    Mat<D> A = vstack(G, H);
    Mat<D> B = vstack(Mat<D>::identity(dom, n), Mat<D>::zero(dom, H.rows, n));
    return make_formula(m.ring, n, k, A, B);
}

/// Decidable implication: phi <= psi iff the distinguished tuple of the free
/// realization of phi satisfies psi.
template <class D>
bool implies(const PpFormula<D>& f, const PpFormula<D>& g) {
    detail::check_comparable(f, g);
    auto fr = free_realization(f);
    return satisfies(fr, g);
}

template <class D>
bool equivalent(const PpFormula<D>& f, const PpFormula<D>& g) {
    return implies(f, g) && implies(g, f);
}

template <class D>
bool freely_realizes(const PointedModule<D>& p, const PpFormula<D>& f) {
    if (p.arity() != f.arity) throw ArityMismatch("freely_realizes: arity differs");
    if (!satisfies(p, f)) return false;
    return equivalent(canonical_generator(p), f);
}

/// |phi(M) / psi(M)| for psi <= phi.
template <class D>
Card pp_index(const PpFormula<D>& f, const PpFormula<D>& g, const FpModule<D>& m) {
    detail::check_comparable(f, g);
    if (!implies(g, f)) throw NotContained("pp_index: second formula does not imply the first");
    return quotient_order(evaluate(f, m), evaluate(g, m));
}

}  // namespace ppmod
