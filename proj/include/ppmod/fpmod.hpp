#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ppmod/submodule.hpp"

namespace ppmod {

/// Finitely presented module over R: k generators and a relation row per
/// constraint among them.  Relations are kept in canonical form (the Hermite
/// form of the relation lattice), so two presentations of the same quotient
/// stored through this type compare equal iff the lattices agree.
template <class D>
struct FpModule {
    using E = typename D::Elem;

    Ring<D> ring;
    int num_gens = 0;
    Mat<D> relations;        // canonical relation rows (user-facing)
    Submodule<D> rel;        // the relation lattice in R^num_gens

    bool operator==(const FpModule& o) const {
        return ring == o.ring && num_gens == o.num_gens && rel.canon == o.rel.canon;
    }
    bool operator!=(const FpModule& o) const { return !(*this == o); }
};

namespace detail {

/// Ring-reduced canonical relation rows: transpose of the canonical lattice
/// with entries reduced and all-zero rows dropped (those are pure modulus
/// relations, invisible over the quotient ring).
template <class D>
Mat<D> relation_rows_from_canon(const Ring<D>& ring, const Submodule<D>& rel) {
    Mat<D> rows = reduce_entries(ring, transpose(rel.canon));
    Mat<D> out;
    out.rows = 0;
    out.cols = rows.cols;
    for (int i = 0; i < rows.rows; ++i) {
        bool zero = true;
        for (int j = 0; j < rows.cols; ++j)
            if (!ring.dom.is_zero(rows.at(i, j))) { zero = false; break; }
        if (!zero) {
            out.a.insert(out.a.end(), rows.a.begin() + static_cast<std::size_t>(i) * rows.cols,
                         rows.a.begin() + static_cast<std::size_t>(i + 1) * rows.cols);
            ++out.rows;
        }
    }
    return out;
}

}  // namespace detail

template <class D>
FpModule<D> make_module(const Ring<D>& ring, int num_gens, const Mat<D>& relation_rows) {
    if (relation_rows.rows > 0 && relation_rows.cols != num_gens)
        throw DimensionMismatch("make_module: relation rows must have num_gens columns");
    FpModule<D> m;
    m.ring = ring;
    m.num_gens = num_gens;
    m.rel = Submodule<D>::from_cols(ring, num_gens, transpose(relation_rows));
    m.relations = detail::relation_rows_from_canon(ring, m.rel);
    return m;
}

/// R / (ideal generated by the given elements); the empty list gives R itself.
template <class D>
FpModule<D> make_cyclic(const Ring<D>& ring, const std::vector<typename D::Elem>& ideal_gens) {
    Mat<D> rows;
    rows.rows = static_cast<int>(ideal_gens.size());
    rows.cols = 1;
    rows.a = ideal_gens;
    return make_module(ring, 1, rows);
}

template <class D>
FpModule<D> make_free(const Ring<D>& ring, int rank) {
    Mat<D> none;
    none.rows = 0;
    none.cols = rank;
    return make_module(ring, rank, none);
}

template <class D>
FpModule<D> zero_module(const Ring<D>& ring) {
    return make_cyclic(ring, {ring.one()});
}

/// Element of an f.p. module, stored as the unique canonical coset
/// representative, so equality is coordinate equality.
template <class D>
struct ModElem {
    using E = typename D::Elem;

    std::shared_ptr<const FpModule<D>> mod;
    std::vector<E> coords;
};

template <class D>
std::shared_ptr<const FpModule<D>> share(FpModule<D> m) {
    return std::make_shared<const FpModule<D>>(std::move(m));
}

template <class D>
ModElem<D> elem(std::shared_ptr<const FpModule<D>> mod, std::vector<typename D::Elem> coords) {
    if (static_cast<int>(coords.size()) != mod->num_gens)
        throw DimensionMismatch("elem: coordinate length differs from generator count");
    ModElem<D> e;
    e.coords = mod->rel.reduce(std::move(coords));
    e.mod = std::move(mod);
    return e;
}

template <class D>
ModElem<D> elem_zero(std::shared_ptr<const FpModule<D>> mod) {
    return elem(mod, std::vector<typename D::Elem>(mod->num_gens, mod->ring.zero()));
}

/// i-th generator as an element.
template <class D>
ModElem<D> generator(std::shared_ptr<const FpModule<D>> mod, int i) {
    if (i < 0 || i >= mod->num_gens) throw BadIndex("generator index out of range");
    std::vector<typename D::Elem> c(mod->num_gens, mod->ring.zero());
    c[i] = mod->ring.one();
    return elem(mod, std::move(c));
}

namespace detail {

template <class D>
void check_same_module(const ModElem<D>& a, const ModElem<D>& b) {
    if (*a.mod != *b.mod) throw ModuleMismatch("elements of different modules");
}

}  // namespace detail

template <class D>
bool elem_eq(const ModElem<D>& a, const ModElem<D>& b) {
    detail::check_same_module(a, b);
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        if (!a.mod->ring.dom.eq(a.coords[i], b.coords[i])) return false;
    return true;
}

template <class D>
ModElem<D> elem_add(const ModElem<D>& a, const ModElem<D>& b) {
    detail::check_same_module(a, b);
    std::vector<typename D::Elem> c(a.coords.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.mod->ring.dom.add(a.coords[i], b.coords[i]);
    return elem(a.mod, std::move(c));
}

template <class D>
ModElem<D> elem_neg(const ModElem<D>& a) {
    std::vector<typename D::Elem> c(a.coords.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.mod->ring.dom.neg(a.coords[i]);
    return elem(a.mod, std::move(c));
}

template <class D>
ModElem<D> elem_sub(const ModElem<D>& a, const ModElem<D>& b) {
    return elem_add(a, elem_neg(b));
}

template <class D>
ModElem<D> scalar_mul(const typename D::Elem& r, const ModElem<D>& a) {
    std::vector<typename D::Elem> c(a.coords.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.mod->ring.dom.mul(r, a.coords[i]);
    return elem(a.mod, std::move(c));
}

template <class D>
bool elem_is_zero(const ModElem<D>& a) {
    for (const auto& e : a.coords)
        if (!a.mod->ring.dom.is_zero(e)) return false;
    return true;
}

template <class D>
Card module_order(const FpModule<D>& m) {
    return quotient_order(Submodule<D>::full(m.ring, m.num_gens), m.rel);
}

/// Nontrivial invariant factors and free rank of the presented module.
template <class D>
struct InvariantFactors {
    std::vector<typename D::Elem> torsion;  // non-unit, nonzero, d1 | d2 | ...
    int free_rank = 0;
};

template <class D>
InvariantFactors<D> invariant_factors(const FpModule<D>& m) {
    auto snf = smith_form(m.ring.dom, m.rel.canon);
    InvariantFactors<D> inv;
    inv.free_rank = m.num_gens - snf.rank;
    for (int t = 0; t < snf.rank; ++t)
        if (!m.ring.dom.is_unit(snf.S.at(t, t))) inv.torsion.push_back(snf.S.at(t, t));
    return inv;
}

template <class D>
Card elem_order(const ModElem<D>& a) {
    const auto& m = *a.mod;
    auto cyclic = Submodule<D>::from_cols(
        m.ring, m.num_gens, hstack(Mat<D>::from_col(a.coords), m.rel.canon));
    return quotient_order(cyclic, m.rel);
}

/// All elements of a finite module; nothing when infinite or above the bound.
template <class D>
std::optional<std::vector<ModElem<D>>> enumerate_elements(
    std::shared_ptr<const FpModule<D>> mod, const mpz_class& bound = mpz_class(1000000)) {
    const auto& dom = mod->ring.dom;
    const auto& canon = mod->rel.canon;
    if (canon.cols < mod->num_gens) return std::nullopt;  // a free direction remains
    auto piv = echelon_pivot_rows(dom, canon);
    // Count representatives: the product of residue counts at the pivots.
    std::vector<mpz_class> counts;
    mpz_class total = 1;
    std::vector<int> pivot_col_of_row(mod->num_gens, -1);
    for (int j = 0; j < canon.cols; ++j) {
        if (pivot_col_of_row[piv[j]] < 0) pivot_col_of_row[piv[j]] = j;
    }
    for (int r = 0; r < mod->num_gens; ++r) {
        if (pivot_col_of_row[r] < 0) return std::nullopt;
        auto cnt = dom.residue_count(canon.at(r, pivot_col_of_row[r]));
        if (!cnt) return std::nullopt;
        counts.push_back(*cnt);
        total *= *cnt;
        if (total > bound) return std::nullopt;
    }
    std::vector<ModElem<D>> out;
    out.reserve(total.get_ui());
    std::vector<mpz_class> idx(mod->num_gens, 0);
    while (true) {
        std::vector<typename D::Elem> coords;
        coords.reserve(mod->num_gens);
        for (int r = 0; r < mod->num_gens; ++r)
            coords.push_back(dom.residue_at(canon.at(r, pivot_col_of_row[r]), idx[r]));
        out.push_back(elem(mod, std::move(coords)));
        int r = 0;
        while (r < mod->num_gens) {
            idx[r] += 1;
            if (idx[r] < counts[r]) break;
            idx[r] = 0;
            ++r;
        }
        if (r == mod->num_gens) break;
        if (mod->num_gens == 0) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Morphisms.
// ---------------------------------------------------------------------------

template <class D>
struct ModMorphism {
    std::shared_ptr<const FpModule<D>> src, dst;
    Mat<D> matrix;  // dst.num_gens x src.num_gens, acting on coordinate columns
};

/// Outcome of the well-definedness check: either the morphism, or a source
/// relation that fails to land in the target's relation lattice.
template <class D>
struct WelldefResult {
    std::optional<ModMorphism<D>> morphism;
    std::optional<std::vector<typename D::Elem>> violating_relation;

    bool ok() const { return morphism.has_value(); }
};

template <class D>
WelldefResult<D> check_welldefined(std::shared_ptr<const FpModule<D>> src,
                                   std::shared_ptr<const FpModule<D>> dst, const Mat<D>& matrix) {
    if (src->ring != dst->ring) throw RingMismatch("morphism between modules over different rings");
    if (matrix.rows != dst->num_gens || matrix.cols != src->num_gens)
        throw DimensionMismatch("morphism matrix has wrong shape");
    const auto& dom = src->ring.dom;
    for (int i = 0; i < src->relations.rows; ++i) {
        auto image = mat_vec(dom, matrix, src->relations.row(i));
        if (!dst->rel.contains(image)) {
            WelldefResult<D> r;
            r.violating_relation = src->relations.row(i);
            return r;
        }
    }
    WelldefResult<D> r;
    Mat<D> reduced = reduce_entries(src->ring, matrix);
    r.morphism = ModMorphism<D>{std::move(src), std::move(dst), std::move(reduced)};
    return r;
}

template <class D>
ModMorphism<D> identity_morphism(std::shared_ptr<const FpModule<D>> m) {
    auto id = Mat<D>::identity(m->ring.dom, m->num_gens);
    return ModMorphism<D>{m, m, std::move(id)};
}

template <class D>
ModMorphism<D> compose(const ModMorphism<D>& g, const ModMorphism<D>& f) {
    if (*g.src != *f.dst) throw ModuleMismatch("compose: inner modules differ");
    return ModMorphism<D>{f.src, g.dst,
                          reduce_entries(f.src->ring, mat_mul(f.src->ring.dom, g.matrix, f.matrix))};
}

template <class D>
ModElem<D> apply(const ModMorphism<D>& f, const ModElem<D>& e) {
    if (*e.mod != *f.src) throw ModuleMismatch("apply: element not in the source module");
    return elem(f.dst, mat_vec(f.src->ring.dom, f.matrix, e.coords));
}

/// {x in R^src : f(x) = 0}, as a lattice over the base domain.
template <class D>
Submodule<D> morphism_kernel_lattice(const ModMorphism<D>& f) {
    const auto& dom = f.src->ring.dom;
    Mat<D> ker = kernel_basis(dom, hstack(f.matrix, f.dst->rel.canon));
    Mat<D> xpart = submatrix_rows(ker, 0, f.src->num_gens);
    return Submodule<D>::from_cols(f.src->ring, f.src->num_gens, xpart);
}

template <class D>
bool is_injective(const ModMorphism<D>& f) {
    return sub_leq(morphism_kernel_lattice(f), f.src->rel);
}

/// Find any morphism src -> dst carrying each column of `from` to the matching
/// column of `to` (as module elements).  Solves for the matrix entries and a
/// slack in the target relation lattice simultaneously.
template <class D>
std::optional<ModMorphism<D>> find_morphism(std::shared_ptr<const FpModule<D>> src,
                                            std::shared_ptr<const FpModule<D>> dst,
                                            const Mat<D>& from, const Mat<D>& to,
                                            bool alt_order = false) {
    if (src->ring != dst->ring) throw RingMismatch("find_morphism: rings differ");
    if (from.cols != to.cols) throw DimensionMismatch("find_morphism: constraint counts differ");
    if (from.rows != src->num_gens || to.rows != dst->num_gens)
        throw DimensionMismatch("find_morphism: constraint columns have wrong length");
    const auto& dom = src->ring.dom;
    const int ks = src->num_gens, kt = dst->num_gens;
    const int rc = dst->rel.canon.cols;

    // Constraints: T * from_j = to_j + rel_dst * s_j, and T * rho = rel_dst * s
    // for each source relation generator rho.
    std::vector<Mat<D>> constraint_vecs;
    std::vector<std::vector<typename D::Elem>> rhs;
    for (int j = 0; j < from.cols; ++j) {
        constraint_vecs.push_back(Mat<D>::from_row(from.col(j)));
        rhs.push_back(to.col(j));
    }
    for (int j = 0; j < src->rel.canon.cols; ++j) {
        constraint_vecs.push_back(Mat<D>::from_row(src->rel.canon.col(j)));
        rhs.push_back(std::vector<typename D::Elem>(kt, dom.zero()));
    }

    const int nc = static_cast<int>(constraint_vecs.size());
    Mat<D> big = Mat<D>::zero(dom, nc * kt, ks * kt + nc * rc);
    std::vector<typename D::Elem> b;
    b.reserve(static_cast<std::size_t>(nc) * kt);
    for (int c = 0; c < nc; ++c) {
        Mat<D> coeff = kron_identity(dom, constraint_vecs[c], kt);  // kt x ks*kt
        for (int i = 0; i < kt; ++i)
            for (int j = 0; j < ks * kt; ++j) big.at(c * kt + i, j) = coeff.at(i, j);
        for (int i = 0; i < kt; ++i)
            for (int j = 0; j < rc; ++j)
                big.at(c * kt + i, ks * kt + c * rc + j) = dst->rel.canon.at(i, j);
        for (int i = 0; i < kt; ++i) b.push_back(rhs[c][i]);
    }

    std::optional<std::vector<typename D::Elem>> sol;
    if (alt_order) {
        std::vector<int> order;
        for (int j = ks * kt - 1; j >= 0; --j) order.push_back(j);
        for (int j = ks * kt; j < big.cols; ++j) order.push_back(j);
        auto perm = select_cols(big, order);
        auto psol = solve_domain(dom, perm, b);
        if (psol) {
            std::vector<typename D::Elem> unperm(big.cols, dom.zero());
            for (int j = 0; j < big.cols; ++j) unperm[order[j]] = (*psol)[j];
            sol = std::move(unperm);
        }
    } else {
        sol = solve_domain(dom, big, b);
    }
    if (!sol) return std::nullopt;

    Mat<D> T = Mat<D>::zero(dom, kt, ks);
    for (int j = 0; j < ks; ++j)
        for (int i = 0; i < kt; ++i) T.at(i, j) = src->ring.reduce((*sol)[j * kt + i]);
    auto checked = check_welldefined(src, dst, T);
    if (!checked.ok()) return std::nullopt;  // cannot happen: relations were constraints
    return checked.morphism;
}

// ---------------------------------------------------------------------------
// Direct sums.
// ---------------------------------------------------------------------------

template <class D>
struct DirectSum {
    std::shared_ptr<const FpModule<D>> sum;
    std::vector<ModMorphism<D>> injections;
};

template <class D>
DirectSum<D> direct_sum(const std::vector<FpModule<D>>& parts) {
    if (parts.empty()) throw Error("direct_sum: empty summand list");
    const Ring<D> ring = parts[0].ring;
    int total = 0;
    for (const auto& p : parts) {
        if (p.ring != ring) throw RingMismatch("direct_sum: summands over different rings");
        total += p.num_gens;
    }
    Mat<D> rows;
    rows.rows = 0;
    rows.cols = total;
    int offset = 0;
    for (const auto& p : parts) {
        for (int i = 0; i < p.relations.rows; ++i) {
            std::vector<typename D::Elem> row(total, ring.zero());
            for (int j = 0; j < p.num_gens; ++j) row[offset + j] = p.relations.at(i, j);
            rows.a.insert(rows.a.end(), row.begin(), row.end());
            ++rows.rows;
        }
        offset += p.num_gens;
    }
    DirectSum<D> ds;
    ds.sum = share(make_module(ring, total, rows));
    offset = 0;
    for (const auto& p : parts) {
        Mat<D> inj = Mat<D>::zero(ring.dom, total, p.num_gens);
        for (int j = 0; j < p.num_gens; ++j) inj.at(offset + j, j) = ring.one();
        ds.injections.push_back(ModMorphism<D>{share(p), ds.sum, std::move(inj)});
        offset += p.num_gens;
    }
    return ds;
}

template <class D>
DirectSum<D> direct_sum(const FpModule<D>& a, const FpModule<D>& b) {
    return direct_sum(std::vector<FpModule<D>>{a, b});
}

}  // namespace ppmod
