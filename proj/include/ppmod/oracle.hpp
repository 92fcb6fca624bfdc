#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "ppmod/pp_formula.hpp"

// Brute-force reference implementations over finite rings, used by tests and
// the --with-oracle cross checks.  Everything here decides satisfaction by
// exhaustive scan; only the plain data types (Mat, PpFormula) are shared with
// the main path, never the normal-form engine.  A build check enforces this.

namespace ppmod::oracle {

inline std::int64_t reduce_i64(const mpz_class& v, std::int64_t n) {
    mpz_class r = v % n;
    if (r < 0) r += n;
    return r.get_si();
}

/// Finite module over Z/n: every coset of the relation subgroup gets a
/// canonical (first-seen in packed order) representative vector.
struct FiniteModule {
    std::int64_t n = 2;
    int k = 0;
    std::uint64_t total = 0;                      // n^k
    std::vector<std::uint32_t> coset_id;          // packed vector -> element id
    std::vector<std::vector<std::int64_t>> reps;  // element id -> representative

    std::uint64_t pack(const std::vector<std::int64_t>& v) const {
        std::uint64_t key = 0;
        for (int i = k - 1; i >= 0; --i) key = key * static_cast<std::uint64_t>(n) + v[i];
        return key;
    }
    std::vector<std::int64_t> unpack(std::uint64_t key) const {
        std::vector<std::int64_t> v(k);
        for (int i = 0; i < k; ++i) {
            v[i] = static_cast<std::int64_t>(key % n);
            key /= n;
        }
        return v;
    }

    std::uint32_t id_of(const std::vector<std::int64_t>& v) const { return coset_id[pack(v)]; }
    std::uint32_t zero() const { return coset_id[0]; }
    std::size_t size() const { return reps.size(); }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::vector<std::int64_t> v(k);
        for (int i = 0; i < k; ++i) v[i] = (reps[a][i] + reps[b][i]) % n;
        return id_of(v);
    }
    std::uint32_t scalar(std::int64_t c, std::uint32_t a) const {
        c %= n;
        if (c < 0) c += n;
        std::vector<std::int64_t> v(k);
        for (int i = 0; i < k; ++i) v[i] = (reps[a][i] * c) % n;
        return id_of(v);
    }
};

/// Build the coset structure of (Z/n)^k modulo the additive closure of the
/// relation rows.  Nothing is returned when n^k exceeds the budget.
inline std::optional<FiniteModule> build_finite_module(std::int64_t n, int k,
                                                       const Mat<ZDomain>& relation_rows,
                                                       std::uint64_t budget = 2000000) {
    if (n < 2) throw RingNotFinite("oracle: ring modulus must be at least 2");
    FiniteModule m;
    m.n = n;
    m.k = k;
    m.total = 1;
    for (int i = 0; i < k; ++i) {
        if (m.total > budget / static_cast<std::uint64_t>(n)) return std::nullopt;
        m.total *= static_cast<std::uint64_t>(n);
    }

    // Relation subgroup: additive closure of the rows (finite order makes
    // inverses and ring multiples come for free).
    std::vector<std::vector<std::int64_t>> gens;
    for (int i = 0; i < relation_rows.rows; ++i) {
        std::vector<std::int64_t> g(k);
        for (int j = 0; j < k; ++j) g[j] = reduce_i64(relation_rows.at(i, j), n);
        gens.push_back(std::move(g));
    }
    std::unordered_set<std::uint64_t> rel;
    std::vector<std::uint64_t> queue{0};
    rel.insert(0);
    while (!queue.empty()) {
        auto cur = m.unpack(queue.back());
        queue.pop_back();
        for (const auto& g : gens) {
            std::vector<std::int64_t> nx(k);
            for (int j = 0; j < k; ++j) nx[j] = (cur[j] + g[j]) % n;
            auto key = m.pack(nx);
            if (rel.insert(key).second) queue.push_back(key);
        }
    }

    std::vector<std::uint64_t> rel_keys(rel.begin(), rel.end());
    m.coset_id.assign(m.total, 0xffffffffu);
    for (std::uint64_t v = 0; v < m.total; ++v) {
        if (m.coset_id[v] != 0xffffffffu) continue;
        auto id = static_cast<std::uint32_t>(m.reps.size());
        auto base = m.unpack(v);
        m.reps.push_back(base);
        for (auto rk : rel_keys) {
            auto off = m.unpack(rk);
            std::vector<std::int64_t> w(k);
            for (int j = 0; j < k; ++j) w[j] = (base[j] + off[j]) % n;
            m.coset_id[m.pack(w)] = id;
        }
    }
    return m;
}

struct TupleHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

using TupleSet = std::unordered_set<std::vector<std::uint32_t>, TupleHash>;

/// Explicitly listed solution set of a formula in M^arity.
struct FiniteSolutionSet {
    const FiniteModule* mod = nullptr;
    int arity = 0;
    TupleSet members;

    std::size_t size() const { return members.size(); }
    bool contains(const std::vector<std::uint32_t>& t) const { return members.count(t) > 0; }

    /// Closure under addition and the ring action - the subgroup check.
    bool is_subgroup() const {
        std::vector<std::uint32_t> zero(arity, mod->zero());
        if (!contains(zero)) return false;
        for (const auto& a : members) {
            for (const auto& b : members) {
                std::vector<std::uint32_t> s(arity);
                for (int i = 0; i < arity; ++i) s[i] = mod->add(a[i], b[i]);
                if (!contains(s)) return false;
            }
            for (std::int64_t c = 0; c < mod->n; ++c) {
                std::vector<std::uint32_t> s(arity);
                for (int i = 0; i < arity; ++i) s[i] = mod->scalar(c, a[i]);
                if (!contains(s)) return false;
            }
        }
        return true;
    }
};

namespace detail {

/// The subgroup {A yy : yy in M^l} of M^m, by additive closure of the columns
/// of A applied to the module generators.  Nothing when over the budget.
inline std::optional<TupleSet> image_subgroup(const FiniteModule& m, const Mat<ZDomain>& A,
                                              std::uint64_t budget) {
    const int rows = A.rows, l = A.cols;
    std::vector<std::vector<std::uint32_t>> gens;
    for (int j = 0; j < l; ++j) {
        for (int gi = 0; gi < m.k; ++gi) {
            std::vector<std::int64_t> basis(m.k, 0);
            basis[gi] = 1;
            auto bid = m.id_of(basis);
            std::vector<std::uint32_t> tup(rows);
            for (int i = 0; i < rows; ++i)
                tup[i] = m.scalar(reduce_i64(A.at(i, j), m.n), bid);
            gens.push_back(std::move(tup));
        }
    }
    TupleSet set;
    std::vector<std::vector<std::uint32_t>> queue;
    std::vector<std::uint32_t> zero(rows, m.zero());
    set.insert(zero);
    queue.push_back(zero);
    while (!queue.empty()) {
        auto cur = queue.back();
        queue.pop_back();
        for (const auto& g : gens) {
            std::vector<std::uint32_t> nx(rows);
            for (int i = 0; i < rows; ++i) nx[i] = m.add(cur[i], g[i]);
            if (set.insert(nx).second) {
                if (set.size() > budget) return std::nullopt;
                queue.push_back(nx);
            }
        }
    }
    return set;
}

inline std::vector<std::uint32_t> apply_rows(const FiniteModule& m, const Mat<ZDomain>& B,
                                             const std::vector<std::uint32_t>& x) {
    std::vector<std::uint32_t> out(B.rows);
    for (int i = 0; i < B.rows; ++i) {
        std::uint32_t acc = m.zero();
        for (int t = 0; t < B.cols; ++t)
            acc = m.add(acc, m.scalar(reduce_i64(B.at(i, t), m.n), x[t]));
        out[i] = acc;
    }
    return out;
}

}  // namespace detail

/// Exhaustive solution set of the formula in M.  Throws TooLarge when either
/// the witness-image subgroup or the tuple scan exceeds the budget.
inline FiniteSolutionSet evaluate_brute(const PpFormula<ZDomain>& f, const FiniteModule& m,
                                        std::uint64_t budget = 2000000) {
    auto image = detail::image_subgroup(m, f.A, budget);
    if (!image) throw TooLarge("oracle: witness image exceeds budget");
    double scan = 1;
    for (int t = 0; t < f.arity; ++t) scan *= static_cast<double>(m.size());
    if (scan > static_cast<double>(budget) * 8) throw TooLarge("oracle: tuple scan exceeds budget");

    FiniteSolutionSet sols;
    sols.mod = &m;
    sols.arity = f.arity;
    std::vector<std::uint32_t> x(f.arity, 0);
    while (true) {
        if (image->count(detail::apply_rows(m, f.B, x))) sols.members.insert(x);
        int t = 0;
        while (t < f.arity) {
            if (++x[t] < m.size()) break;
            x[t] = 0;
            ++t;
        }
        if (t == f.arity) break;
        if (f.arity == 0) break;
    }
    return sols;
}

/// Does the distinguished tuple of the scan-built free realization of f
/// satisfy g?  Decides f <= g over the finite ring Z/n without normal forms.
inline bool implies_brute(const PpFormula<ZDomain>& f, const PpFormula<ZDomain>& g,
                          std::int64_t n, std::uint64_t budget = 2000000) {
    if (f.arity != g.arity) throw ArityMismatch("implies_brute: arity differs");
    // free realization presentation: generators (xx, yy), rows [B | -A]
    const int k = f.arity + f.bound;
    Mat<ZDomain> rows = hstack(f.B, mat_neg(ZDomain{}, f.A));
    auto mod = build_finite_module(n, k, rows, budget);
    if (!mod) throw TooLarge("oracle: free realization exceeds budget");
    std::vector<std::uint32_t> tuple(f.arity);
    for (int t = 0; t < f.arity; ++t) {
        std::vector<std::int64_t> e(k, 0);
        e[t] = 1;
        tuple[t] = mod->id_of(e);
    }
    auto image = detail::image_subgroup(*mod, g.A, budget);
    if (!image) throw TooLarge("oracle: witness image exceeds budget");
    return image->count(detail::apply_rows(*mod, g.B, tuple)) > 0;
}

/// |f(M)| / |g(M)| by counting (Lagrange).
inline Card index_brute(const PpFormula<ZDomain>& f, const PpFormula<ZDomain>& g,
                        const FiniteModule& m, std::uint64_t budget = 2000000) {
    auto top = evaluate_brute(f, m, budget);
    auto bot = evaluate_brute(g, m, budget);
    if (bot.size() == 0 || top.size() % bot.size() != 0)
        throw Error("index_brute: group orders do not divide");
    return Card::fin(mpz_class(static_cast<unsigned long>(top.size() / bot.size())));
}

}  // namespace ppmod::oracle
