#include <catch2/catch_amalgamated.hpp>

#include "ppmod/oracle.hpp"
#include "ppmod/pp_calculus.hpp"
#include "ppmod/purity.hpp"
#include "test_util.hpp"

using namespace ppmod;
using testutil::Rng;

namespace {

Mat<ZDomain> zmat(int rows, int cols, std::vector<long> entries) {
    std::vector<mpz_class> v(entries.begin(), entries.end());
    return Mat<ZDomain>::from_data(rows, cols, std::move(v));
}

std::vector<mpz_class> zvec(std::vector<long> entries) {
    return std::vector<mpz_class>(entries.begin(), entries.end());
}

/// Random small formula built from the named shapes, conjunction and sum.
PpFormula<ZDomain> rnd_formula(Rng& rng, const Ring<ZDomain>& ring, int arity, long entry_bound) {
    auto entry = [&] { return mpz_class(testutil::rnd_below(rng, entry_bound)); };
    auto base = [&]() -> PpFormula<ZDomain> {
        switch (testutil::rnd_below(rng, 4)) {
            case 0: {
                Mat<ZDomain> a(arity, 1, mpz_class(0));
                for (int i = 0; i < arity; ++i) a.at(i, 0) = entry();
                return divisibility(ring, a);
            }
            case 1: {
                Mat<ZDomain> c(1, arity, mpz_class(0));
                for (int i = 0; i < arity; ++i) c.at(0, i) = entry();
                return annihilator(ring, c);
            }
            case 2: {
                std::vector<mpz_class> acol;
                for (int i = 0; i < arity; ++i) acol.push_back(entry());
                return cypr_formula(ring, acol, entry());
            }
            default:
                return top_formula(ring, arity);
        }
    };
    auto f = base();
    if (testutil::rnd_below(rng, 3) == 0 && f.bound < 2) {
        auto g = base();
        if (f.bound + g.bound <= 2) f = conj(f, g);
    }
    return f;
}

/// Image of a stacked-coordinate lattice under a componentwise morphism.
Submodule<ZDomain> image_lattice(const Submodule<ZDomain>& s, const ModMorphism<ZDomain>& h,
                                 int arity) {
    const auto& dom = h.src->ring.dom;
    auto big = block_diag_copies(dom, h.matrix, arity);
    auto mapped = mat_mul(dom, big, s.canon);
    auto ambient_rel = block_diag_copies(dom, h.dst->rel.canon, arity);
    return Submodule<ZDomain>::from_cols(h.dst->ring, arity * h.dst->num_gens,
                                         hstack(mapped, ambient_rel));
}

/// Projection of a solution lattice onto the kept variables.
Submodule<ZDomain> project_lattice(const Submodule<ZDomain>& s, const std::vector<int>& keep,
                                   int k, const FpModule<ZDomain>& m) {
    std::vector<int> rows;
    for (int t : keep)
        for (int i = 0; i < k; ++i) rows.push_back(t * k + i);
    Mat<ZDomain> sel = Mat<ZDomain>::zero(m.ring.dom, static_cast<int>(rows.size()), s.ambient);
    for (std::size_t i = 0; i < rows.size(); ++i) sel.at(static_cast<int>(i), rows[i]) = mpz_class(1);
    auto proj = mat_mul(m.ring.dom, sel, s.canon);
    auto ambient_rel = block_diag_copies(m.ring.dom, m.rel.canon, static_cast<int>(keep.size()));
    return Submodule<ZDomain>::from_cols(m.ring, static_cast<int>(rows.size()),
                                         hstack(proj, ambient_rel));
}

/// Slice of a solution lattice: components in `zeroed` congruent to zero.
Submodule<ZDomain> slice_lattice(const Submodule<ZDomain>& s, const std::vector<int>& zeroed,
                                 int arity, const FpModule<ZDomain>& m) {
    const auto& dom = m.ring.dom;
    const int k = m.num_gens;
    std::vector<bool> is_zeroed(arity, false);
    for (int t : zeroed) is_zeroed[t] = true;
    // lattice K of tuples whose zeroed components vanish in M
    Mat<ZDomain> blocks;
    blocks.rows = s.ambient;
    blocks.cols = 0;
    blocks.a.clear();
    std::vector<Mat<ZDomain>> per;
    for (int t = 0; t < arity; ++t)
        per.push_back(is_zeroed[t] ? m.rel.canon : Mat<ZDomain>::identity(dom, k));
    Mat<ZDomain> K = per[0];
    for (int t = 1; t < arity; ++t) K = block_diag(dom, K, per[t]);
    auto constrained = sub_intersection(s, Submodule<ZDomain>::from_cols(m.ring, s.ambient, K));
    std::vector<int> keep;
    for (int t = 0; t < arity; ++t)
        if (!is_zeroed[t]) keep.push_back(t);
    return project_lattice(constrained, keep, k, m);
}

}  // namespace

TEST_CASE("formula constructors produce the named shapes") {
    auto ring = ring_Z();
    auto div2 = divisibility_by(ring, mpz_class(2));
    REQUIRE(div2.arity == 1);
    REQUIRE(div2.bound == 1);
    REQUIRE(div2.A == zmat(1, 1, {2}));
    REQUIRE(div2.B == zmat(1, 1, {1}));

    // A = identity divisibility is top
    REQUIRE(equivalent(divisibility(ring, Mat<ZDomain>::identity(ring.dom, 2)),
                       top_formula(ring, 2)));
    // A = 0 divisibility pins x to zero
    REQUIRE(equivalent(divisibility_by(ring, mpz_class(0)), zero_formula(ring, 1)));

    auto cypr = cypr_formula(ring, zvec({2}), mpz_class(4));
    REQUIRE(cypr.arity == 1);
    REQUIRE(cypr.bound == 1);
    REQUIRE(cypr.A == zmat(2, 1, {2, 4}));
    REQUIRE(cypr.B == zmat(2, 1, {1, 0}));
    REQUIRE(cypr == cyc_formula(ring, zvec({2}), zvec({4})));

    // (1) with annihilator 0 is top
    REQUIRE(equivalent(cypr_formula(ring, zvec({1}), mpz_class(0)), top_formula(ring, 1)));

    auto cyc = cyc_formula(ring, zvec({3}), zvec({2, 4}));
    REQUIRE(cyc.A == zmat(3, 1, {3, 2, 4}));
    REQUIRE(cyc.B == zmat(3, 1, {1, 0, 0}));
}

TEST_CASE("conjunction and sum against named equivalences") {
    auto ring = ring_Z();
    auto d2 = divisibility_by(ring, mpz_class(2));
    auto d3 = divisibility_by(ring, mpz_class(3));
    auto d6 = divisibility_by(ring, mpz_class(6));
    REQUIRE(equivalent(conj(d2, d3), d6));
    REQUIRE(equivalent(sum_formula(d2, d3), top_formula(ring, 1)));
    REQUIRE(equivalent(sum_formula(zero_formula(ring, 1), top_formula(ring, 1)),
                       top_formula(ring, 1)));

    // oracle cross-check of the same equivalences over Z/36
    auto r36 = ring_Zmod(36);
    auto e2 = divisibility_by(r36, mpz_class(2));
    auto e3 = divisibility_by(r36, mpz_class(3));
    auto e6 = divisibility_by(r36, mpz_class(6));
    REQUIRE(oracle::implies_brute(conj(e2, e3), e6, 36));
    REQUIRE(oracle::implies_brute(e6, conj(e2, e3), 36));
}

TEST_CASE("project and kernel follow the substitution semantics") {
    auto ring = ring_Z();
    // phi(x, z) = E y (x = 2y and z = y); keep x gives 2|x
    auto phi = make_formula(ring, 2, 1, zmat(2, 1, {2, 1}), zmat(2, 2, {1, 0, 0, 1}));
    REQUIRE(equivalent(project(phi, {0}), divisibility_by(ring, mpz_class(2))));

    // kernel of (x = y) zeroing x gives y = 0
    auto xy = make_formula(ring, 2, 0, Mat<ZDomain>::zero(ring.dom, 1, 0), zmat(1, 2, {1, -1}));
    REQUIRE(equivalent(kernel(xy, {0}), zero_formula(ring, 1)));

    // kernel of E z (x = 2z and y = 3z and 4z = 0) zeroing x
    auto f = make_formula(ring, 2, 1, zmat(3, 1, {2, 3, 4}), zmat(3, 2, {1, 0, 0, 1, 0, 0}));
    auto ker = kernel(f, {0});
    REQUIRE(ker.arity == 1);
    REQUIRE(ker.A == zmat(3, 1, {2, 3, 4}));
    REQUIRE(ker.B == zmat(3, 1, {0, 1, 0}));
}

TEST_CASE("evaluate on the named examples") {
    auto ringz = ring_Z();
    auto z4 = make_cyclic(ringz, zvec({4}));
    auto sols = evaluate(divisibility_by(ringz, mpz_class(2)), z4);
    REQUIRE(solution_count(divisibility_by(ringz, mpz_class(2)), z4) == Card::fin(2));
    REQUIRE(sols.contains(zvec({2})));
    REQUIRE(sols.contains(zvec({0})));
    REQUIRE_FALSE(sols.contains(zvec({1})));

    REQUIRE(solution_count(top_formula(ringz, 1), z4) == Card::fin(4));

    auto z8 = make_cyclic(ringz, zvec({8}));
    auto phi = cypr_formula(ringz, zvec({2}), mpz_class(4));
    auto s8 = evaluate(phi, z8);
    REQUIRE(solution_count(phi, z8) == Card::fin(2));
    REQUIRE(s8.contains(zvec({4})));
    REQUIRE_FALSE(s8.contains(zvec({2})));
}

TEST_CASE("free realizations satisfy and generate") {
    auto ring = ring_Z();
    auto d2 = divisibility_by(ring, mpz_class(2));
    auto fr = free_realization(d2);
    REQUIRE(satisfies(fr, d2));
    auto inv = invariant_factors(*fr.mod);
    REQUIRE(inv.free_rank == 1);  // (Z, 2)
    REQUIRE(inv.torsion.empty());
    REQUIRE(freely_realizes(fr, d2));

    // cypr((1), r) is freely realized by (Z/r, 1)
    auto c = cypr_formula(ring, zvec({1}), mpz_class(6));
    auto frc = free_realization(c);
    auto invc = invariant_factors(*frc.mod);
    REQUIRE(invc.free_rank == 0);
    REQUIRE(invc.torsion == zvec({6}));
    REQUIRE(freely_realizes(frc, c));
    auto z6 = share(make_cyclic(ring, zvec({6})));
    REQUIRE(freely_realizes(pointed(z6, zmat(1, 1, {1})), c));

    // E y (x = 2y and 4y = 0) is freely realized by (Z/4, 2)
    auto p = cypr_formula(ring, zvec({2}), mpz_class(4));
    auto frp = free_realization(p);
    auto invp = invariant_factors(*frp.mod);
    REQUIRE(invp.free_rank == 0);
    REQUIRE(invp.torsion == zvec({4}));
    auto z4 = share(make_cyclic(ring, zvec({4})));
    REQUIRE(freely_realizes(pointed(z4, zmat(1, 1, {2})), p));
}

TEST_CASE("canonical generators of pointed modules") {
    auto ring = ring_Z();
    auto zfree = share(make_cyclic(ring, {}));
    REQUIRE(equivalent(canonical_generator(pointed(zfree, zmat(1, 1, {1}))),
                       top_formula(ring, 1)));

    auto z2 = share(make_cyclic(ring, zvec({2})));
    REQUIRE(equivalent(canonical_generator(pointed(z2, zmat(1, 1, {1}))),
                       annihilator_by(ring, mpz_class(2))));

    auto z4 = share(make_cyclic(ring, zvec({4})));
    auto cg = canonical_generator(pointed(z4, zmat(1, 1, {2})));
    REQUIRE(equivalent(cg, conj(divisibility_by(ring, mpz_class(2)),
                                annihilator_by(ring, mpz_class(2)))));
}

TEST_CASE("implication on the named examples") {
    auto ring = ring_Z();
    auto d2 = divisibility_by(ring, mpz_class(2));
    auto d4 = divisibility_by(ring, mpz_class(4));
    REQUIRE(implies(d4, d2));
    REQUIRE_FALSE(implies(d2, d4));
    REQUIRE(implies(d2, d2));

    auto r6 = ring_Zmod(6);
    REQUIRE(implies(divisibility_by(r6, mpz_class(2)), divisibility_by(r6, mpz_class(4))));
    REQUIRE(implies(divisibility_by(r6, mpz_class(4)), divisibility_by(r6, mpz_class(2))));
}

TEST_CASE("pp indices") {
    auto ring = ring_Z();
    auto z4 = make_cyclic(ring, zvec({4}));
    auto top = top_formula(ring, 1);
    auto d2 = divisibility_by(ring, mpz_class(2));
    REQUIRE(pp_index(top, d2, z4) == Card::fin(2));
    REQUIRE(pp_index(d2, d2, z4) == Card::fin(1));
    auto zmod = make_cyclic(ring, {});
    REQUIRE(pp_index(top, zero_formula(ring, 1), zmod) == Card::inf());
    REQUIRE_THROWS_AS(pp_index(d2, top, z4), NotContained);
}

TEST_CASE("round trip: free realization freely realizes, on sampled formulas") {
    Rng rng(314159);
    for (int t = 0; t < 120; ++t) {
        bool modular = testutil::rnd_below(rng, 2) == 0;
        long n = testutil::rnd_range(rng, 2, 9);
        auto ring = modular ? ring_Zmod(mpz_class(n)) : ring_Z();
        int arity = testutil::rnd_range(rng, 1, 2);
        auto f = rnd_formula(rng, ring, arity, modular ? n : 5);
        REQUIRE(freely_realizes(free_realization(f), f));
    }
}

TEST_CASE("implies agrees with the brute-force oracle over finite rings") {
    Rng rng(271828);
    int checked = 0;
    for (int t = 0; t < 150; ++t) {
        long n = testutil::rnd_range(rng, 2, 9);
        auto ring = ring_Zmod(mpz_class(n));
        int arity = testutil::rnd_range(rng, 1, 2);
        auto f = rnd_formula(rng, ring, arity, n);
        auto g = rnd_formula(rng, ring, arity, n);
        bool main = implies(f, g);
        try {
            bool brute = oracle::implies_brute(f, g, n);
            REQUIRE(main == brute);
            ++checked;
        } catch (const TooLarge&) {
            // sample beyond oracle budget: skip
        }
    }
    REQUIRE(checked > 100);
}

TEST_CASE("evaluate agrees with the brute-force oracle") {
    Rng rng(161803);
    int checked = 0;
    for (int t = 0; t < 80; ++t) {
        long n = testutil::rnd_range(rng, 2, 8);
        auto ring = ring_Zmod(mpz_class(n));
        int k = testutil::rnd_range(rng, 1, 2);
        auto rel = testutil::rnd_zmat(rng, testutil::rnd_range(rng, 0, 2), k, 0, n - 1);
        auto m = make_module(ring, k, rel);
        auto brute_m = oracle::build_finite_module(n, k, rel);
        REQUIRE(brute_m.has_value());
        int arity = testutil::rnd_range(rng, 1, 2);
        auto f = rnd_formula(rng, ring, arity, n);
        auto sols = evaluate(f, m);
        try {
            auto brute = oracle::evaluate_brute(f, *brute_m);
            REQUIRE(solution_count(f, m) ==
                    Card::fin(mpz_class(static_cast<unsigned long>(brute.size()))));
            for (const auto& tuple : brute.members) {
                std::vector<mpz_class> stacked;
                for (auto id : tuple)
                    for (auto c : brute_m->reps[id]) stacked.emplace_back(c);
                REQUIRE(sols.contains(stacked));
            }
            ++checked;
        } catch (const TooLarge&) {
        }
    }
    REQUIRE(checked > 50);
}

TEST_CASE("implication is monotone for evaluation") {
    Rng rng(55001);
    auto ring = ring_Z();
    std::vector<FpModule<ZDomain>> mods{
        make_cyclic(ring, zvec({4})), make_cyclic(ring, zvec({6})),
        make_cyclic(ring, {}), direct_sum(make_cyclic(ring, zvec({2})),
                                          make_cyclic(ring, zvec({8}))).sum.operator*()};
    for (int t = 0; t < 60; ++t) {
        auto f = rnd_formula(rng, ring, 1, 5);
        auto g = rnd_formula(rng, ring, 1, 5);
        if (!implies(f, g)) continue;
        for (const auto& m : mods) REQUIRE(sub_leq(evaluate(f, m), evaluate(g, m)));
    }
}

TEST_CASE("pp solution sets are preserved by homomorphisms") {
    Rng rng(9091);
    auto ring = ring_Z();
    auto z4 = share(make_cyclic(ring, zvec({4})));
    auto z8 = share(make_cyclic(ring, zvec({8})));
    auto z2 = share(make_cyclic(ring, zvec({2})));
    std::vector<ModMorphism<ZDomain>> morphs;
    morphs.push_back(*check_welldefined(z4, z8, zmat(1, 1, {2})).morphism);
    morphs.push_back(*check_welldefined(z8, z4, zmat(1, 1, {1})).morphism);
    morphs.push_back(*check_welldefined(z4, z2, zmat(1, 1, {1})).morphism);
    morphs.push_back(identity_morphism(z4));
    for (int t = 0; t < 50; ++t) {
        auto f = rnd_formula(rng, ring, 1, 6);
        for (const auto& h : morphs) {
            auto img = image_lattice(evaluate(f, *h.src), h, f.arity);
            REQUIRE(sub_leq(img, evaluate(f, *h.dst)));
        }
    }
}

TEST_CASE("evaluate respects the lattice operations") {
    Rng rng(777);
    auto ring = ring_Z();
    std::vector<FpModule<ZDomain>> mods{make_cyclic(ring, zvec({8})),
                                        make_cyclic(ring, zvec({12}))};
    for (int t = 0; t < 40; ++t) {
        auto f = rnd_formula(rng, ring, 1, 6);
        auto g = rnd_formula(rng, ring, 1, 6);
        for (const auto& m : mods) {
            REQUIRE(sub_eq(evaluate(conj(f, g), m),
                           sub_intersection(evaluate(f, m), evaluate(g, m))));
            REQUIRE(sub_eq(evaluate(sum_formula(f, g), m),
                           sub_sum(evaluate(f, m), evaluate(g, m))));
        }
    }
    // projection and kernel, on two-variable formulas
    for (int t = 0; t < 25; ++t) {
        auto f = rnd_formula(rng, ring, 2, 5);
        for (const auto& m : mods) {
            auto full = evaluate(f, m);
            REQUIRE(sub_eq(evaluate(project(f, {0}), m), project_lattice(full, {0}, m.num_gens, m)));
            REQUIRE(sub_eq(evaluate(kernel(f, {0}), m), slice_lattice(full, {0}, 2, m)));
        }
    }
}

TEST_CASE("pp index is multiplicative over direct sums") {
    Rng rng(123321);
    auto ring = ring_Z();
    auto z4 = make_cyclic(ring, zvec({4}));
    auto z6 = make_cyclic(ring, zvec({6}));
    auto both = direct_sum(z4, z6);
    for (int t = 0; t < 40; ++t) {
        auto f = rnd_formula(rng, ring, 1, 6);
        auto g = conj(f, rnd_formula(rng, ring, 1, 6));  // comparable pair: g implies f
        auto lhs = pp_index(f, g, *both.sum);
        REQUIRE(lhs == pp_index(f, g, z4) * pp_index(f, g, z6));
    }
}

TEST_CASE("purity of embeddings") {
    auto ring = ring_Z();
    // split inclusion M -> M + N is pure
    auto z4 = make_cyclic(ring, zvec({4}));
    auto z6 = make_cyclic(ring, zvec({6}));
    auto ds = direct_sum(z4, z6);
    REQUIRE(is_pure_embedding(ds.injections[0]));
    REQUIRE(is_pure_embedding(ds.injections[1]));

    // multiplication by 2 on Z is injective but not pure
    auto zfree = share(make_cyclic(ring, {}));
    auto mul2 = *check_welldefined(zfree, zfree, zmat(1, 1, {2})).morphism;
    REQUIRE_FALSE(is_pure_embedding(mul2));

    // Z/2 -> Z/4 sending 1 to 2 is injective but not pure
    auto z2 = share(make_cyclic(ring, zvec({2})));
    auto z4s = share(z4);
    auto incl = *check_welldefined(z2, z4s, zmat(1, 1, {2})).morphism;
    REQUIRE_FALSE(is_pure_embedding(incl));

    // non-injective maps are rejected
    auto quot = *check_welldefined(z4s, z2, zmat(1, 1, {1})).morphism;
    REQUIRE_THROWS_AS(is_pure_embedding(quot), NotInjective);
}

TEST_CASE("arity-zero sentences evaluate through the same machinery") {
    auto ring = ring_Z();
    Mat<ZDomain> a(1, 1, mpz_class(3));
    Mat<ZDomain> b;
    b.rows = 1;
    b.cols = 0;
    auto sentence = make_formula(ring, 0, 1, a, b);  // E y (3y = 0)
    auto z4 = make_cyclic(ring, zvec({4}));
    REQUIRE(satisfies(z4, Mat<ZDomain>::zero(ring.dom, 1, 0), sentence));
    REQUIRE(solution_count(sentence, z4) == Card::fin(1));
    REQUIRE(implies(sentence, top_formula(ring, 0)));
}
