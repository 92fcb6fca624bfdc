#include <catch2/catch_amalgamated.hpp>

#include "ppmod/oracle.hpp"
#include "test_util.hpp"

using namespace ppmod;
using testutil::Rng;

namespace {

Mat<ZDomain> zmat(int rows, int cols, std::vector<long> entries) {
    std::vector<mpz_class> v(entries.begin(), entries.end());
    return Mat<ZDomain>::from_data(rows, cols, std::move(v));
}

Mat<ZDomain> no_relations(int k) {
    Mat<ZDomain> m;
    m.rows = 0;
    m.cols = k;
    return m;
}

}  // namespace

TEST_CASE("evaluate_brute on the named examples") {
    // 2|x over the ring Z/4, module Z/4 itself
    auto r4 = ring_Zmod(4);
    auto m4 = *oracle::build_finite_module(4, 1, no_relations(1));
    auto div2 = divisibility_by(r4, mpz_class(2));
    auto s = oracle::evaluate_brute(div2, m4);
    REQUIRE(s.size() == 2);
    REQUIRE(s.is_subgroup());

    auto r2 = ring_Zmod(2);
    auto m2 = *oracle::build_finite_module(2, 1, no_relations(1));
    REQUIRE(oracle::evaluate_brute(top_formula(r2, 1), m2).size() == 2);

    // E y (x = 2y and 4y = 0) over Z/8: solutions {0, 4}
    auto r8 = ring_Zmod(8);
    auto m8 = *oracle::build_finite_module(8, 1, no_relations(1));
    auto phi = cypr_formula(r8, {mpz_class(2)}, mpz_class(4));
    auto sols = oracle::evaluate_brute(phi, m8);
    REQUIRE(sols.size() == 2);
    REQUIRE(sols.is_subgroup());
    // the members are exactly the cosets of 0 and 4
    std::vector<std::uint32_t> zero{m8.id_of({0})}, four{m8.id_of({4})}, one{m8.id_of({1})};
    REQUIRE(sols.contains(zero));
    REQUIRE(sols.contains(four));
    REQUIRE_FALSE(sols.contains(one));
}

TEST_CASE("implies_brute on the named examples") {
    auto r6 = ring_Zmod(6);
    auto d2 = divisibility_by(r6, mpz_class(2));
    auto d4 = divisibility_by(r6, mpz_class(4));
    REQUIRE(oracle::implies_brute(d2, d4, 6));
    REQUIRE(oracle::implies_brute(d4, d2, 6));
    REQUIRE(oracle::implies_brute(d2, top_formula(r6, 1), 6));

    auto r4 = ring_Zmod(4);
    REQUIRE_FALSE(oracle::implies_brute(divisibility_by(r4, mpz_class(2)), zero_formula(r4, 1), 4));
}

TEST_CASE("index_brute counts factor groups") {
    auto r4 = ring_Zmod(4);
    auto m4 = *oracle::build_finite_module(4, 1, no_relations(1));
    auto idx = oracle::index_brute(top_formula(r4, 1), divisibility_by(r4, mpz_class(2)), m4);
    REQUIRE(idx == Card::fin(2));

    auto phi = divisibility_by(r4, mpz_class(2));
    REQUIRE(oracle::index_brute(phi, phi, m4) == Card::fin(1));

    // unary (top / x = 0) on Z/2 + Z/2: four cosets
    auto r2 = ring_Zmod(2);
    auto m22 = *oracle::build_finite_module(2, 2, no_relations(2));
    REQUIRE(oracle::index_brute(top_formula(r2, 1), zero_formula(r2, 1), m22) == Card::fin(4));
}

TEST_CASE("brute solution sets are subgroups on random formulas") {
    Rng rng(90210);
    for (int t = 0; t < 60; ++t) {
        long n = testutil::rnd_range(rng, 2, 8);
        auto ring = ring_Zmod(mpz_class(n));
        int arity = testutil::rnd_range(rng, 1, 2);
        int bound = testutil::rnd_range(rng, 0, 2);
        int rows = testutil::rnd_range(rng, 1, 2);
        auto f = make_formula(ring, arity, bound,
                              testutil::rnd_zmat(rng, rows, bound, 0, n - 1),
                              testutil::rnd_zmat(rng, rows, arity, 0, n - 1));
        auto m = oracle::build_finite_module(n, 1, testutil::rnd_zmat(rng, 1, 1, 0, n - 1));
        REQUIRE(m.has_value());
        auto sols = oracle::evaluate_brute(f, *m);
        REQUIRE(sols.is_subgroup());
    }
}
