#pragma once

#include <optional>
#include <string>
#include <type_traits>

#include "ppmod/arith.hpp"
#include "ppmod/errors.hpp"

namespace ppmod {

enum class RingKind { Integers, IntegersMod, PrimeField, PolysOverPrimeField };

inline bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    mpz_class z(static_cast<long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

/// A supported coefficient ring: a Euclidean base domain D together with an
/// optional modulus (Z/n and F_p are quotients of Z; Z and F_p[t] have none).
template <class D>
struct Ring {
    using Elem = typename D::Elem;

    D dom;
    RingKind kind = RingKind::Integers;
    std::optional<Elem> modulus;

    bool operator==(const Ring& o) const {
        if (kind != o.kind) return false;
        if (modulus.has_value() != o.modulus.has_value()) return false;
        if (modulus && !dom.eq(*modulus, *o.modulus)) return false;
        if constexpr (std::is_same_v<D, FpxDomain>) {
            if (!(dom == o.dom)) return false;
        }
        return true;
    }
    bool operator!=(const Ring& o) const { return !(*this == o); }

    Elem reduce(const Elem& a) const {
        if (!modulus) return a;
        return dom.divmod(a, *modulus).second;
    }
    Elem zero() const { return dom.zero(); }
    Elem one() const { return dom.one(); }
    Elem from_int(long v) const { return reduce(dom.from_int(v)); }
    Elem add(const Elem& a, const Elem& b) const { return reduce(dom.add(a, b)); }
    Elem sub(const Elem& a, const Elem& b) const { return reduce(dom.sub(a, b)); }
    Elem mul(const Elem& a, const Elem& b) const { return reduce(dom.mul(a, b)); }
    Elem neg(const Elem& a) const { return reduce(dom.neg(a)); }
    bool eq(const Elem& a, const Elem& b) const { return dom.eq(reduce(a), reduce(b)); }
    bool is_zero(const Elem& a) const { return dom.is_zero(reduce(a)); }

    bool is_finite() const {
        return kind == RingKind::IntegersMod || kind == RingKind::PrimeField;
    }

    std::string name() const {
        switch (kind) {
            case RingKind::Integers: return "Z";
            case RingKind::IntegersMod: return "Zmod:" + dom.str(*modulus);
            case RingKind::PrimeField: return "Fp:" + dom.str(*modulus);
            case RingKind::PolysOverPrimeField:
                if constexpr (std::is_same_v<D, FpxDomain>)
                    return "Fpx:" + std::to_string(dom.p);
                return "Fpx:?";
        }
        return "?";
    }
};

inline Ring<ZDomain> ring_Z() { return Ring<ZDomain>{ZDomain{}, RingKind::Integers, std::nullopt}; }

inline Ring<ZDomain> ring_Zmod(const mpz_class& n) {
    if (n < 2) throw BadRing("Zmod requires modulus >= 2");
    return Ring<ZDomain>{ZDomain{}, RingKind::IntegersMod, n};
}

inline Ring<ZDomain> ring_Fp(const mpz_class& p) {
    if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) throw BadRing("Fp requires a prime");
    return Ring<ZDomain>{ZDomain{}, RingKind::PrimeField, p};
}

inline Ring<FpxDomain> ring_Fpx(std::int64_t p) {
    if (!is_prime_i64(p)) throw BadRing("Fpx requires a prime");
    return Ring<FpxDomain>{FpxDomain{p}, RingKind::PolysOverPrimeField, std::nullopt};
}

}  // namespace ppmod
