#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppmod/errors.hpp"

namespace ppmod {

/// Exact cardinality of a (possibly infinite) finite-or-infinite set/group.
struct Card {
    bool infinite = false;
    mpz_class value = 1;  // meaningful only when !infinite

    static Card fin(mpz_class v) { return Card{false, std::move(v)}; }
    static Card inf() { return Card{true, 0}; }

    bool is_one() const { return !infinite && value == 1; }

    friend Card operator*(const Card& a, const Card& b) {
        if (a.infinite || b.infinite) return inf();
        return fin(a.value * b.value);
    }
    friend bool operator==(const Card& a, const Card& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || a.value == b.value;
    }
    friend bool operator!=(const Card& a, const Card& b) { return !(a == b); }

    std::string str() const { return infinite ? "Infinite" : value.get_str(); }
};

// ---------------------------------------------------------------------------
// Euclidean domains.  Everything downstream (normal forms, solving, module
// arithmetic) is generic over a domain object providing exact arithmetic and
// division with remainder.  Two instantiations are used: the integers and
// F_p[t].  Quotient rings (Z/n, F_p) are handled one level up, by augmenting
// lattices with modulus columns, so a single engine serves all rings.
// ---------------------------------------------------------------------------

/// The ring of integers with arbitrary-precision arithmetic.
struct ZDomain {
    using Elem = mpz_class;

    static Elem zero() { return 0; }
    static Elem one() { return 1; }
    static Elem from_int(long v) { return v; }
    static bool is_zero(const Elem& a) { return sgn(a) == 0; }
    static bool eq(const Elem& a, const Elem& b) { return a == b; }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem neg(const Elem& a) { return -a; }

    // Floor division: remainder has the divisor's sign, so with a positive
    // (canonical) divisor the remainder is the canonical residue in [0, b).
    static std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) {
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return {q, r};
    }

    static Elem exact_div(const Elem& a, const Elem& b) {
        auto [q, r] = divmod(a, b);
        if (!is_zero(r)) throw Error("exact_div: " + a.get_str() + " not divisible by " + b.get_str());
        return q;
    }

    static bool is_unit(const Elem& a) { return a == 1 || a == -1; }

    /// Unit u with u*a in canonical form (nonnegative).
    static Elem canon_unit(const Elem& a) { return sgn(a) < 0 ? Elem(-1) : Elem(1); }

    static bool size_less(const Elem& a, const Elem& b) {
        return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
    }

    /// |Z/(a)| for a != 0.
    static std::optional<mpz_class> residue_count(const Elem& a) {
        if (is_zero(a)) return std::nullopt;
        return mpz_class(abs(a));
    }
    static Elem residue_at(const Elem& /*a*/, const mpz_class& idx) { return idx; }

    static std::string str(const Elem& a) { return a.get_str(); }
};

/// Dense polynomial over F_p; coefficients are canonical residues in [0, p),
/// constant term first, no trailing zeros.
struct Poly {
    std::vector<std::int64_t> c;

    bool operator==(const Poly&) const = default;
    int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for the zero polynomial
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

/// The polynomial ring F_p[t], p prime.  The domain object carries p.
struct FpxDomain {
    using Elem = Poly;
    std::int64_t p = 2;

    bool operator==(const FpxDomain&) const = default;

    static std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
        std::int64_t t = 0, newt = 1, r = p, newr = a % p;
        if (newr < 0) newr += p;
        while (newr != 0) {
            std::int64_t q = r / newr;
            t -= q * newt;
            std::swap(t, newt);
            r -= q * newr;
            std::swap(r, newr);
        }
        if (r != 1) throw Error("mod_inverse: not invertible");
        return ((t % p) + p) % p;
    }

    Elem zero() const { return Poly{}; }
    Elem one() const { return Poly{{1}}; }
    Elem from_int(long v) const {
        std::int64_t r = static_cast<std::int64_t>(v) % p;
        if (r < 0) r += p;
        return r == 0 ? Poly{} : Poly{{r}};
    }
    Elem variable() const { return Poly{{0, 1}}; }

    bool is_zero(const Elem& a) const { return a.c.empty(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < r.c.size(); ++i) {
            std::int64_t v = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
            r.c[i] = v % p;
        }
        r.trim();
        return r;
    }
    Elem neg(const Elem& a) const {
        Poly r = a;
        for (auto& v : r.c) v = (p - v) % p;
        r.trim();
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    Elem mul(const Elem& a, const Elem& b) const {
        if (a.c.empty() || b.c.empty()) return Poly{};
        Poly r;
        r.c.assign(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % p;
        r.trim();
        return r;
    }

    std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const {
        if (b.c.empty()) throw Error("poly divmod: division by zero");
        Poly rem = a, quot;
        int db = b.deg();
        std::int64_t lead_inv = mod_inverse(b.c.back(), p);
        if (rem.deg() >= db) quot.c.assign(rem.deg() - db + 1, 0);
        while (rem.deg() >= db) {
            int shift = rem.deg() - db;
            std::int64_t f = (rem.c.back() * lead_inv) % p;
            quot.c[shift] = f;
            for (int i = 0; i <= db; ++i) {
                std::int64_t v = rem.c[shift + i] - f * b.c[i] % p;
                rem.c[shift + i] = ((v % p) + p) % p;
            }
            rem.trim();
        }
        quot.trim();
        return {quot, rem};
    }

    Elem exact_div(const Elem& a, const Elem& b) const {
        auto [q, r] = divmod(a, b);
        if (!r.c.empty()) throw Error("poly exact_div: not divisible");
        return q;
    }

    bool is_unit(const Elem& a) const { return a.deg() == 0; }

    /// Unit u with u*a monic.
    Elem canon_unit(const Elem& a) const {
        if (a.c.empty()) return one();
        return Poly{{mod_inverse(a.c.back(), p)}};
    }

    bool size_less(const Elem& a, const Elem& b) const { return a.deg() < b.deg(); }

    /// |F_p[t]/(a)| = p^deg(a) for a != 0.
    std::optional<mpz_class> residue_count(const Elem& a) const {
        if (a.c.empty()) return std::nullopt;
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(a.deg()));
        return r;
    }
    Elem residue_at(const Elem& a, const mpz_class& idx) const {
        Poly r;
        mpz_class rest = idx;
        int d = a.deg();
        r.c.assign(d > 0 ? d : 0, 0);
        for (int i = 0; i < d; ++i) {
            mpz_class q, digit;
            mpz_fdiv_qr_ui(q.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(),
                           static_cast<unsigned long>(p));
            r.c[i] = static_cast<std::int64_t>(digit.get_si());
            rest = q;
        }
        r.trim();
        return r;
    }

    std::string str(const Elem& a) const {
        if (a.c.empty()) return "0";
        std::string s;
        for (int i = a.deg(); i >= 0; --i) {
            if (a.c[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0) {
                s += std::to_string(a.c[i]);
            } else {
                if (a.c[i] != 1) s += std::to_string(a.c[i]) + "*";
                s += (i == 1) ? "t" : "t^" + std::to_string(i);
            }
        }
        return s;
    }
};

}  // namespace ppmod
