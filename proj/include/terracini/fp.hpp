#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "terracini/errors.hpp"
#include "terracini/rng.hpp"

namespace terracini {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

// Miller-Rabin with `rounds` random bases (>= 40 everywhere in this library).
inline bool is_probable_prime(std::uint64_t n, int rounds = 40) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    RngStream bases(mix_u64(n, 0x6d696c6c6572ull));
    for (int i = 0; i < rounds; ++i) {
        std::uint64_t a = 2 + bases.below(n - 3);
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace detail

// Element of F_p. Each value carries its modulus so mixed-field arithmetic is
// caught immediately; all moduli are < 2^62, leaving headroom for addition.
struct Fp {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

    bool is_zero() const { return v == 0; }

    friend Fp operator+(Fp a, Fp b) {
        assert(a.p == b.p);
        std::uint64_t s = a.v + b.v;
        if (s >= a.p) s -= a.p;
        return Fp{s, a.p, tag{}};
    }
    friend Fp operator-(Fp a, Fp b) {
        assert(a.p == b.p);
        std::uint64_t s = a.v >= b.v ? a.v - b.v : a.v + a.p - b.v;
        return Fp{s, a.p, tag{}};
    }
    friend Fp operator*(Fp a, Fp b) {
        assert(a.p == b.p);
        return Fp{detail::mulmod_u64(a.v, b.v, a.p), a.p, tag{}};
    }
    friend Fp operator-(Fp a) { return Fp{a.v == 0 ? 0 : a.p - a.v, a.p, tag{}}; }

    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }

    friend bool operator==(Fp a, Fp b) { return a.v == b.v && a.p == b.p; }
    friend bool operator!=(Fp a, Fp b) { return !(a == b); }

    Fp inv() const {
        assert(v != 0);
        // Extended Euclid on (v, p).
        std::int64_t t = 0, nt = 1;
        std::uint64_t r = p, nr = v;
        while (nr != 0) {
            std::uint64_t q = r / nr;
            std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * nt;
            t = nt;
            nt = tmp_t;
            std::uint64_t tmp_r = r - q * nr;
            r = nr;
            nr = tmp_r;
        }
        assert(r == 1);
        std::uint64_t u = t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(p)) : static_cast<std::uint64_t>(t);
        return Fp{u, p, tag{}};
    }

    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }

    Fp pow(std::uint64_t e) const { return Fp{detail::powmod_u64(v, e, p), p, tag{}}; }

private:
    struct tag {};
    Fp(std::uint64_t value, std::uint64_t prime, tag) : v(value), p(prime) {}
};

// Shared field context: the prime plus the root of the deterministic
// randomness tree. Values are immutable; contexts can be copied freely.
class FieldContext {
public:
    FieldContext(std::uint64_t prime, std::uint64_t seed) : p_(prime), seed_(seed) {
        if (prime < 3 || (prime & 1) == 0 || prime >= (1ull << 62) ||
            !detail::is_probable_prime(prime, 40)) {
            throw CompositeModulus("field_context: modulus " + std::to_string(prime) +
                                   " is not an odd prime below 2^62");
        }
    }

    std::uint64_t prime() const { return p_; }
    std::uint64_t seed() const { return seed_; }

    Fp make(std::uint64_t v) const { return Fp(v, p_); }
    Fp make_signed(std::int64_t v) const {
        if (v >= 0) return Fp(static_cast<std::uint64_t>(v), p_);
        std::uint64_t m = static_cast<std::uint64_t>(-v) % p_;
        return Fp(m == 0 ? 0 : p_ - m, p_);
    }
    Fp zero() const { return Fp(0, p_); }
    Fp one() const { return Fp(1, p_); }

    RngStream stream(std::string_view module, std::string_view op,
                     std::uint64_t counter = 0) const {
        return derive_stream(seed_, module, op, counter);
    }

    Fp random(RngStream& rng) const { return Fp(rng.below(p_), p_); }
    Fp random_nonzero(RngStream& rng) const { return Fp(1 + rng.below(p_ - 1), p_); }

private:
    std::uint64_t p_;
    std::uint64_t seed_;
};

// Canonical square root (the smaller of the two) when `a` is a square;
// std::nullopt for nonresidues. Tonelli-Shanks, with the p = 3 (mod 4) shortcut.
inline std::optional<Fp> sqrt_mod(Fp a) {
    if (a.v == 0) return a;
    const std::uint64_t p = a.p;
    if (a.pow((p - 1) / 2).v != 1) return std::nullopt;
    Fp r(0, p);
    if (p % 4 == 3) {
        r = a.pow((p + 1) / 4);
    } else {
        std::uint64_t q = p - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        Fp z(2, p);
        while (z.pow((p - 1) / 2).v == 1) z = z + Fp(1, p);
        Fp m_c = z.pow(q);
        Fp t = a.pow(q);
        r = a.pow((q + 1) / 2);
        int m = s;
        while (t.v != 1) {
            Fp t2 = t;
            int i = 0;
            while (t2.v != 1) {
                t2 = t2 * t2;
                ++i;
            }
            Fp b = m_c;
            for (int j = 0; j < m - i - 1; ++j) b = b * b;
            m_c = b * b;
            t = t * m_c;
            r = r * b;
            m = i;
        }
    }
    assert((r * r) == a);
    if (r.v > p - r.v) r = -r;
    return r;
}

// The default verification protocol recomputes every verdict at `count`
// independent primes > 2^60, derived deterministically from the seed.
inline std::vector<std::uint64_t> derive_primes(std::uint64_t seed, int count = 3) {
    std::vector<std::uint64_t> out;
    RngStream rng = derive_stream(seed, "exact_arith", "derive_primes", 0);
    while (static_cast<int>(out.size()) < count) {
        std::uint64_t c = (1ull << 60) + rng.below(1ull << 60);
        c |= 1;
        while (!detail::is_probable_prime(c, 40)) c += 2;
        bool dup = false;
        for (std::uint64_t q : out) dup = dup || (q == c);
        if (!dup) out.push_back(c);
    }
    return out;
}

inline std::vector<FieldContext> derive_contexts(std::uint64_t seed, int count = 3) {
    std::vector<FieldContext> out;
    for (std::uint64_t p : derive_primes(seed, count)) out.emplace_back(p, seed);
    return out;
}

}  // namespace terracini
