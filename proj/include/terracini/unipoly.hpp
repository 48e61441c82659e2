#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

#include "terracini/dual.hpp"
#include "terracini/errors.hpp"
#include "terracini/fp.hpp"

namespace terracini {

// Dense univariate polynomial over R (F_p or the dual numbers).
// coeffs[i] is the coefficient of X^i; the zero polynomial has empty coeffs.
template <class R>
struct UniPoly {
    std::vector<R> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<R> coeffs) : c(std::move(coeffs)) { trim(); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    R coeff(int i, const R& zero) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<size_t>(i)] : zero;
    }

    R eval(R x) const {
        if (c.empty()) {
            R z = x;
            return z - z;  // zero with the right modulus
        }
        R acc = c.back();
        for (int i = degree() - 1; i >= 0; --i) acc = acc * x + c[static_cast<size_t>(i)];
        return acc;
    }

    UniPoly derivative(std::uint64_t p) const {
        if (c.size() <= 1) return UniPoly{};
        std::vector<R> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i)
            d[i - 1] = c[i] * ring_traits<R>::from_int(static_cast<std::uint64_t>(i), p);
        return UniPoly(std::move(d));
    }

    friend UniPoly operator+(const UniPoly& f, const UniPoly& g) {
        std::vector<R> s(std::max(f.c.size(), g.c.size()));
        for (size_t i = 0; i < s.size(); ++i) {
            if (i < f.c.size() && i < g.c.size())
                s[i] = f.c[i] + g.c[i];
            else if (i < f.c.size())
                s[i] = f.c[i];
            else
                s[i] = g.c[i];
        }
        return UniPoly(std::move(s));
    }

    friend UniPoly operator-(const UniPoly& f, const UniPoly& g) {
        std::vector<R> s(std::max(f.c.size(), g.c.size()));
        for (size_t i = 0; i < s.size(); ++i) {
            if (i < f.c.size() && i < g.c.size())
                s[i] = f.c[i] - g.c[i];
            else if (i < f.c.size())
                s[i] = f.c[i];
            else
                s[i] = -g.c[i];
        }
        return UniPoly(std::move(s));
    }

    friend UniPoly operator*(const UniPoly& f, const UniPoly& g) {
        if (f.is_zero() || g.is_zero()) return UniPoly{};
        std::vector<R> s(f.c.size() + g.c.size() - 1, f.c[0] - f.c[0]);
        for (size_t i = 0; i < f.c.size(); ++i)
            for (size_t j = 0; j < g.c.size(); ++j) s[i + j] += f.c[i] * g.c[j];
        return UniPoly(std::move(s));
    }

    UniPoly scaled(R s) const {
        std::vector<R> out = c;
        for (R& x : out) x = x * s;
        return UniPoly(std::move(out));
    }
};

inline UniPoly<Fp> unipoly_from(const FieldContext& ctx, std::vector<std::int64_t> ints) {
    std::vector<Fp> c;
    c.reserve(ints.size());
    for (auto v : ints) c.push_back(ctx.make_signed(v));
    return UniPoly<Fp>(std::move(c));
}

// Quotient and remainder; requires an invertible leading coefficient.
template <class R>
std::pair<UniPoly<R>, UniPoly<R>> divrem(const UniPoly<R>& f, const UniPoly<R>& g) {
    assert(!g.is_zero() && ring_traits<R>::is_unit(g.c.back()));
    if (f.degree() < g.degree()) return {UniPoly<R>{}, f};
    R ilc = g.c.back().inv();
    std::vector<R> rem = f.c;
    std::vector<R> quo(static_cast<size_t>(f.degree() - g.degree() + 1),
                       g.c.back() - g.c.back());
    for (int k = f.degree() - g.degree(); k >= 0; --k) {
        R q = rem[static_cast<size_t>(k + g.degree())] * ilc;
        quo[static_cast<size_t>(k)] = q;
        for (int j = 0; j <= g.degree(); ++j)
            rem[static_cast<size_t>(k + j)] -= q * g.c[static_cast<size_t>(j)];
    }
    return {UniPoly<R>(std::move(quo)), UniPoly<R>(std::move(rem))};
}

inline UniPoly<Fp> monic(const UniPoly<Fp>& f) {
    if (f.is_zero()) return f;
    return f.scaled(f.c.back().inv());
}

inline UniPoly<Fp> poly_gcd(UniPoly<Fp> a, UniPoly<Fp> b) {
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, monic(b));
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// base^e mod m over F_p, by square and multiply.
inline UniPoly<Fp> powmod(const UniPoly<Fp>& base, std::uint64_t e, const UniPoly<Fp>& m,
                          const FieldContext& ctx) {
    UniPoly<Fp> result(std::vector<Fp>{ctx.one()});
    UniPoly<Fp> b = divrem(base, m).second;
    while (e) {
        if (e & 1) result = divrem(result * b, m).second;
        b = divrem(b * b, m).second;
        e >>= 1;
    }
    return result;
}

struct RootMult {
    Fp root;
    int multiplicity;
};

namespace detail {

// Splits a monic product of distinct linear factors into its roots.
inline void split_linear(const UniPoly<Fp>& g, const FieldContext& ctx, RngStream& rng,
                         std::vector<Fp>& out, int depth = 0) {
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(-g.c[0]);
        return;
    }
    const std::uint64_t half = (ctx.prime() - 1) / 2;
    for (int attempt = 0; attempt < 64; ++attempt) {
        Fp shift = ctx.random(rng);
        UniPoly<Fp> x_plus(std::vector<Fp>{shift, ctx.one()});
        UniPoly<Fp> h = powmod(x_plus, half, g, ctx);
        h = h - UniPoly<Fp>(std::vector<Fp>{ctx.one()});
        UniPoly<Fp> d = poly_gcd(h, g);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            auto [q, r] = divrem(g, d);
            assert(r.is_zero());
            split_linear(d, ctx, rng, out, depth + 1);
            split_linear(monic(q), ctx, rng, out, depth + 1);
            return;
        }
    }
    throw SplitFailure("equal-degree splitting failed after 64 random shifts");
}

}  // namespace detail

// All roots of f in F_p, with multiplicities, sorted by residue value.
// Implemented as gcd(f, X^p - X) followed by equal-degree splitting.
inline std::vector<RootMult> roots_in_field(const UniPoly<Fp>& f, const FieldContext& ctx) {
    assert(!f.is_zero());
    if (f.degree() == 0) return {};
    UniPoly<Fp> fm = monic(f);
    UniPoly<Fp> x(std::vector<Fp>{ctx.zero(), ctx.one()});
    UniPoly<Fp> xp = powmod(x, ctx.prime(), fm, ctx);
    UniPoly<Fp> g = poly_gcd(xp - x, fm);
    std::vector<Fp> roots;
    RngStream rng = ctx.stream("exact_arith", "roots_in_field", f.c[0].v ^ f.c.back().v);
    detail::split_linear(g, ctx, rng, roots);
    std::sort(roots.begin(), roots.end(), [](Fp a, Fp b) { return a.v < b.v; });
    std::vector<RootMult> out;
    for (Fp r : roots) {
        UniPoly<Fp> lin(std::vector<Fp>{-r, ctx.one()});
        int mult = 0;
        UniPoly<Fp> rest = fm;
        for (;;) {
            auto [q, rem] = divrem(rest, lin);
            if (!rem.is_zero()) break;
            ++mult;
            rest = std::move(q);
            if (rest.degree() < 1) break;
        }
        assert(mult >= 1);
        out.push_back({r, mult});
    }
    return out;
}

// One exact Newton step lifts a simple residue root r0 of the constant part
// of g to a root of g over the dual numbers (exact because eps^2 = 0).
inline Dual lift_root(const UniPoly<Dual>& g, Fp r0) {
    Dual r = Dual(r0);
    Dual val = g.eval(r);
    assert(val.a.is_zero());
    UniPoly<Dual> gp = g.derivative(r0.p);
    Dual slope = gp.eval(r);
    if (slope.a.is_zero())
        throw DegenerateParams("lift_root: root of the restricted polynomial is not simple");
    r = r - val / slope;
    assert(g.eval(r).is_zero());
    return r;
}

}  // namespace terracini
