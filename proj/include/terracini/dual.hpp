#pragma once

#include <cassert>

#include "terracini/fp.hpp"

namespace terracini {

// F_p[eps]/(eps^2): a + b*eps. Exact forward-mode derivatives ride on the
// eps coefficient. Invertible iff the constant part is nonzero.
struct Dual {
    Fp a;  // constant part
    Fp b;  // eps coefficient

    Dual() = default;
    Dual(Fp constant, Fp eps) : a(constant), b(eps) {}
    explicit Dual(Fp constant) : a(constant), b(Fp(0, constant.p)) {}

    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    friend Dual operator+(Dual x, Dual y) { return {x.a + y.a, x.b + y.b}; }
    friend Dual operator-(Dual x, Dual y) { return {x.a - y.a, x.b - y.b}; }
    friend Dual operator-(Dual x) { return {-x.a, -x.b}; }
    friend Dual operator*(Dual x, Dual y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }

    Dual& operator+=(Dual y) { return *this = *this + y; }
    Dual& operator-=(Dual y) { return *this = *this - y; }
    Dual& operator*=(Dual y) { return *this = *this * y; }

    friend bool operator==(Dual x, Dual y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(Dual x, Dual y) { return !(x == y); }

    Dual inv() const {
        assert(!a.is_zero());
        Fp ia = a.inv();
        return {ia, -(ia * ia * b)};
    }

    friend Dual operator/(Dual x, Dual y) { return x * y.inv(); }
};

// Uniform access to the two coefficient rings used throughout the library.
template <class R>
struct ring_traits;

template <>
struct ring_traits<Fp> {
    static constexpr bool has_eps = false;
    static Fp lift(Fp x) { return x; }
    static Fp constant_part(Fp x) { return x; }
    static Fp eps_part(Fp x) { return Fp(0, x.p); }
    static bool is_unit(Fp x) { return !x.is_zero(); }
    static Fp zero(const FieldContext& ctx) { return ctx.zero(); }
    static Fp one(const FieldContext& ctx) { return ctx.one(); }
    static Fp zero_like(Fp x) { return Fp(0, x.p); }
    static Fp one_like(Fp x) { return Fp(1, x.p); }
    static Fp from_int(std::uint64_t k, std::uint64_t p) { return Fp(k, p); }
};

template <>
struct ring_traits<Dual> {
    static constexpr bool has_eps = true;
    static Dual lift(Fp x) { return Dual(x); }
    static Fp constant_part(Dual x) { return x.a; }
    static Fp eps_part(Dual x) { return x.b; }
    static bool is_unit(Dual x) { return !x.a.is_zero(); }
    static Dual zero(const FieldContext& ctx) { return Dual(ctx.zero()); }
    static Dual one(const FieldContext& ctx) { return Dual(ctx.one()); }
    static Dual zero_like(Dual x) { return Dual(Fp(0, x.a.p)); }
    static Dual one_like(Dual x) { return Dual(Fp(1, x.a.p)); }
    static Dual from_int(std::uint64_t k, std::uint64_t p) { return Dual(Fp(k, p)); }
};

// Coefficient-ring embeddings used when a polynomial over F_p is evaluated at
// a dual-number point.
template <class RE>
struct ring_convert;

template <>
struct ring_convert<Fp> {
    static Fp from(Fp x) { return x; }
};

template <>
struct ring_convert<Dual> {
    static Dual from(Fp x) { return Dual(x); }
    static Dual from(Dual x) { return x; }
};

}  // namespace terracini
