#include <catch2/catch_amalgamated.hpp>

#include "terracini/dual.hpp"
#include "terracini/fp.hpp"
#include "terracini/unipoly.hpp"

using namespace terracini;

namespace {
constexpr std::uint64_t kMersenne61 = 2305843009213693951ull;  // 2^61 - 1
}

TEST_CASE("field_context accepts odd primes") {
    FieldContext small(7, 0);
    CHECK(small.prime() == 7);
    FieldContext mersenne(kMersenne61, 42);
    CHECK(mersenne.prime() == kMersenne61);
}

TEST_CASE("field_context rejects composite and unusable moduli") {
    CHECK_THROWS_AS(FieldContext(15, 0), CompositeModulus);
    CHECK_THROWS_AS(FieldContext(561, 0), CompositeModulus);  // Carmichael number
    CHECK_THROWS_AS(FieldContext(2, 0), CompositeModulus);    // not odd
}

TEST_CASE("basic F_p arithmetic") {
    FieldContext ctx(101, 0);
    Fp a = ctx.make(57), b = ctx.make(88);
    CHECK((a + b).v == (57 + 88) % 101);
    CHECK((a - b).v == (57 + 101 - 88) % 101);
    CHECK((a * b).v == 57 * 88 % 101);
    CHECK((a * a.inv()).v == 1);
    CHECK(ctx.make_signed(-3).v == 98);
    CHECK(a.pow(100).v == 1);  // Fermat
}

TEST_CASE("sqrt_mod small cases") {
    FieldContext ctx(7, 0);
    auto r = sqrt_mod(ctx.make(2));
    REQUIRE(r.has_value());
    CHECK((r->v == 3 || r->v == 4));
    CHECK((*r * *r).v == 2);

    auto z = sqrt_mod(ctx.make(0));
    REQUIRE(z.has_value());
    CHECK(z->v == 0);

    CHECK_FALSE(sqrt_mod(ctx.make(3)).has_value());  // nonresidue mod 7
}

TEST_CASE("sqrt_mod of squares, 1000 random values") {
    FieldContext ctx(kMersenne61, 7);
    RngStream rng = ctx.stream("test", "sqrt_squares");
    for (int i = 0; i < 1000; ++i) {
        Fp a = ctx.random(rng);
        auto r = sqrt_mod(a * a);
        REQUIRE(r.has_value());
        CHECK(*r * *r == a * a);
    }
}

TEST_CASE("Tonelli-Shanks branch, p = 1 mod 4") {
    FieldContext ctx(998244353, 0);
    REQUIRE(ctx.prime() % 4 == 1);
    RngStream rng = ctx.stream("test", "ts");
    for (int i = 0; i < 200; ++i) {
        Fp a = ctx.random(rng);
        auto r = sqrt_mod(a * a);
        REQUIRE(r.has_value());
        CHECK(*r * *r == a * a);
    }
}

TEST_CASE("dual number ring laws") {
    FieldContext ctx(kMersenne61, 3);
    RngStream rng = ctx.stream("test", "dual");
    for (int i = 0; i < 200; ++i) {
        Dual x(ctx.random(rng), ctx.random(rng));
        Dual y(ctx.random(rng), ctx.random(rng));
        CHECK((x * y) == (y * x));
        if (!x.a.is_zero()) {
            Dual one(ctx.one(), ctx.zero());
            CHECK(x * x.inv() == one);
        }
        // eps^2 = 0
        Dual eps(ctx.zero(), ctx.one());
        CHECK((eps * eps).is_zero());
        CHECK((x * eps).a.is_zero());
    }
}

TEST_CASE("dual evaluation satisfies the derivative rule") {
    FieldContext ctx(kMersenne61, 11);
    RngStream rng = ctx.stream("test", "dual_deriv");
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Fp> cf, cg;
        for (int i = 0; i < 6; ++i) cf.push_back(ctx.random(rng));
        for (int i = 0; i < 5; ++i) cg.push_back(ctx.random(rng));
        UniPoly<Fp> f(cf), g(cg);
        Fp x0 = ctx.random(rng);
        Fp w = ctx.random(rng);

        auto lift = [&](const UniPoly<Fp>& h) {
            std::vector<Dual> c;
            for (Fp v : h.c) c.emplace_back(v);
            return UniPoly<Dual>(c);
        };
        Dual x(x0, w);
        Dual fx = lift(f).eval(x);
        // Oracle: formal derivative.
        CHECK(fx.a == f.eval(x0));
        CHECK(fx.b == w * f.derivative(ctx.prime()).eval(x0));

        // Product rule: eps part of (fg) = f * eps(g) + g * eps(f).
        Dual gx = lift(g).eval(x);
        Dual prod = lift(f * g).eval(x);
        CHECK(prod.b == fx.a * gx.b + gx.a * fx.b);

        // Chain rule through composition with a quadratic.
        UniPoly<Fp> q = unipoly_from(ctx, {3, 0, 1});  // X^2 + 3
        Dual qx = lift(q).eval(x);
        Dual fqx = lift(f).eval(qx);
        CHECK(fqx.b == w * q.derivative(ctx.prime()).eval(x0) *
                           f.derivative(ctx.prime()).eval(q.eval(x0)));
    }
}

TEST_CASE("derived verification primes are distinct and above 2^60") {
    auto primes = derive_primes(20260810, 3);
    REQUIRE(primes.size() == 3);
    for (auto p : primes) {
        CHECK(p > (1ull << 60));
        CHECK(detail::is_probable_prime(p, 40));
    }
    CHECK(primes[0] != primes[1]);
    CHECK(primes[1] != primes[2]);
    CHECK(primes[0] != primes[2]);
    // Deterministic in the seed.
    CHECK(derive_primes(20260810, 3) == primes);
    CHECK(derive_primes(20260811, 3) != primes);
}

TEST_CASE("streams split deterministically by module, op and counter") {
    FieldContext ctx(kMersenne61, 99);
    RngStream a = ctx.stream("m", "op", 0);
    RngStream b = ctx.stream("m", "op", 0);
    CHECK(a.next() == b.next());
    RngStream c = ctx.stream("m", "op", 1);
    RngStream d = ctx.stream("m", "other", 0);
    CHECK(a.next() != c.next());
    CHECK(b.next() != d.next());
}
