#pragma once

#include <array>
#include <cassert>
#include <span>
#include <vector>

#include "terracini/dual.hpp"
#include "terracini/errors.hpp"
#include "terracini/fp.hpp"
#include "terracini/matrix.hpp"
#include "terracini/monomial.hpp"
#include "terracini/unipoly.hpp"

namespace terracini {

// Point of P^n with coordinates in R, normalized so that the last invertible
// coordinate equals 1. Two points are equal iff normalized coordinates agree.
template <class R>
struct ProjectivePoint {
    std::vector<R> coords;

    int n() const { return static_cast<int>(coords.size()) - 1; }

    int chart() const {
        for (int i = n(); i >= 0; --i)
            if (ring_traits<R>::is_unit(coords[static_cast<size_t>(i)])) return i;
        return -1;
    }

    ProjectivePoint normalized() const {
        int c = chart();
        if (c < 0) throw ChartDegeneracy("projective point has no invertible coordinate");
        R inv = coords[static_cast<size_t>(c)].inv();
        ProjectivePoint out;
        out.coords.reserve(coords.size());
        for (const R& x : coords) out.coords.push_back(x * inv);
        return out;
    }

    friend bool operator==(const ProjectivePoint& p, const ProjectivePoint& q) {
        return p.normalized().coords == q.normalized().coords;
    }
    friend bool operator!=(const ProjectivePoint& p, const ProjectivePoint& q) {
        return !(p == q);
    }
};

inline bool point_less(const ProjectivePoint<Fp>& p, const ProjectivePoint<Fp>& q) {
    const auto a = p.normalized().coords;
    const auto b = q.normalized().coords;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i].v != b[i].v) return a[i].v < b[i].v;
    return a.size() < b.size();
}

template <class R>
ProjectivePoint<Fp> constant_point(const ProjectivePoint<R>& p) {
    ProjectivePoint<Fp> out;
    out.coords.reserve(p.coords.size());
    for (const R& x : p.coords) out.coords.push_back(ring_traits<R>::constant_part(x));
    return out;
}

// Homogeneous polynomial of degree d in n+1 variables; dense coefficients
// over the global graded-lex basis.
template <class R>
struct HomogPoly {
    int n = 0;
    int d = 0;
    std::vector<R> c;

    bool is_zero() const {
        for (const R& x : c)
            if (!x.is_zero()) return false;
        return true;
    }

    friend HomogPoly operator+(const HomogPoly& f, const HomogPoly& g) {
        assert(f.n == g.n && f.d == g.d);
        HomogPoly out = f;
        for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += g.c[i];
        return out;
    }
    friend HomogPoly operator-(const HomogPoly& f, const HomogPoly& g) {
        assert(f.n == g.n && f.d == g.d);
        HomogPoly out = f;
        for (size_t i = 0; i < out.c.size(); ++i) out.c[i] -= g.c[i];
        return out;
    }
    HomogPoly scaled(R s) const {
        HomogPoly out = *this;
        for (R& x : out.c) x = x * s;
        return out;
    }
};

template <class R>
HomogPoly<R> zero_poly(const FieldContext& ctx, int n, int d) {
    HomogPoly<R> f;
    f.n = n;
    f.d = d;
    f.c.assign(static_cast<size_t>(binomial(n + d, n)), ring_traits<R>::zero(ctx));
    return f;
}

template <class R>
HomogPoly<Fp> constant_poly(const HomogPoly<R>& f) {
    HomogPoly<Fp> out;
    out.n = f.n;
    out.d = f.d;
    out.c.reserve(f.c.size());
    for (const R& x : f.c) out.c.push_back(ring_traits<R>::constant_part(x));
    return out;
}

// Exact evaluation over any ring RE containing the coefficient ring (RE is
// Fp, or Dual when differentiating through a construction).
template <class RE, class R>
RE evaluate(const HomogPoly<R>& f, std::span<const RE> point) {
    assert(static_cast<int>(point.size()) == f.n + 1);
    MonomialBasis basis(f.n, f.d);
    assert(basis.size() == static_cast<int>(f.c.size()));
    const RE one = ring_traits<RE>::one_like(point[0]);
    std::vector<std::vector<RE>> pw(point.size());
    for (size_t v = 0; v < point.size(); ++v) {
        pw[v].resize(static_cast<size_t>(f.d) + 1, one);
        for (int k = 1; k <= f.d; ++k)
            pw[v][static_cast<size_t>(k)] = pw[v][static_cast<size_t>(k - 1)] * point[v];
    }
    RE acc = ring_traits<RE>::zero_like(point[0]);
    for (int i = 0; i < basis.size(); ++i) {
        const R& coeff = f.c[static_cast<size_t>(i)];
        if (coeff.is_zero()) continue;
        RE term = ring_convert<RE>::from(coeff);
        const Monomial& m = basis[i];
        for (size_t v = 0; v < point.size(); ++v)
            if (m.e[v] > 0) term = term * pw[v][static_cast<size_t>(m.e[v])];
        acc += term;
    }
    return acc;
}

template <class RE, class R>
RE evaluate_at(const HomogPoly<R>& f, const ProjectivePoint<RE>& p) {
    return evaluate<RE>(f, std::span<const RE>(p.coords));
}

// Formal partial derivative with respect to x_j; degree drops by one.
template <class R>
HomogPoly<R> partial(const HomogPoly<R>& f, int j) {
    assert(f.d >= 1 && j >= 0 && j <= f.n);
    MonomialBasis basis(f.n, f.d);
    MonomialBasis lower(f.n, f.d - 1);
    const std::uint64_t p = ring_traits<R>::constant_part(f.c[0]).p;
    HomogPoly<R> out;
    out.n = f.n;
    out.d = f.d - 1;
    out.c.assign(static_cast<size_t>(lower.size()), ring_traits<R>::zero_like(f.c[0]));
    for (int i = 0; i < basis.size(); ++i) {
        int e = basis[i].e[static_cast<size_t>(j)];
        if (e == 0 || f.c[static_cast<size_t>(i)].is_zero()) continue;
        std::vector<int> ex = basis[i].e;
        ex[static_cast<size_t>(j)] -= 1;
        R scale = ring_traits<R>::from_int(static_cast<std::uint64_t>(e), p);
        out.c[static_cast<size_t>(lower.index(ex))] += f.c[static_cast<size_t>(i)] * scale;
    }
    return out;
}

template <class R>
std::vector<HomogPoly<R>> gradient(const HomogPoly<R>& f) {
    std::vector<HomogPoly<R>> g;
    g.reserve(static_cast<size_t>(f.n) + 1);
    for (int j = 0; j <= f.n; ++j) g.push_back(partial(f, j));
    return g;
}

template <class R>
HomogPoly<R> poly_mul(const HomogPoly<R>& f, const HomogPoly<R>& g) {
    assert(f.n == g.n);
    MonomialBasis bf(f.n, f.d), bg(g.n, g.d), bp(f.n, f.d + g.d);
    HomogPoly<R> out;
    out.n = f.n;
    out.d = f.d + g.d;
    out.c.assign(static_cast<size_t>(bp.size()), ring_traits<R>::zero_like(f.c[0]));
    for (int i = 0; i < bf.size(); ++i) {
        if (f.c[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < bg.size(); ++j) {
            if (g.c[static_cast<size_t>(j)].is_zero()) continue;
            std::vector<int> e = bf[i].e;
            for (size_t v = 0; v < e.size(); ++v) e[v] += bg[j].e[v];
            out.c[static_cast<size_t>(bp.index(e))] +=
                f.c[static_cast<size_t>(i)] * g.c[static_cast<size_t>(j)];
        }
    }
    return out;
}

// Restriction of F to the parametrized line s -> v + s*u, as a univariate
// polynomial in s of degree <= deg F.
template <class R>
UniPoly<R> restrict_to_line(const HomogPoly<R>& f, std::span<const R> v, std::span<const R> u) {
    assert(static_cast<int>(v.size()) == f.n + 1 && v.size() == u.size());
    MonomialBasis basis(f.n, f.d);
    const R one = ring_traits<R>::one_like(f.c[0]);
    // pw[var][k] = (v_var + s*u_var)^k
    std::vector<std::vector<UniPoly<R>>> pw(v.size());
    for (size_t var = 0; var < v.size(); ++var) {
        pw[var].resize(static_cast<size_t>(f.d) + 1);
        pw[var][0] = UniPoly<R>(std::vector<R>{one});
        UniPoly<R> lin(std::vector<R>{v[var], u[var]});
        for (int k = 1; k <= f.d; ++k) pw[var][static_cast<size_t>(k)] = pw[var][static_cast<size_t>(k - 1)] * lin;
    }
    UniPoly<R> acc;
    for (int i = 0; i < basis.size(); ++i) {
        const R& coeff = f.c[static_cast<size_t>(i)];
        if (coeff.is_zero()) continue;
        UniPoly<R> term(std::vector<R>{coeff});
        for (size_t var = 0; var < v.size(); ++var)
            if (basis[i].e[var] > 0) term = term * pw[var][static_cast<size_t>(basis[i].e[var])];
        acc = acc + term;
    }
    return acc;
}

// F composed with the linear change x -> A x (A is (n+1) x (n+1) over F_p).
inline HomogPoly<Fp> linear_change(const HomogPoly<Fp>& f,
                                   const std::vector<std::vector<Fp>>& a,
                                   const FieldContext& ctx) {
    const int n = f.n;
    MonomialBasis basis(n, f.d);
    // Rows of A define the substituted linear forms L_i = sum_j a[i][j] x_j.
    std::vector<HomogPoly<Fp>> lin;
    for (int i = 0; i <= n; ++i) {
        HomogPoly<Fp> li = zero_poly<Fp>(ctx, n, 1);
        MonomialBasis b1(n, 1);
        for (int j = 0; j <= n; ++j) {
            std::vector<int> e(static_cast<size_t>(n + 1), 0);
            e[static_cast<size_t>(j)] = 1;
            li.c[static_cast<size_t>(b1.index(e))] = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
        lin.push_back(li);
    }
    // Powers of each substituted form.
    std::vector<std::vector<HomogPoly<Fp>>> pw(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        pw[static_cast<size_t>(i)].push_back(zero_poly<Fp>(ctx, n, 0));
        pw[static_cast<size_t>(i)][0].c[0] = ctx.one();
        for (int k = 1; k <= f.d; ++k)
            pw[static_cast<size_t>(i)].push_back(
                poly_mul(pw[static_cast<size_t>(i)][static_cast<size_t>(k - 1)], lin[static_cast<size_t>(i)]));
    }
    HomogPoly<Fp> out = zero_poly<Fp>(ctx, n, f.d);
    for (int i = 0; i < basis.size(); ++i) {
        if (f.c[static_cast<size_t>(i)].is_zero()) continue;
        HomogPoly<Fp> term = pw[0][static_cast<size_t>(basis[i].e[0])];
        for (int v = 1; v <= n; ++v)
            term = poly_mul(term, pw[static_cast<size_t>(v)][static_cast<size_t>(basis[i].e[static_cast<size_t>(v)])]);
        out = out + term.scaled(f.c[static_cast<size_t>(i)]);
    }
    return out;
}

inline std::vector<std::vector<Fp>> random_invertible(const FieldContext& ctx, RngStream& rng,
                                                      int size) {
    for (;;) {
        std::vector<std::vector<Fp>> a(static_cast<size_t>(size),
                                       std::vector<Fp>(static_cast<size_t>(size), ctx.zero()));
        Matrix<Fp> m(size, size, ctx.zero());
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) {
                Fp x = ctx.random(rng);
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] = x;
                m.at(i, j) = x;
            }
        if (!determinant(m, ctx).is_zero()) return a;
    }
}

inline ProjectivePoint<Fp> apply_matrix(const std::vector<std::vector<Fp>>& a,
                                        const ProjectivePoint<Fp>& p) {
    ProjectivePoint<Fp> out;
    const size_t n1 = a.size();
    out.coords.assign(n1, Fp(0, p.coords[0].p));
    for (size_t i = 0; i < n1; ++i) {
        Fp acc = a[i][0] * p.coords[0];
        for (size_t j = 1; j < n1; ++j) acc += a[i][j] * p.coords[j];
        out.coords[i] = acc;
    }
    return out;
}

}  // namespace terracini
