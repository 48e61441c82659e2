#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

#include "terracini/errors.hpp"
#include "terracini/fp.hpp"
#include "terracini/homog.hpp"
#include "terracini/matrix.hpp"
#include "terracini/monomial.hpp"

namespace terracini {

// Ordered configuration of x distinct points of P^n; the ordered stand-in
// for an element of S(P^n, x).
struct PointConfiguration {
    int n = 0;
    std::vector<ProjectivePoint<Fp>> points;

    int size() const { return static_cast<int>(points.size()); }
};

inline PointConfiguration make_configuration(int n, std::vector<ProjectivePoint<Fp>> pts) {
    if (pts.empty()) throw PreconditionViolation("point configuration must be nonempty");
    std::vector<ProjectivePoint<Fp>> norm;
    norm.reserve(pts.size());
    for (auto& p : pts) {
        if (static_cast<int>(p.coords.size()) != n + 1)
            throw PreconditionViolation("point has wrong ambient dimension");
        norm.push_back(p.normalized());
    }
    for (size_t i = 0; i < norm.size(); ++i)
        for (size_t j = i + 1; j < norm.size(); ++j)
            if (norm[i].coords == norm[j].coords)
                throw PreconditionViolation("points not distinct");
    return PointConfiguration{n, std::move(norm)};
}

// Uniform point of P^n(F_p): uniform coordinates with the all-zero vector
// rejected, then normalized.
inline ProjectivePoint<Fp> random_point(const FieldContext& ctx, RngStream& rng, int n) {
    for (;;) {
        ProjectivePoint<Fp> p;
        bool nonzero = false;
        for (int i = 0; i <= n; ++i) {
            Fp c = ctx.random(rng);
            nonzero = nonzero || !c.is_zero();
            p.coords.push_back(c);
        }
        if (nonzero) return p.normalized();
    }
}

inline PointConfiguration random_configuration(const FieldContext& ctx, RngStream& rng, int n,
                                               int x) {
    std::vector<ProjectivePoint<Fp>> pts;
    while (static_cast<int>(pts.size()) < x) {
        ProjectivePoint<Fp> p = random_point(ctx, rng, n);
        bool dup = false;
        for (const auto& q : pts) dup = dup || (q.coords == p.coords);
        if (!dup) pts.push_back(std::move(p));
    }
    return PointConfiguration{n, std::move(pts)};
}

// Rows impose singularity at each point: row (i, j) holds the j-th partial
// of every basis monomial evaluated at p_i. The plain evaluation condition
// F(p_i) = 0 follows from the Euler identity and is not a separate row.
inline Matrix<Fp> double_point_matrix(const PointConfiguration& s, int d,
                                      const FieldContext& ctx) {
    assert(d >= 1);
    const int n = s.n;
    MonomialBasis basis(n, d);
    Matrix<Fp> m((n + 1) * s.size(), basis.size(), ctx.zero());
    for (int i = 0; i < s.size(); ++i) {
        const auto& coords = s.points[static_cast<size_t>(i)].coords;
        // Power tables for this point.
        std::vector<std::vector<Fp>> pw(static_cast<size_t>(n) + 1);
        for (int v = 0; v <= n; ++v) {
            pw[static_cast<size_t>(v)].assign(static_cast<size_t>(d) + 1, ctx.one());
            for (int k = 1; k <= d; ++k)
                pw[static_cast<size_t>(v)][static_cast<size_t>(k)] =
                    pw[static_cast<size_t>(v)][static_cast<size_t>(k - 1)] * coords[static_cast<size_t>(v)];
        }
        for (int col = 0; col < basis.size(); ++col) {
            const auto& e = basis[col].e;
            for (int j = 0; j <= n; ++j) {
                if (e[static_cast<size_t>(j)] == 0) continue;
                Fp term = ctx.make(static_cast<std::uint64_t>(e[static_cast<size_t>(j)]));
                for (int v = 0; v <= n; ++v) {
                    int ev = e[static_cast<size_t>(v)] - (v == j ? 1 : 0);
                    term *= pw[static_cast<size_t>(v)][static_cast<size_t>(ev)];
                }
                m.at(i * (n + 1) + j, col) = term;
            }
        }
    }
    return m;
}

// One row per point: the basis monomials evaluated there. Kernel = forms of
// degree d vanishing (simply) along the configuration.
inline Matrix<Fp> simple_evaluation_matrix(const PointConfiguration& s, int d,
                                           const FieldContext& ctx) {
    const int n = s.n;
    MonomialBasis basis(n, d);
    Matrix<Fp> m(s.size(), basis.size(), ctx.zero());
    for (int i = 0; i < s.size(); ++i) {
        const auto& coords = s.points[static_cast<size_t>(i)].coords;
        std::vector<std::vector<Fp>> pw(static_cast<size_t>(n) + 1);
        for (int v = 0; v <= n; ++v) {
            pw[static_cast<size_t>(v)].assign(static_cast<size_t>(d) + 1, ctx.one());
            for (int k = 1; k <= d; ++k)
                pw[static_cast<size_t>(v)][static_cast<size_t>(k)] =
                    pw[static_cast<size_t>(v)][static_cast<size_t>(k - 1)] * coords[static_cast<size_t>(v)];
        }
        for (int col = 0; col < basis.size(); ++col) {
            Fp term = ctx.one();
            for (int v = 0; v <= n; ++v)
                term *= pw[static_cast<size_t>(v)][static_cast<size_t>(basis[col].e[static_cast<size_t>(v)])];
            m.at(i, col) = term;
        }
    }
    return m;
}

inline int spanned_rank(const PointConfiguration& s, const FieldContext& ctx) {
    Matrix<Fp> m(s.size(), s.n + 1, ctx.zero());
    for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j <= s.n; ++j) m.at(i, j) = s.points[static_cast<size_t>(i)].coords[static_cast<size_t>(j)];
    return rank(m);
}

inline bool spans(const PointConfiguration& s, const FieldContext& ctx) {
    return spanned_rank(s, ctx) == s.n + 1;
}

inline std::uint64_t expected_h0(int n, int d, int x) {
    std::uint64_t forms = binomial(n + d, n);
    std::uint64_t conditions = static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(n + 1);
    return forms > conditions ? forms - conditions : 0;
}

inline std::uint64_t expected_h1(int n, int d, int x) {
    std::uint64_t forms = binomial(n + d, n);
    std::uint64_t conditions = static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(n + 1);
    return conditions > forms ? conditions - forms : 0;
}

// The Alexander-Hirschowitz classification: general double points fail to
// impose independent conditions exactly for d = 2 with 2 <= x <= n and for
// the four sporadic triples.
inline bool ah_defective(int n, int d, int x) {
    assert(n >= 1 && d >= 2 && x >= 1);
    if (d == 2) return 2 <= x && x <= n;
    if (n == 2 && d == 4 && x == 5) return true;
    if (n == 3 && d == 4 && x == 9) return true;
    if (n == 4 && d == 3 && x == 7) return true;
    if (n == 4 && d == 4 && x == 14) return true;
    return false;
}

inline int sigma(int n, int d) {
    assert(n >= 2 && d >= 2);
    return static_cast<int>(binomial(n + d, n) / static_cast<std::uint64_t>(n + 1));
}

inline int rho(int n, int d) {
    assert(n >= 2 && d >= 3);
    std::uint64_t forms = binomial(n + d, n);
    std::uint64_t den = static_cast<std::uint64_t>(n + 1);
    int r = static_cast<int>((forms + den - 1) / den);
    bool exceptional = (n == 2 && d == 4) || (n == 3 && d == 4) || (n == 4 && d == 3) ||
                       (n == 4 && d == 4);
    return exceptional ? r + 1 : r;
}

inline int nonempty_threshold(int n, int d) {
    assert(n >= 2 && d >= 3);
    return n + (d + 1) / 2;
}

// (h^0, h^1) of the ideal sheaf of the double scheme 2S twisted by d, from
// the exact rank of the evaluation matrix. h^1 always comes from the rank
// identity h^0 - h^1 = C(n+d, n) - (n+1) x, never from a second matrix.
struct CohomologyReport {
    int n = 0;
    int d = 0;
    int x = 0;
    std::uint64_t h0 = 0;
    std::uint64_t h1 = 0;
    int rank = 0;
    int ambient_dim_spanned = -1;  // projective dimension of the span of S
    std::uint64_t expected_h0 = 0;
    bool is_terracini = false;
};

inline CohomologyReport cohomology(const PointConfiguration& s, int d, const FieldContext& ctx) {
    assert(d >= 1);
    CohomologyReport rep;
    rep.n = s.n;
    rep.d = d;
    rep.x = s.size();
    Matrix<Fp> m = double_point_matrix(s, d, ctx);
    rep.rank = rank(m);
    const std::uint64_t forms = binomial(s.n + d, s.n);
    const std::uint64_t deg2s = static_cast<std::uint64_t>(s.size()) * (s.n + 1);
    rep.h0 = forms - static_cast<std::uint64_t>(rep.rank);
    rep.h1 = deg2s - static_cast<std::uint64_t>(rep.rank);
    rep.ambient_dim_spanned = spanned_rank(s, ctx) - 1;
    rep.expected_h0 = terracini::expected_h0(s.n, d, s.size());
    rep.is_terracini = rep.ambient_dim_spanned == s.n && rep.h0 > 0 && rep.h1 > 0;
    return rep;
}

inline CohomologyReport is_terracini(const PointConfiguration& s, int d,
                                     const FieldContext& ctx) {
    return cohomology(s, d, ctx);
}

// Minimal membership: every cardinality-(x-1) subset imposes independent
// conditions. Subsets of smaller cardinality are covered by monotonicity of
// h^1 under point removal, which the tests assert separately.
inline bool is_minimally_terracini(const PointConfiguration& s, int d, const FieldContext& ctx) {
    CohomologyReport rep = cohomology(s, d, ctx);
    if (!rep.is_terracini)
        throw PreconditionViolation("is_minimally_terracini: configuration is not Terracini");
    for (int drop = 0; drop < s.size(); ++drop) {
        PointConfiguration sub;
        sub.n = s.n;
        for (int i = 0; i < s.size(); ++i)
            if (i != drop) sub.points.push_back(s.points[static_cast<size_t>(i)]);
        CohomologyReport r = cohomology(sub, d, ctx);
        if (r.h1 != 0) return false;
    }
    return true;
}

}  // namespace terracini
