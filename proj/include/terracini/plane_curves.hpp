#pragma once

#include <algorithm>
#include <cassert>
#include <vector>

#include "terracini/errors.hpp"
#include "terracini/fatpoints.hpp"
#include "terracini/fp.hpp"
#include "terracini/homog.hpp"
#include "terracini/resultant.hpp"
#include "terracini/unipoly.hpp"

namespace terracini {

using PlaneCurve = HomogPoly<Fp>;

struct SingularLocusReport {
    std::vector<ProjectivePoint<Fp>> points;
    std::vector<bool> node_flags;
    bool reduced = true;
};

// Nondegenerate quadratic part in the affine chart where P is finite.
inline bool is_node(const PlaneCurve& c, const ProjectivePoint<Fp>& p, const FieldContext& ctx) {
    assert(c.n == 2 && c.d >= 2);
    ProjectivePoint<Fp> q = p.normalized();
    auto grad = gradient(c);
    for (int j = 0; j <= 2; ++j)
        if (!evaluate_at(grad[static_cast<size_t>(j)], q).is_zero())
            throw NotSingular("is_node: gradient does not vanish at the point");
    const int chart = q.chart();
    int u = -1, v = -1;
    for (int j = 0; j <= 2; ++j) {
        if (j == chart) continue;
        (u < 0 ? u : v) = j;
    }
    Fp huu = evaluate_at(partial(grad[static_cast<size_t>(u)], u), q);
    Fp huv = evaluate_at(partial(grad[static_cast<size_t>(u)], v), q);
    Fp hvv = evaluate_at(partial(grad[static_cast<size_t>(v)], v), q);
    return !(huu * hvv - huv * huv).is_zero();
}

namespace detail {

inline UniPoly<Fp> binary_at_y1(const HomogPoly<Fp>& f, const FieldContext& ctx) {
    // Restriction to the line z = 0, dehomogenized at y = 1: the polynomial
    // in x whose roots give points [x : 1 : 0].
    MonomialBasis basis(2, f.d);
    std::vector<Fp> c(static_cast<size_t>(f.d) + 1, ctx.zero());
    for (int i = 0; i < basis.size(); ++i) {
        const auto& e = basis[i].e;
        if (e[2] != 0) continue;
        c[static_cast<size_t>(e[0])] += f.c[static_cast<size_t>(i)];
    }
    return UniPoly<Fp>(std::move(c));
}

inline Fp coeff_pure_x(const HomogPoly<Fp>& f) {
    // Coefficient of x^d: the value at [1 : 0 : 0].
    MonomialBasis basis(2, f.d);
    std::vector<int> e(3, 0);
    e[0] = f.d;
    return f.c[static_cast<size_t>(basis.index(e))];
}

inline BivarPoly bivar_derivative_y(const BivarPoly& f, const FieldContext& ctx) {
    BivarPoly out;
    if (f.yc.size() <= 1) return out;
    out.yc.reserve(f.yc.size() - 1);
    for (size_t j = 1; j < f.yc.size(); ++j)
        out.yc.push_back(f.yc[j].scaled(ctx.make(static_cast<std::uint64_t>(j))));
    return out;
}

inline BivarPoly swap_xy(const BivarPoly& f, const FieldContext& ctx) {
    BivarPoly out;
    int xd = f.xdeg();
    out.yc.assign(static_cast<size_t>(std::max(xd, 0)) + 1, UniPoly<Fp>{});
    for (size_t j = 0; j < f.yc.size(); ++j) {
        for (int i = 0; i <= f.yc[j].degree(); ++i) {
            Fp cf = f.yc[j].c[static_cast<size_t>(i)];
            if (cf.is_zero()) continue;
            auto& target = out.yc[static_cast<size_t>(i)].c;
            if (target.size() <= j) target.resize(j + 1, ctx.zero());
            target[j] += cf;
        }
    }
    for (auto& p : out.yc) p.trim();
    return out;
}

// One vote that the curve is non-reduced: both axis resultants with the
// corresponding derivative vanish identically. A reduced curve can only fake
// this when the working chart has both a vertical and a horizontal line
// component, which two independent coordinate changes rule out.
inline bool nonreduced_vote(const BivarPoly& f, const FieldContext& ctx) {
    BivarPoly fy = bivar_derivative_y(f, ctx);
    if (fy.ydeg() < 0) return true;
    bool res_y_zero;
    if (f.yc.back().degree() != 0 || f.yc.back().is_zero()) return false;  // handled by caller
    res_y_zero = sylvester_resultant(f, fy, ctx).is_zero();
    if (!res_y_zero) return false;
    BivarPoly g = swap_xy(f, ctx);
    if (g.yc.back().degree() != 0 || g.yc.back().is_zero()) return false;
    BivarPoly gy = bivar_derivative_y(g, ctx);
    if (gy.ydeg() < 0) return true;
    return sylvester_resultant(g, gy, ctx).is_zero();
}

}  // namespace detail

// Exact singular locus of a plane curve. A random projective coordinate
// change moves every candidate into the affine chart and makes the leading
// coefficients generic; common zeros of the first two partials come from a
// Sylvester resultant plus per-root gcd extraction, and every candidate is
// verified against all three projective partials.
inline SingularLocusReport singular_locus(const PlaneCurve& c, const FieldContext& ctx,
                                          std::uint64_t salt = 0) {
    assert(c.n == 2 && c.d >= 2 && !c.is_zero());
    RngStream rng = ctx.stream("plane_curves", "singular_locus", salt);
    int nonreduced_votes = 0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto a = random_invertible(ctx, rng, 3);
        HomogPoly<Fp> fc = linear_change(c, a, ctx);
        BivarPoly f = dehomogenize_xy(fc, ctx);
        if (f.ydeg() != c.d || f.yc.back().degree() != 0) continue;  // [0:1:0] on the curve

        if (detail::nonreduced_vote(f, ctx)) {
            if (++nonreduced_votes >= 2) return SingularLocusReport{{}, {}, false};
            continue;
        }

        auto grad = gradient(fc);
        // No rational singular point may sit on the line z = 0 of the working
        // chart; retry the coordinate change when one does.
        {
            bool at_inf = detail::coeff_pure_x(grad[0]).is_zero() &&
                          detail::coeff_pure_x(grad[1]).is_zero() &&
                          detail::coeff_pure_x(grad[2]).is_zero();  // [1:0:0]
            if (!at_inf) {
                // Points [t:1:0]: common rational roots of the three partials
                // restricted to z = 0 (identically-zero restrictions vanish
                // everywhere and drop out of the gcd).
                UniPoly<Fp> g;
                bool all_zero = true;
                for (int j = 0; j <= 2; ++j) {
                    UniPoly<Fp> b = detail::binary_at_y1(grad[static_cast<size_t>(j)], ctx);
                    if (b.is_zero()) continue;
                    g = all_zero ? b : poly_gcd(g, b);
                    all_zero = false;
                }
                if (all_zero)
                    at_inf = true;
                else if (g.degree() >= 1 && !roots_in_field(g, ctx).empty())
                    at_inf = true;
            }
            if (at_inf) continue;
        }

        BivarPoly g0 = dehomogenize_xy(grad[0], ctx);
        BivarPoly g1 = dehomogenize_xy(grad[1], ctx);
        if (g0.ydeg() < 1 || g1.ydeg() < 1) continue;
        if (g0.yc.back().degree() != 0 || g1.yc.back().degree() != 0) continue;
        UniPoly<Fp> res;
        try {
            res = sylvester_resultant(g0, g1, ctx);
        } catch (const DegenerateLeadingCoefficient&) {
            continue;
        }
        if (res.is_zero()) continue;  // shared factor of the partials: retry

        std::vector<ProjectivePoint<Fp>> found;
        for (const auto& xr : roots_in_field(res, ctx)) {
            UniPoly<Fp> h = poly_gcd(g0.at_x(xr.root), g1.at_x(xr.root));
            if (h.degree() < 1) continue;
            for (const auto& yr : roots_in_field(h, ctx)) {
                std::vector<Fp> cand{xr.root, yr.root, ctx.one()};
                bool singular = true;
                for (int j = 0; j <= 2; ++j)
                    singular = singular &&
                               evaluate<Fp>(grad[static_cast<size_t>(j)], std::span<const Fp>(cand))
                                   .is_zero();
                if (!singular) continue;
                ProjectivePoint<Fp> chart_pt{cand};
                found.push_back(apply_matrix(a, chart_pt).normalized());
            }
        }
        std::sort(found.begin(), found.end(), point_less);
        found.erase(std::unique(found.begin(), found.end(),
                                [](const auto& p, const auto& q) { return p.coords == q.coords; }),
                    found.end());
        SingularLocusReport rep;
        rep.points = std::move(found);
        rep.reduced = true;
        for (const auto& p : rep.points) rep.node_flags.push_back(is_node(c, p, ctx));
        return rep;
    }
    throw GenericityFailure("singular_locus: no workable coordinate change after 8 attempts (salt " +
                            std::to_string(salt) + ")");
}

// As singular_locus, but the caller demands a finite answer.
inline SingularLocusReport singular_points(const PlaneCurve& c, const FieldContext& ctx,
                                           std::uint64_t salt = 0) {
    SingularLocusReport rep = singular_locus(c, ctx, salt);
    if (!rep.reduced)
        throw PositiveDimensionalSingularLocus("singular locus contains a multiple component");
    return rep;
}

namespace detail {

inline bool same_point_set(std::vector<ProjectivePoint<Fp>> a, std::vector<ProjectivePoint<Fp>> b) {
    if (a.size() != b.size()) return false;
    for (auto& p : a) p = p.normalized();
    for (auto& p : b) p = p.normalized();
    std::sort(a.begin(), a.end(), point_less);
    std::sort(b.begin(), b.end(), point_less);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].coords != b[i].coords) return false;
    return true;
}

}  // namespace detail

// A random member of the degree-d forms doubly vanishing on A, verified to be
// nodal with Sing = A exactly. Valid below the Severi threshold
// x < (d+2)(d+1)/6, where a general member works.
inline PlaneCurve general_nodal_member(const PointConfiguration& a, int d, const FieldContext& ctx,
                                       std::uint64_t salt = 0) {
    const int x = a.size();
    if (6 * x >= (d + 2) * (d + 1))
        throw PreconditionViolation("general_nodal_member: x must satisfy 6x < (d+2)(d+1)");
    Matrix<Fp> m = double_point_matrix(a, d, ctx);
    auto kernel = kernel_basis(m, ctx);
    if (kernel.empty())
        throw PreconditionViolation("general_nodal_member: the double-point system is empty");
    RngStream rng = ctx.stream("plane_curves", "general_nodal_member", salt);
    for (int attempt = 0; attempt < 8; ++attempt) {
        HomogPoly<Fp> f = zero_poly<Fp>(ctx, 2, d);
        for (const auto& k : kernel) {
            Fp cmix = ctx.random(rng);
            for (size_t i = 0; i < k.size(); ++i) f.c[i] += cmix * k[i];
        }
        if (f.is_zero()) continue;
        SingularLocusReport rep = singular_locus(f, ctx, mix_u64(salt, static_cast<std::uint64_t>(attempt)));
        if (!rep.reduced) continue;
        bool all_nodes = true;
        for (bool flag : rep.node_flags) all_nodes = all_nodes && flag;
        if (all_nodes && detail::same_point_set(rep.points, a.points)) return f;
    }
    throw GenericityFailure("general_nodal_member: retries exhausted (seed " +
                            std::to_string(ctx.seed()) + ", salt " + std::to_string(salt) + ")");
}

// det of the gradients of three plane forms, restricted to the line
// t -> v + t*u. Works over F_p and over the dual numbers.
template <class R>
UniPoly<R> gradient_det_on_line(const std::vector<HomogPoly<R>>& fs, std::span<const R> v,
                                std::span<const R> u) {
    assert(fs.size() == 3);
    std::array<std::array<UniPoly<R>, 3>, 3> g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                restrict_to_line(partial(fs[static_cast<size_t>(i)], j), v, u);
    auto minor = [&](int r1, int r2, int c1, int c2) {
        return g[static_cast<size_t>(c1)][static_cast<size_t>(r1)] * g[static_cast<size_t>(c2)][static_cast<size_t>(r2)] -
               g[static_cast<size_t>(c1)][static_cast<size_t>(r2)] * g[static_cast<size_t>(c2)][static_cast<size_t>(r1)];
    };
    // Cofactor expansion along the first column of the matrix whose (j, i)
    // entry is dF_i/dx_j on the line.
    UniPoly<R> det = g[0][0] * minor(1, 2, 1, 2) - g[0][1] * minor(0, 2, 1, 2) + g[0][2] * minor(0, 1, 1, 2);
    return det;
}

struct NetDiscriminantSample {
    PlaneCurve curve;
    PointConfiguration nodes;  // the x - 1 sampled points first, then the swept point
};

// Realizes a member of the dimension 2x-1 Severi component at
// x = (d+2)(d+1)/6: a net of forms doubly vanishing on x-1 random points, the
// determinant of its three gradients cut with a random line, and the member
// singular at the swept intersection point.
inline NetDiscriminantSample net_discriminant_sample(int d, const FieldContext& ctx,
                                                     std::uint64_t salt = 0) {
    if (d < 7 || d % 3 == 0)
        throw PreconditionViolation("net_discriminant_sample: requires d >= 7 with d != 0 mod 3");
    const int x = (d + 2) * (d + 1) / 6;
    RngStream rng = ctx.stream("plane_curves", "net_discriminant_sample",
                               mix_u64(salt, static_cast<std::uint64_t>(d)));
    bool net_dimension_ok = false;
    for (int attempt = 0; attempt < 8; ++attempt) {
        PointConfiguration aprime = random_configuration(ctx, rng, 2, x - 1);
        Matrix<Fp> m = double_point_matrix(aprime, d, ctx);
        auto kernel = kernel_basis(m, ctx);
        if (kernel.size() != 3) continue;  // WrongNetDimension: resample
        net_dimension_ok = true;
        std::vector<HomogPoly<Fp>> net;
        for (const auto& k : kernel) {
            HomogPoly<Fp> f = zero_poly<Fp>(ctx, 2, d);
            f.c = k;
            net.push_back(std::move(f));
        }
        for (int line_try = 0; line_try < 24; ++line_try) {
            Fp slope = ctx.random(rng), offset = ctx.random(rng);
            std::vector<Fp> v{ctx.zero(), offset, ctx.one()};
            std::vector<Fp> u{ctx.one(), slope, ctx.zero()};
            UniPoly<Fp> disc = gradient_det_on_line(net, std::span<const Fp>(v), std::span<const Fp>(u));
            if (disc.is_zero()) continue;
            auto roots = roots_in_field(disc, ctx);
            Fp t0 = ctx.zero();
            bool have_root = false;
            for (const auto& rm : roots) {
                if (rm.multiplicity != 1) continue;
                t0 = rm.root;
                have_root = true;
                break;
            }
            if (!have_root) continue;  // NoRationalRoot: try a new line
            std::vector<Fp> qc{t0, slope * t0 + offset, ctx.one()};
            ProjectivePoint<Fp> q{qc};
            bool clash = false;
            for (const auto& p : aprime.points) clash = clash || (p == q);
            if (clash) continue;
            // Member of the net singular at q: kernel of the 3x3 gradient
            // matrix (rows: coordinates, columns: net members).
            Matrix<Fp> n3(3, 3, ctx.zero());
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    n3.at(j, i) = evaluate<Fp>(partial(net[static_cast<size_t>(i)], j),
                                               std::span<const Fp>(qc));
            auto lambda = kernel_basis(n3, ctx);
            if (lambda.size() != 1) continue;
            HomogPoly<Fp> f = zero_poly<Fp>(ctx, 2, d);
            for (int i = 0; i < 3; ++i) {
                for (size_t cidx = 0; cidx < f.c.size(); ++cidx)
                    f.c[cidx] += lambda[0][static_cast<size_t>(i)] * net[static_cast<size_t>(i)].c[cidx];
            }
            if (f.is_zero()) continue;
            SingularLocusReport rep =
                singular_locus(f, ctx, mix_u64(salt, mix_u64(static_cast<std::uint64_t>(attempt),
                                                             static_cast<std::uint64_t>(line_try))));
            if (!rep.reduced) continue;
            bool all_nodes = true;
            for (bool flag : rep.node_flags) all_nodes = all_nodes && flag;
            std::vector<ProjectivePoint<Fp>> expected = aprime.points;
            expected.push_back(q);
            if (!all_nodes || !detail::same_point_set(rep.points, expected)) break;  // ExtraSingularity
            NetDiscriminantSample out;
            out.curve = std::move(f);
            out.nodes = make_configuration(2, std::move(expected));
            return out;
        }
    }
    if (!net_dimension_ok)
        throw WrongNetDimension("net_discriminant_sample: h0 of the double-point system never hit 3");
    throw GenericityFailure("net_discriminant_sample: retries exhausted (seed " +
                            std::to_string(ctx.seed()) + ", salt " + std::to_string(salt) + ")");
}

// Rank of the node-motion matrix: each form G vanishing on the nodes moves
// node p with exact velocity -H^{-1} grad G(p) in the affine chart at p. The
// defining form contributes a zero column, so this is the differential of
// C -> Sing(C) on the tangent space mod scaling.
inline int severi_differential_rank(const PlaneCurve& c, const PointConfiguration& s,
                                    const FieldContext& ctx) {
    const int x = s.size();
    for (const auto& p : s.points)
        if (!is_node(c, p, ctx)) throw PreconditionViolation("severi_differential_rank: non-node");
    Matrix<Fp> ev = simple_evaluation_matrix(s, c.d, ctx);
    if (rank(ev) != x)
        throw DependentNodes("severi_differential_rank: nodes impose dependent conditions");
    auto kernel = kernel_basis(ev, ctx);
    Matrix<Fp> motion(2 * x, static_cast<int>(kernel.size()), ctx.zero());
    for (int i = 0; i < x; ++i) {
        ProjectivePoint<Fp> p = s.points[static_cast<size_t>(i)].normalized();
        const int chart = p.chart();
        int uvar = -1, vvar = -1;
        for (int j = 0; j <= 2; ++j) {
            if (j == chart) continue;
            (uvar < 0 ? uvar : vvar) = j;
        }
        auto grad_f = gradient(c);
        Fp huu = evaluate_at(partial(grad_f[static_cast<size_t>(uvar)], uvar), p);
        Fp huv = evaluate_at(partial(grad_f[static_cast<size_t>(uvar)], vvar), p);
        Fp hvv = evaluate_at(partial(grad_f[static_cast<size_t>(vvar)], vvar), p);
        Fp det = huu * hvv - huv * huv;
        assert(!det.is_zero());
        Fp idet = det.inv();
        for (size_t j = 0; j < kernel.size(); ++j) {
            HomogPoly<Fp> g = zero_poly<Fp>(ctx, 2, c.d);
            g.c = kernel[j];
            Fp gu = evaluate_at(partial(g, uvar), p);
            Fp gv = evaluate_at(partial(g, vvar), p);
            // v = -H^{-1} (gu, gv)
            motion.at(2 * i, static_cast<int>(j)) = -(hvv * gu - huv * gv) * idet;
            motion.at(2 * i + 1, static_cast<int>(j)) = -(-huv * gu + huu * gv) * idet;
        }
    }
    return rank(motion);
}

}  // namespace terracini
