#pragma once

#include <cassert>
#include <vector>

#include "terracini/errors.hpp"
#include "terracini/fp.hpp"
#include "terracini/homog.hpp"
#include "terracini/matrix.hpp"
#include "terracini/unipoly.hpp"

namespace terracini {

// Bivariate polynomial over F_p: yc[j] is the coefficient of y^j, a
// univariate polynomial in x.
struct BivarPoly {
    std::vector<UniPoly<Fp>> yc;

    int ydeg() const {
        for (int j = static_cast<int>(yc.size()) - 1; j >= 0; --j)
            if (!yc[static_cast<size_t>(j)].is_zero()) return j;
        return -1;
    }
    int xdeg() const {
        int d = -1;
        for (const auto& c : yc) d = std::max(d, c.degree());
        return d;
    }
    bool is_zero() const { return ydeg() < 0; }

    // Specialize x = a; returns the univariate polynomial in y.
    UniPoly<Fp> at_x(Fp a) const {
        std::vector<Fp> c;
        c.reserve(yc.size());
        for (const auto& p : yc) c.push_back(p.eval(a));
        return UniPoly<Fp>(std::move(c));
    }

    UniPoly<Fp> eval_y(Fp b, const FieldContext& ctx) const {
        UniPoly<Fp> acc;
        Fp pw = ctx.one();
        for (const auto& p : yc) {
            acc = acc + p.scaled(pw);
            pw *= b;
        }
        return acc;
    }
};

// Chart z = 1 of a plane form: F(x, y, 1) collected by powers of y.
inline BivarPoly dehomogenize_xy(const HomogPoly<Fp>& f, const FieldContext& ctx) {
    assert(f.n == 2);
    MonomialBasis basis(2, f.d);
    BivarPoly out;
    out.yc.assign(static_cast<size_t>(f.d) + 1, UniPoly<Fp>{});
    std::vector<std::vector<Fp>> grid(static_cast<size_t>(f.d) + 1,
                                      std::vector<Fp>(static_cast<size_t>(f.d) + 1, ctx.zero()));
    for (int i = 0; i < basis.size(); ++i) {
        if (f.c[static_cast<size_t>(i)].is_zero()) continue;
        const auto& e = basis[i].e;
        grid[static_cast<size_t>(e[1])][static_cast<size_t>(e[0])] += f.c[static_cast<size_t>(i)];
    }
    for (int j = 0; j <= f.d; ++j) out.yc[static_cast<size_t>(j)] = UniPoly<Fp>(grid[static_cast<size_t>(j)]);
    return out;
}

inline Fp sylvester_det(const UniPoly<Fp>& f, const UniPoly<Fp>& g, int df, int dg,
                        const FieldContext& ctx) {
    const int size = df + dg;
    Matrix<Fp> m(size, size, ctx.zero());
    for (int i = 0; i < dg; ++i)
        for (int k = 0; k <= df; ++k) m.at(i, i + k) = f.coeff(df - k, ctx.zero());
    for (int i = 0; i < df; ++i)
        for (int k = 0; k <= dg; ++k) m.at(dg + i, i + k) = g.coeff(dg - k, ctx.zero());
    return determinant(m, ctx);
}

inline UniPoly<Fp> lagrange_interpolate(const std::vector<Fp>& xs, const std::vector<Fp>& ys,
                                        const FieldContext& ctx) {
    const size_t n = xs.size();
    std::vector<Fp> acc(n, ctx.zero());
    for (size_t i = 0; i < n; ++i) {
        std::vector<Fp> num{ctx.one()};
        Fp den = ctx.one();
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<Fp> next(num.size() + 1, ctx.zero());
            for (size_t k = 0; k < num.size(); ++k) {
                next[k + 1] += num[k];
                next[k] -= num[k] * xs[j];
            }
            num = std::move(next);
            den *= xs[i] - xs[j];
        }
        Fp w = ys[i] * den.inv();
        for (size_t k = 0; k < num.size(); ++k) acc[k] += num[k] * w;
    }
    return UniPoly<Fp>(std::move(acc));
}

// Res_y(f, g) as a polynomial in x, by specializing x at enough sample values
// and interpolating the Sylvester determinant. Requires constant nonzero
// leading y-coefficients so that specialization commutes with the resultant;
// the callers arrange this with a random projective coordinate change.
inline UniPoly<Fp> sylvester_resultant(const BivarPoly& f, const BivarPoly& g,
                                       const FieldContext& ctx) {
    const int df = f.ydeg(), dg = g.ydeg();
    if (df < 1 || dg < 1)
        throw DegenerateLeadingCoefficient("sylvester_resultant: y-degrees must be >= 1");
    if (f.yc[static_cast<size_t>(df)].degree() != 0 || g.yc[static_cast<size_t>(dg)].degree() != 0)
        throw DegenerateLeadingCoefficient(
            "sylvester_resultant: leading y-coefficient is not a nonzero constant");
    const int bound = df * std::max(g.xdeg(), 0) + dg * std::max(f.xdeg(), 0);
    assert(static_cast<std::uint64_t>(bound) + 1 <= ctx.prime());
    std::vector<Fp> xs, ys;
    xs.reserve(static_cast<size_t>(bound) + 1);
    for (int s = 0; s <= bound; ++s) {
        Fp a = ctx.make(static_cast<std::uint64_t>(s));
        xs.push_back(a);
        ys.push_back(sylvester_det(f.at_x(a), g.at_x(a), df, dg, ctx));
    }
    return lagrange_interpolate(xs, ys, ctx);
}

}  // namespace terracini
