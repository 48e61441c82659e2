#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <vector>

namespace terracini {

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

struct Monomial {
    std::vector<int> e;  // exponents of x_0..x_n

    int degree() const {
        int d = 0;
        for (int x : e) d += x;
        return d;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

// The degree-d monomials in n+1 variables, in graded-lex order with
// x_0 > x_1 > ... > x_n. This order is fixed globally: every coefficient
// vector and every serialized polynomial uses it.
class MonomialBasis {
public:
    MonomialBasis(int n, int d) : n_(n), d_(d) {
        assert(n >= 1 && d >= 0);
        std::vector<int> cur(static_cast<size_t>(n + 1), 0);
        gen(cur, 0, d);
        for (size_t i = 0; i < items_.size(); ++i) index_[items_[i].e] = static_cast<int>(i);
    }

    int n() const { return n_; }
    int degree() const { return d_; }
    int size() const { return static_cast<int>(items_.size()); }
    const Monomial& operator[](int i) const { return items_[static_cast<size_t>(i)]; }
    const std::vector<Monomial>& items() const { return items_; }

    int index(const std::vector<int>& exponents) const {
        auto it = index_.find(exponents);
        assert(it != index_.end());
        return it->second;
    }

private:
    void gen(std::vector<int>& cur, int var, int rem) {
        if (var == n_) {
            cur[static_cast<size_t>(var)] = rem;
            items_.push_back(Monomial{cur});
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[static_cast<size_t>(var)] = e;
            gen(cur, var + 1, rem - e);
        }
        cur[static_cast<size_t>(var)] = 0;
    }

    int n_;
    int d_;
    std::vector<Monomial> items_;
    std::map<std::vector<int>, int> index_;
};

}  // namespace terracini
