#pragma once

// Brute-force reference computations used by the unit tests. They avoid the
// library's elimination code on purpose.

#include "mnec/mnec.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using mnec::elem;

// Polynomial product of digit vectors reduced by the monic modulus, all mod p.
inline elem poly_mul(elem a, elem b, unsigned p, unsigned m, std::uint64_t modulus) {
    std::vector<unsigned> x, y, mod;
    for (; a; a /= p) x.push_back(a % p);
    for (; b; b /= p) y.push_back(b % p);
    for (; modulus; modulus /= p) mod.push_back(static_cast<unsigned>(modulus % p));
    if (x.empty() || y.empty()) return 0;
    std::vector<unsigned> z(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
    for (std::size_t d = z.size(); d-- > m;) {
        unsigned c = z[d];
        if (!c) continue;
        for (std::size_t k = 0; k <= m; ++k) z[d - m + k] = (z[d - m + k] + p * p - c * mod[k]) % p;
    }
    elem r = 0, w = 1;
    for (std::size_t i = 0; i < m && i < z.size(); ++i, w *= p) r += z[i] * w;
    return r;
}

// Columns of a (rows x cols, row-major) are dependent iff some nonzero
// coefficient vector combines them to zero. Exponential; small inputs only.
inline bool dependent(const mnec::matrix& a, const std::vector<std::size_t>& cols) {
    const auto& f = a.fld();
    std::size_t k = cols.size();
    if (k == 0) return false;
    std::vector<elem> c(k, 0);
    for (;;) {
        std::size_t i = 0;
        while (i < k && ++c[i] == f.order()) c[i++] = 0;
        if (i == k) return false;
        bool zero = true;
        for (std::size_t r = 0; r < a.rows() && zero; ++r) {
            elem s = 0;
            for (std::size_t j = 0; j < k; ++j) s = f.add(s, f.mul(c[j], a(r, cols[j])));
            zero = s == 0;
        }
        if (zero) return true;
    }
}

// Largest independent subset, by exhaustive search over subsets of cols.
inline std::size_t rank(const mnec::matrix& a, const std::vector<std::size_t>& cols) {
    std::size_t best = 0, k = cols.size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
        std::size_t pc = static_cast<std::size_t>(__builtin_popcountll(m));
        if (pc <= best) continue;
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < k; ++i)
            if (m >> i & 1) s.push_back(cols[i]);
        if (!dependent(a, s)) best = pc;
    }
    return best;
}

inline mnec::matrix random_matrix(const mnec::field& f, std::size_t rows, std::size_t cols, std::mt19937_64& g) {
    mnec::matrix a(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) a(r, c) = static_cast<elem>(g() % f.order());
    return a;
}

}  // namespace oracle
