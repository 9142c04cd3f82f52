#pragma once

/* Independent test oracles. These deliberately avoid the library's PRS and
 * counting code paths: the Sylvester determinant is expanded by minors, and
 * Hurwitz tuples are enumerated literally. */

#include <random>
#include <vector>

#include "dualcover/poly.hpp"

namespace oracles {

using dualcover::Polynomial;
using dualcover::Rat;

/* Determinant by Laplace expansion along the first row, memoized over
 * column subsets. Fine for the <= 8x8 matrices used in tests. */
inline Polynomial det_expand(const std::vector<std::vector<Polynomial>>& m,
                             std::size_t row, unsigned cols_used,
                             std::vector<std::vector<char>>& seen,
                             std::vector<std::vector<Polynomial>>& memo,
                             const std::vector<std::string>& vars) {
    const std::size_t n = m.size();
    if (row == n) return Polynomial::constant(1, vars);
    auto& hit = seen[row][cols_used];
    if (hit) return memo[row][cols_used];
    Polynomial acc(vars);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        if (cols_used & (1u << c)) continue;
        if (!m[row][c].is_zero()) {
            Polynomial sub = det_expand(m, row + 1, cols_used | (1u << c), seen, memo, vars);
            Polynomial term = m[row][c] * sub;
            if (sign < 0) term *= Rat(-1);
            acc += term;
        }
        sign = -sign;
    }
    hit = 1;
    memo[row][cols_used] = acc;
    return acc;
}

inline Polynomial determinant(const std::vector<std::vector<Polynomial>>& m,
                              const std::vector<std::string>& vars) {
    const std::size_t n = m.size();
    std::vector<std::vector<char>> seen(n + 1, std::vector<char>(1u << n, 0));
    std::vector<std::vector<Polynomial>> memo(n + 1,
                                              std::vector<Polynomial>(1u << n, Polynomial(vars)));
    return det_expand(m, 0, 0, seen, memo, vars);
}

/* Sylvester-matrix resultant oracle eliminating `var`. */
inline Polynomial sylvester_resultant(const Polynomial& f0, const Polynomial& g0,
                                      const std::string& var) {
    auto [f, g] = dualcover::aligned(f0, g0);
    auto vi = f.var_index(var).value();
    auto fc = f.coeffs_in(vi);
    auto gc = g.coeffs_in(vi);
    const int df = static_cast<int>(fc.size()) - 1;
    const int dg = static_cast<int>(gc.size()) - 1;
    const int n = df + dg;
    std::vector<std::vector<Polynomial>> m(static_cast<std::size_t>(n),
                                           std::vector<Polynomial>(static_cast<std::size_t>(n),
                                                                   Polynomial(f.vars())));
    for (int r = 0; r < dg; ++r)
        for (int k = 0; k <= df; ++k) m[r][r + k] = fc[static_cast<std::size_t>(df - k)];
    for (int r = 0; r < df; ++r)
        for (int k = 0; k <= dg; ++k) m[dg + r][r + k] = gc[static_cast<std::size_t>(dg - k)];
    return determinant(m, f.vars());
}

inline Polynomial random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars,
                              int max_deg, int terms, int coeff_bound = 9) {
    std::uniform_int_distribution<int> cd(-coeff_bound, coeff_bound);
    std::uniform_int_distribution<int> ed(0, max_deg);
    Polynomial p(vars);
    for (int t = 0; t < terms; ++t) {
        int c = cd(rng);
        if (c == 0) c = 1;
        dualcover::Mono m{};
        int budget = max_deg;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            int e = ed(rng) % (budget + 1);
            m[i] = static_cast<std::uint16_t>(e);
            budget -= e;
        }
        p += Polynomial::from_term(m, Rat(c), vars);
    }
    return p;
}

/* Scalar-multiple comparison: exact equality of normalized forms. */
inline bool equal_up_to_scalar(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    auto [x, y] = dualcover::aligned(a, b);
    return x.normalized() == y.normalized();
}

}  // namespace oracles
