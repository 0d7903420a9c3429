#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pflat/errors.hpp"
#include "pflat/matrix.hpp"
#include "pflat/multipoly.hpp"

namespace pflat {

enum class DetStrategy { Bareiss, MinorExpansion };

inline constexpr int kDefaultSymbolicCap = 16;

namespace detail {

/// Fraction-free Bareiss elimination over an integral domain. Every
/// division is by the previous pivot and is exact.
inline MultiPoly det_bareiss(Mat<MultiPoly> m) {
    const std::size_t n = m.rows();
    const int nv = m(0, 0).nvars();
    if (n == 1) return m(0, 0);
    MultiPoly prev = MultiPoly::constant(nv, Rational(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m(pivot, k).is_zero()) ++pivot;
        if (pivot == n) return MultiPoly(nv);
        if (pivot != k) {
            m.swap_rows(k, pivot);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = num.is_zero() ? MultiPoly(nv) : num.exact_divide(prev);
            }
            m(i, k) = MultiPoly(nv);
        }
        prev = m(k, k);
    }
    MultiPoly d = m(n - 1, n - 1);
    return negate ? -d : d;
}

/// Laplace expansion memoized over column subsets: the minor over rows
/// [n-|S|, n) and column set S is computed once per subset.
inline MultiPoly det_minor_expansion(const Mat<MultiPoly>& m) {
    const std::size_t n = m.rows();
    const int nv = m(0, 0).nvars();
    if (n > 20) throw SizeCapExceeded("minor expansion limited to 20x20");
    std::vector<std::optional<MultiPoly>> memo(std::size_t(1) << n);
    memo[0] = MultiPoly::constant(nv, Rational(1));

    // Iterative over subsets in increasing popcount = increasing minor size.
    std::vector<std::vector<std::uint32_t>> by_count(n + 1);
    for (std::uint32_t s = 1; s < (std::uint32_t(1) << n); ++s)
        by_count[static_cast<std::size_t>(__builtin_popcount(s))].push_back(s);

    for (std::size_t size = 1; size <= n; ++size) {
        for (std::uint32_t s : by_count[size]) {
            const std::size_t row = n - size;
            MultiPoly acc(nv);
            int pos = 0;
            for (std::size_t col = 0; col < n; ++col) {
                if (!(s & (std::uint32_t(1) << col))) continue;
                const MultiPoly& entry = m(row, col);
                if (!entry.is_zero()) {
                    const MultiPoly& sub = *memo[s & ~(std::uint32_t(1) << col)];
                    MultiPoly term = entry * sub;
                    if (pos % 2 == 1) term = -term;
                    acc += term;
                }
                ++pos;
            }
            memo[s] = std::move(acc);
        }
    }
    return *memo[(std::uint32_t(1) << n) - 1];
}

} // namespace detail

/// Exact determinant of a square polynomial matrix. Both strategies agree;
/// MinorExpansion serves as the independent oracle for Bareiss.
inline MultiPoly poly_det(const Mat<MultiPoly>& m, DetStrategy strategy = DetStrategy::Bareiss,
                          int size_cap = kDefaultSymbolicCap) {
    if (!m.is_square() || m.rows() == 0) throw Error("poly_det requires a nonempty square matrix");
    if (static_cast<int>(m.rows()) > size_cap)
        throw SizeCapExceeded("matrix size " + std::to_string(m.rows()) +
                              " exceeds symbolic cap " + std::to_string(size_cap));
    switch (strategy) {
        case DetStrategy::Bareiss: return detail::det_bareiss(m);
        case DetStrategy::MinorExpansion: return detail::det_minor_expansion(m);
    }
    throw Error("unreachable");
}

/// Decide whether a degree-1 polynomial divides p. Divisibility is first
/// decided by substituting the hyperplane solution of ell = 0 into p and
/// testing identical vanishing; the quotient then comes from exact division,
/// so the two routes check each other.
inline std::pair<bool, std::optional<MultiPoly>> linear_factor_divides(const MultiPoly& p,
                                                                       const MultiPoly& ell) {
    if (!ell.degree() || *ell.degree() != 1)
        throw Error("linear_factor_divides requires a divisor of total degree exactly 1");
    const int nv = ell.nvars();

    // Pick the solved variable: the last variable with nonzero coefficient.
    int solved = -1;
    Rational coeff;
    for (const auto& [m, c] : ell.terms()) {
        for (int i = 0; i < nv; ++i) {
            if (m[i] == 1 && i > solved) {
                solved = i;
                coeff = c;
            }
        }
    }
    if (solved < 0) throw Error("divisor has no linear part");

    // x_solved = -(ell - coeff*x_solved)/coeff on the hyperplane ell = 0.
    MultiPoly rest = ell - MultiPoly::variable(nv, solved, coeff);
    MultiPoly repl = (Rational(-1) / coeff) * rest;
    if (!p.substitute(solved, repl).is_zero()) return {false, std::nullopt};

    MultiPoly q = p.exact_divide(ell);
    return {true, std::move(q)};
}

} // namespace pflat
