#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pflat/errors.hpp"
#include "pflat/rational.hpp"

namespace pflat {

/// Exponent vector of a monomial; fixed length = variable count of the ring.
using Monomial = std::vector<std::uint8_t>;

/// Graded lexicographic order: first by total degree, ties by exponents with
/// the earlier variable weighing more.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da < db;
        // Same degree: lexicographic with x1 > x2 > ...; a < b iff at the
        // first differing position a has the smaller exponent.
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// The zero polynomial has an empty term map; its degree is "none", not -1.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexLess>;

    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(int nvars) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, Rational c) {
        MultiPoly p(nvars);
        if (!c.is_zero()) p.terms_.emplace(Monomial(nvars, 0), std::move(c));
        return p;
    }

    static MultiPoly variable(int nvars, int idx, Rational coeff = Rational(1)) {
        MultiPoly p(nvars);
        if (!coeff.is_zero()) {
            Monomial m(nvars, 0);
            m[idx] = 1;
            p.terms_.emplace(std::move(m), std::move(coeff));
        }
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    /// Total degree; nullopt for the zero polynomial.
    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        const Monomial& lead = terms_.rbegin()->first;
        int d = 0;
        for (auto e : lead) d += e;
        return d;
    }

    /// Leading term in graded-lex order.
    const std::pair<const Monomial, Rational>& leading() const {
        if (terms_.empty()) throw Error("leading term of the zero polynomial");
        return *terms_.rbegin();
    }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational() : it->second;
    }

    Rational constant_term() const { return coeff(Monomial(nvars_, 0)); }

    void add_term(Monomial m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MultiPoly operator-(const MultiPoly& p) {
        MultiPoly r(p.nvars_);
        for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i)
                    m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
                r.add_term(std::move(m), ca * cb);
            }
        }
        return r;
    }
    friend MultiPoly operator*(const Rational& s, const MultiPoly& p) {
        MultiPoly r(p.nvars_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, s * c);
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
    MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }
    MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    Rational eval(const std::vector<Rational>& point) const {
        Rational total;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < nvars_; ++i)
                for (int e = 0; e < m[i]; ++e) t *= point[i];
            total += t;
        }
        return total;
    }

    /// Substitute variable idx by a polynomial of the same ring.
    MultiPoly substitute(int idx, const MultiPoly& repl) const {
        MultiPoly r(nvars_);
        for (const auto& [m, c] : terms_) {
            Monomial base = m;
            int e = base[idx];
            base[idx] = 0;
            MultiPoly t(nvars_);
            t.add_term(std::move(base), c);
            for (int k = 0; k < e; ++k) t *= repl;
            r += t;
        }
        return r;
    }

    MultiPoly substitute(int idx, const Rational& value) const {
        return substitute(idx, MultiPoly::constant(nvars_, value));
    }

    /// Exact division: returns the quotient when divisor | *this, else
    /// nullopt. Single-divisor long division in graded-lex order; for exact
    /// multiples the leading terms cancel at every step, so failure of a
    /// step proves indivisibility.
    std::optional<MultiPoly> try_divide(const MultiPoly& divisor) const {
        if (divisor.is_zero()) throw Error("polynomial division by zero");
        MultiPoly rem = *this;
        MultiPoly quot(nvars_);
        const auto& dlead = divisor.leading();
        while (!rem.is_zero()) {
            const auto& rlead = rem.leading();
            Monomial q(nvars_);
            for (int i = 0; i < nvars_; ++i) {
                if (rlead.first[i] < dlead.first[i]) return std::nullopt;
                q[i] = static_cast<std::uint8_t>(rlead.first[i] - dlead.first[i]);
            }
            Rational qc = rlead.second / dlead.second;
            MultiPoly qterm(nvars_);
            qterm.add_term(q, qc);
            quot += qterm;
            rem -= qterm * divisor;
        }
        return quot;
    }

    MultiPoly exact_divide(const MultiPoly& divisor) const {
        auto q = try_divide(divisor);
        if (!q) throw Error("inexact polynomial division");
        return *q;
    }

    /// Variables actually appearing.
    std::vector<int> support_vars() const {
        std::vector<bool> seen(nvars_, false);
        for (const auto& [m, c] : terms_)
            for (int i = 0; i < nvars_; ++i)
                if (m[i] > 0) seen[i] = true;
        std::vector<int> out;
        for (int i = 0; i < nvars_; ++i)
            if (seen[i]) out.push_back(i);
        return out;
    }

    std::string str(const std::vector<std::string>& var_names = {}) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            if (!s.empty()) s += c.sign() > 0 ? " + " : " - ";
            else if (c.sign() < 0) s += "-";
            Rational a = abs(c);
            bool has_var = false;
            for (int i = 0; i < nvars_; ++i)
                if (m[i] > 0) has_var = true;
            bool need_star = false;
            if (!a.is_one() || !has_var) {
                s += a.str();
                need_star = true;
            }
            for (int i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                if (need_star) s += "*";
                need_star = true;
                s += i < static_cast<int>(var_names.size()) ? var_names[i]
                                                            : "x" + std::to_string(i + 1);
                if (m[i] > 1) s += "^" + std::to_string(static_cast<int>(m[i]));
            }
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
        return os << p.str();
    }

private:
    int nvars_;
    TermMap terms_;
};

} // namespace pflat
