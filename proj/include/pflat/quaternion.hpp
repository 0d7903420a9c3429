#pragma once

#include <array>
#include <ostream>
#include <string>

#include "pflat/rational.hpp"

namespace pflat {

/// The four quaternion units in canonical order.
enum class QUnit : int { One = 0, I = 1, J = 2, K = 3 };

inline const char* qunit_prefix(QUnit u) {
    switch (u) {
        case QUnit::One: return "";
        case QUnit::I: return "i";
        case QUnit::J: return "j";
        case QUnit::K: return "k";
    }
    return "";
}

/// Quaternion with exact rational components re + i·im_i + j·im_j + k·im_k.
/// Hamilton relations: i² = j² = k² = −1, ij = k, jk = i, ki = j.
class Quaternion {
public:
    Quaternion() = default;
    Quaternion(Rational re) : c_{std::move(re), {}, {}, {}} {}
    Quaternion(Rational re, Rational i, Rational j, Rational k)
        : c_{std::move(re), std::move(i), std::move(j), std::move(k)} {}
    Quaternion(int v) : c_{Rational(v), {}, {}, {}} {}

    static Quaternion unit(QUnit u) {
        Quaternion q;
        q.c_[static_cast<int>(u)] = Rational(1);
        return q;
    }

    const Rational& re() const { return c_[0]; }
    const Rational& im_i() const { return c_[1]; }
    const Rational& im_j() const { return c_[2]; }
    const Rational& im_k() const { return c_[3]; }
    const Rational& comp(int idx) const { return c_[idx]; }

    bool is_zero() const {
        return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
    }
    bool is_real() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }

    friend Quaternion operator-(const Quaternion& q) {
        return {-q.c_[0], -q.c_[1], -q.c_[2], -q.c_[3]};
    }
    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2], a.c_[3] + b.c_[3]};
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2], a.c_[3] - b.c_[3]};
    }

    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_real()) {
            if (a.c_[0].is_one()) return b;
            return {a.c_[0] * b.c_[0], a.c_[0] * b.c_[1], a.c_[0] * b.c_[2], a.c_[0] * b.c_[3]};
        }
        const Rational &w1 = a.c_[0], &x1 = a.c_[1], &y1 = a.c_[2], &z1 = a.c_[3];
        const Rational &w2 = b.c_[0], &x2 = b.c_[1], &y2 = b.c_[2], &z2 = b.c_[3];
        return {w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2};
    }

    friend Quaternion operator*(const Rational& s, const Quaternion& q) {
        return {s * q.c_[0], s * q.c_[1], s * q.c_[2], s * q.c_[3]};
    }

    Quaternion& operator+=(const Quaternion& b) { return *this = *this + b; }
    Quaternion& operator-=(const Quaternion& b) { return *this = *this - b; }
    Quaternion& operator*=(const Quaternion& b) { return *this = *this * b; }

    friend bool operator==(const Quaternion& a, const Quaternion& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }

    std::string str() const {
        if (is_zero()) return "0";
        static const char* names[4] = {"", "i", "j", "k"};
        std::string s;
        for (int t = 0; t < 4; ++t) {
            if (c_[t].is_zero()) continue;
            if (!s.empty() && c_[t].sign() > 0) s += '+';
            s += c_[t].str();
            s += names[t];
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << q.str();
    }

private:
    std::array<Rational, 4> c_{};
};

inline Quaternion quat_mul(const Quaternion& p, const Quaternion& q) { return p * q; }

} // namespace pflat
