#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "pflat/errors.hpp"

namespace pflat {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Always kept in lowest terms with a positive
/// denominator, so equality is structural.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }
    Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_ == 1 && num_ == 1; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_.sign(); }

    friend Rational operator-(const Rational& x) {
        Rational r;
        r.num_ = -x.num_;
        r.den_ = x.den_;
        return r;
    }

    friend Rational operator+(const Rational& x, const Rational& y) {
        if (x.num_.is_zero()) return y;
        if (y.num_.is_zero()) return x;
        return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        if (y.num_.is_zero()) return x;
        if (x.num_.is_zero()) return -y;
        return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        if (x.num_.is_zero() || y.num_.is_zero()) return Rational();
        // Cross-cancel before multiplying to keep intermediates small.
        BigInt g1 = boost::multiprecision::gcd(x.num_, y.den_);
        BigInt g2 = boost::multiprecision::gcd(y.num_, x.den_);
        Rational r;
        r.num_ = (x.num_ / g1) * (y.num_ / g2);
        r.den_ = (x.den_ / g2) * (y.den_ / g1);
        return r;
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_.is_zero()) throw Error("rational division by zero");
        if (x.num_.is_zero()) return Rational();
        BigInt g1 = boost::multiprecision::gcd(x.num_, y.num_);
        BigInt g2 = boost::multiprecision::gcd(y.den_, x.den_);
        Rational r;
        r.num_ = (x.num_ / g1) * (y.den_ / g2);
        r.den_ = (x.den_ / g2) * (y.num_ / g1);
        if (r.den_.sign() < 0) {
            r.num_ = -r.num_;
            r.den_ = -r.den_;
        }
        return r;
    }

    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }
    Rational& operator/=(const Rational& y) { return *this = *this / y; }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y) {
        return x.num_ * y.den_ < y.num_ * x.den_;
    }
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
    friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

    /// Canonical serialization: "5", "-3/16".
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) {
            s += '/';
            s += den_.str();
        }
        return s;
    }

    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return Rational(BigInt(std::string(text)), BigInt(1));
        return Rational(BigInt(std::string(text.substr(0, slash))),
                        BigInt(std::string(text.substr(slash + 1))));
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& x) {
        return os << x.str();
    }

private:
    void normalize() {
        if (den_.is_zero()) throw Error("rational with zero denominator");
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

/// Exact square root when the argument is a perfect square of a rational;
/// nullopt-like signalling via the bool flag.
inline bool rational_sqrt(const Rational& x, Rational& out) {
    if (x.sign() < 0) return false;
    if (x.is_zero()) {
        out = Rational();
        return true;
    }
    BigInt rn = boost::multiprecision::sqrt(x.num());
    BigInt rd = boost::multiprecision::sqrt(x.den());
    if (rn * rn != x.num() || rd * rd != x.den()) return false;
    out = Rational(rn, rd);
    return true;
}

} // namespace pflat
