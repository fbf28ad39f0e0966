#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "tensym/errors.hpp"

namespace tensym {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar with arbitrary-precision integer parts.
///
/// Invariant: gcd(num, den) == 1, den > 0, and zero is 0/1. Every operation
/// returns a value in this canonical form, so operator== is plain structural
/// equality and arithmetic never rounds.
class Rational {
public:
    Rational() = default;
    Rational(int v) : v_(v) {}
    Rational(long v) : v_(v) {}
    Rational(long long v) : v_(v) {}
    Rational(BigInt v) : v_(std::move(v)) {}
    Rational(BigInt num, BigInt den);

    /// Parses "a" or "a/b" with optional leading '-' (no whitespace, no
    /// decimals). Throws ParseError on anything else, ValidationError on b == 0.
    static Rational parse(std::string_view text);

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_integer() const { return denominator() == 1; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return v_.sign(); }

    /// "a" for integers, "a/b" otherwise; the inverse of parse().
    std::string str() const { return v_.str(); }

    /// Nearest double; large values may overflow to +/-inf, never throws.
    double to_double() const { return v_.convert_to<double>(); }

    Rational operator-() const {
        Rational r;
        r.v_ = -v_;
        return r;
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw ValidationError("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    boost::multiprecision::cpp_rational v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace tensym
