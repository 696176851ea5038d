#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational scalars backed by GMP.
 *
 * A Rational is always in lowest terms with a positive denominator, and
 * zero is represented as 0/1. Those invariants make structural equality
 * coincide with numeric equality, which the register identity test relies on.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "error.hpp"

namespace gramata {

using Integer = mpz_class;

class Rational
{
public:
    Rational() : value_(0) {}
    Rational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : value_(n) {}   // NOLINT(google-explicit-constructor)
    explicit Rational(const Integer& n) : value_(n) {}

    /// Builds num/den in canonical form. Throws "zero-denominator".
    static Rational normalize(const Integer& num, const Integer& den)
    {
        if (den == 0)
            throw Error("zero-denominator", "rational with denominator 0");
        Rational r;
        r.value_ = mpq_class(num, den);
        r.value_.canonicalize();
        return r;
    }

    static Rational normalize(long num, long den) { return normalize(Integer(num), Integer(den)); }

    /// Parses `p`, `-p`, or `p/q` (q may be negative; the result is normalized).
    static Rational parse(std::string_view text)
    {
        const auto slash = text.find('/');
        auto parse_int = [&](std::string_view s) {
            if (s.empty())
                throw Error("syntax", "empty integer in rational '" + std::string(text) + "'");
            std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (i == s.size())
                throw Error("syntax", "bad integer '" + std::string(s) + "'");
            for (std::size_t j = i; j < s.size(); ++j)
                if (s[j] < '0' || s[j] > '9')
                    throw Error("syntax", "bad integer '" + std::string(s) + "'");
            std::string digits(s[0] == '+' ? s.substr(1) : s);
            return Integer(digits, 10);
        };
        if (slash == std::string_view::npos)
            return Rational(parse_int(text));
        return normalize(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

    Integer numerator() const { return value_.get_num(); }
    Integer denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    double to_double() const { return value_.get_d(); }

    Rational operator-() const { return from_mpq(-value_); }
    Rational operator+(const Rational& o) const { return from_mpq(value_ + o.value_); }
    Rational operator-(const Rational& o) const { return from_mpq(value_ - o.value_); }
    Rational operator*(const Rational& o) const { return from_mpq(value_ * o.value_); }
    Rational operator/(const Rational& o) const
    {
        if (o.is_zero())
            throw Error("zero-denominator", "division by zero");
        return from_mpq(value_ / o.value_);
    }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }

    Rational reciprocal() const { return Rational(1) / *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    /// Canonical text: `p/q`, or `p` when q = 1.
    std::string str() const
    {
        if (is_integer())
            return value_.get_num().get_str();
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    const mpq_class& raw() const { return value_; }

private:
    static Rational from_mpq(mpq_class v)
    {
        Rational r;
        r.value_ = std::move(v);
        return r;
    }

    mpq_class value_;
};

/// 2^k as an exact rational; k may be negative.
inline Rational pow2(long k)
{
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
    return k >= 0 ? Rational(p) : Rational::normalize(Integer(1), p);
}

} // namespace gramata
