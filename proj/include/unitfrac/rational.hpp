#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational arithmetic and the greedy unit-fraction selector.
 *
 * Rational wraps a GMP mpq_class and keeps it canonical: the denominator is
 * positive and coprime to the numerator after every operation. Nothing in the
 * library core goes through floating point; decimal strings are produced by
 * integer division and exist for display only.
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace unitfrac {

using Integer = mpz_class;

Integer parse_integer(std::string_view text);
std::string to_string(const Integer& value);

class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}
    Rational(const Integer& value) : value_(value) {}
    // Throws DomainError when den == 0.
    Rational(const Integer& num, const Integer& den);

    // Accepts "P/Q" or "P" with Q > 0, optional leading '-'.
    static Rational parse(std::string_view text);
    // Exact value of a finite double (every double is a dyadic rational).
    static Rational from_double(double value);

    const Integer& numerator() const { return value_.get_num(); }
    const Integer& denominator() const { return value_.get_den(); }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return denominator() == 1; }

    Rational reciprocal() const;
    Integer floor() const;
    Integer ceil() const;

    // Always "P/Q", even for integers.
    std::string to_string() const;
    // Rounded to `digits` places after the point; display only.
    std::string to_decimal(int digits) const;
    double to_double() const { return value_.get_d(); }

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    // Throws DomainError on division by zero.
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs) {
        return cmp(lhs.value_, rhs.value_) == 0;
    }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
        return cmp(lhs.value_, rhs.value_) <=> 0;
    }

    const mpq_class& raw() const { return value_; }

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

inline Rational unit_fraction(const Integer& denominator) { return Rational(Integer(1), denominator); }

Rational abs(const Rational& value);

// Exact sum of 1/d over the span, by pairwise (binary-splitting) combination so
// that long sums cost one final reduction instead of one per term.
Rational sum_of_reciprocals(std::span<const Integer> denominators);

// Ceil(x * n) for rational x and integer n.
Integer ceil_mul(const Rational& x, const Integer& n);

// G(theta) = floor(1/theta) + 1: the unique a >= 2 with 1/a < theta <= 1/(a-1).
// Throws DomainError unless 0 < theta <= 1.
Integer greedy_selector(const Rational& theta);

// floor(num / den) for den > 0, num of any sign.
Integer floor_div(const Integer& num, const Integer& den);
bool divides(const Integer& divisor, const Integer& value);

} // namespace unitfrac
