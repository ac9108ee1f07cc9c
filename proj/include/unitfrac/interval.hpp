#pragma once

#include <optional>
#include <string>

#include "unitfrac/rational.hpp"

namespace unitfrac {

// Interval of rationals with independent open/closed endpoints. The upper end
// may be +infinity (always open), which arises for admissible denominator
// ranges when consecutive shadow values differ by at most one.
class RationalInterval {
public:
    // Throws DomainError unless lo < hi, or lo == hi with both ends closed.
    RationalInterval(Rational lo, Rational hi, bool lo_open, bool hi_open);

    static RationalInterval open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }
    static RationalInterval closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, false}; }
    static RationalInterval unbounded_above(Rational lo, bool lo_open);

    const Rational& lo() const { return lo_; }
    // Throws DomainError when unbounded.
    const Rational& hi() const;
    bool lo_open() const { return lo_open_; }
    bool hi_open() const { return hi_open_; }
    bool bounded() const { return hi_.has_value(); }

    bool contains(const Rational& x) const;
    // Subset test, respecting endpoint strictness.
    bool contains(const RationalInterval& other) const;
    Rational width() const;
    Rational midpoint() const;

    // The interval shifted by `offset`.
    RationalInterval translated(const Rational& offset) const;

    // "(7/6, 3/1)", "[2/1, inf)" etc.
    std::string to_string() const;

    friend bool operator==(const RationalInterval&, const RationalInterval&) = default;

private:
    RationalInterval() = default;

    Rational lo_;
    std::optional<Rational> hi_;
    bool lo_open_ = true;
    bool hi_open_ = true;
};

// Number of integers in an interval; may be infinite.
class IntegerCount {
public:
    static IntegerCount finite(Integer n) { return IntegerCount(std::move(n)); }
    static IntegerCount infinite() { return IntegerCount(); }

    bool is_infinite() const { return !value_.has_value(); }
    // Throws DomainError when infinite.
    const Integer& value() const;
    bool is_exactly(long n) const { return value_ && *value_ == n; }

    std::string to_string() const;

    friend bool operator==(const IntegerCount&, const IntegerCount&) = default;

private:
    IntegerCount() = default;
    explicit IntegerCount(Integer n) : value_(std::move(n)) {}

    std::optional<Integer> value_;
};

IntegerCount count_integers_in(const RationalInterval& iv);

// Extreme integers of the interval; nullopt when empty (or, for the largest, unbounded).
std::optional<Integer> smallest_integer_in(const RationalInterval& iv);
std::optional<Integer> largest_integer_in(const RationalInterval& iv);

} // namespace unitfrac
