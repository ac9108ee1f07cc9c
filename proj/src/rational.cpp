#include "unitfrac/rational.hpp"

#include <cmath>
#include <ostream>
#include <vector>

#include "unitfrac/errors.hpp"

namespace unitfrac {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

// Product and numerator of sum_{i in [lo,hi)} 1/d_i, i.e. sum = num / prod.
struct Split {
    Integer num;
    Integer prod;
};

Split split_sum(std::span<const Integer> d) {
    if (d.size() == 1) return {Integer(1), d[0]};
    auto mid = d.size() / 2;
    Split left = split_sum(d.first(mid));
    Split right = split_sum(d.subspan(mid));
    return {left.num * right.prod + right.num * left.prod, left.prod * right.prod};
}

} // namespace

Integer parse_integer(std::string_view text) {
    std::string_view digits = text;
    if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
    if (!all_digits(digits)) {
        throw ParseError("not a decimal integer: '" + std::string(text) + "'");
    }
    return Integer(std::string(text), 10);
}

std::string to_string(const Integer& value) { return value.get_str(10); }

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    auto den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
        throw ParseError("denominator must be a positive decimal integer: '" + std::string(text) + "'");
    }
    Integer den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) throw DomainError("non-finite double has no rational value");
    Rational r;
    r.value_ = mpq_class(value);
    return r;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw DomainError("reciprocal of zero");
    return Rational(denominator(), numerator());
}

Integer Rational::floor() const { return floor_div(numerator(), denominator()); }

Integer Rational::ceil() const { return -floor_div(-numerator(), denominator()); }

std::string Rational::to_string() const {
    return numerator().get_str(10) + "/" + denominator().get_str(10);
}

std::string Rational::to_decimal(int digits) const {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // round half away from zero
    Integer scaled_abs = floor_div(2 * abs(numerator()) * scale + denominator(), 2 * denominator());
    std::string body = scaled_abs.get_str(10);
    if (static_cast<int>(body.size()) <= digits) {
        body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    std::string out;
    if (sign() < 0 && scaled_abs != 0) out.push_back('-');
    out += body.substr(0, body.size() - static_cast<std::size_t>(digits));
    if (digits > 0) {
        out.push_back('.');
        out += body.substr(body.size() - static_cast<std::size_t>(digits));
    }
    return out;
}

Rational Rational::operator-() const {
    Rational r;
    r.value_ = -value_;
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw DomainError("division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }

Rational sum_of_reciprocals(std::span<const Integer> denominators) {
    if (denominators.empty()) return Rational();
    for (const auto& d : denominators) {
        if (d == 0) throw DomainError("reciprocal of zero");
    }
    Split s = split_sum(denominators);
    return Rational(s.num, s.prod);
}

Integer ceil_mul(const Rational& x, const Integer& n) { return (x * Rational(n)).ceil(); }

Integer greedy_selector(const Rational& theta) {
    if (theta.sign() <= 0 || theta > Rational(1)) {
        throw DomainError("greedy selector needs 0 < theta <= 1, got " + theta.to_string());
    }
    // floor(q/p) + 1; when theta = 1/(a-1) exactly the floor is a-1 and the result is a.
    return floor_div(theta.denominator(), theta.numerator()) + 1;
}

Integer floor_div(const Integer& num, const Integer& den) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

bool divides(const Integer& divisor, const Integer& value) {
    if (divisor == 0) return value == 0;
    return mpz_divisible_p(value.get_mpz_t(), divisor.get_mpz_t()) != 0;
}

} // namespace unitfrac
