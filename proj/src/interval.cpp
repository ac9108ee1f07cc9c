#include "unitfrac/interval.hpp"

#include "unitfrac/errors.hpp"

namespace unitfrac {

RationalInterval::RationalInterval(Rational lo, Rational hi, bool lo_open, bool hi_open)
    : lo_(std::move(lo)), hi_(std::move(hi)), lo_open_(lo_open), hi_open_(hi_open) {
    if (*hi_ < lo_ || (*hi_ == lo_ && (lo_open_ || hi_open_))) {
        throw DomainError("empty or inverted interval: " + to_string());
    }
}

RationalInterval RationalInterval::unbounded_above(Rational lo, bool lo_open) {
    RationalInterval iv;
    iv.lo_ = std::move(lo);
    iv.lo_open_ = lo_open;
    iv.hi_open_ = true;
    return iv;
}

const Rational& RationalInterval::hi() const {
    if (!hi_) throw DomainError("interval is unbounded above");
    return *hi_;
}

bool RationalInterval::contains(const Rational& x) const {
    bool above_lo = lo_open_ ? x > lo_ : x >= lo_;
    if (!above_lo) return false;
    if (!hi_) return true;
    return hi_open_ ? x < *hi_ : x <= *hi_;
}

bool RationalInterval::contains(const RationalInterval& other) const {
    // lower end: other.lo must not undercut ours
    if (other.lo_ < lo_) return false;
    if (other.lo_ == lo_ && lo_open_ && !other.lo_open_) return false;
    if (!hi_) return true;
    if (!other.hi_) return false;
    if (*other.hi_ > *hi_) return false;
    if (*other.hi_ == *hi_ && hi_open_ && !other.hi_open_) return false;
    return true;
}

Rational RationalInterval::width() const { return hi() - lo_; }

Rational RationalInterval::midpoint() const { return (lo_ + hi()) / Rational(2); }

RationalInterval RationalInterval::translated(const Rational& offset) const {
    RationalInterval iv = *this;
    iv.lo_ += offset;
    if (iv.hi_) *iv.hi_ += offset;
    return iv;
}

std::string RationalInterval::to_string() const {
    std::string s = lo_open_ ? "(" : "[";
    s += lo_.to_string();
    s += ", ";
    s += hi_ ? hi_->to_string() : "inf";
    s += hi_open_ ? ")" : "]";
    return s;
}

const Integer& IntegerCount::value() const {
    if (!value_) throw DomainError("infinite integer count has no finite value");
    return *value_;
}

std::string IntegerCount::to_string() const { return value_ ? value_->get_str(10) : "inf"; }

std::optional<Integer> smallest_integer_in(const RationalInterval& iv) {
    Integer k = iv.lo_open() ? iv.lo().floor() + 1 : iv.lo().ceil();
    if (!iv.contains(Rational(k))) return std::nullopt;
    return k;
}

std::optional<Integer> largest_integer_in(const RationalInterval& iv) {
    if (!iv.bounded()) return std::nullopt;
    Integer k = iv.hi_open() ? iv.hi().ceil() - 1 : iv.hi().floor();
    if (!iv.contains(Rational(k))) return std::nullopt;
    return k;
}

IntegerCount count_integers_in(const RationalInterval& iv) {
    if (!iv.bounded()) return IntegerCount::infinite();
    auto lo = smallest_integer_in(iv);
    auto hi = largest_integer_in(iv);
    if (!lo || !hi) return IntegerCount::finite(Integer(0));
    return IntegerCount::finite(*hi - *lo + 1);
}

} // namespace unitfrac
