#include "unitfrac/uniqueness.hpp"

#include "unitfrac/errors.hpp"
#include "unitfrac/greedy.hpp"

namespace unitfrac {

namespace {

void attach_oracle(UniquenessVerdict& v, const RationalInterval& iv) {
    v.oracle_count = count_integers_in(iv);
    v.k_n = largest_integer_in(iv);
    bool several = v.oracle_count.is_infinite() || v.oracle_count.value() >= 2;
    if (several) v.witness = std::make_pair(*smallest_integer_in(iv), v.k_n);
}

} // namespace

std::string to_string(CaseTag tag) {
    switch (tag) {
    case CaseTag::StrictDivisible: return "e8-case-1-divisible";
    case CaseTag::StrictNonDivisible: return "e8-case-2-nondivisible";
    case CaseTag::RelaxedDivisible: return "e18-divisible";
    case CaseTag::RelaxedNonDivisible: return "e18-nondivisible";
    case CaseTag::Unbounded: return "unbounded-interval";
    }
    return {};
}

bool strict_case1_threshold(const Integer& a_n, const Integer& a_next) {
    Integer q = a_next * a_next - (4 * a_n - 1) * a_next + (a_n * a_n + a_n - 2);
    return q >= 0;
}

UniquenessVerdict strict_pair_verdict(const Integer& a_n, const Integer& a_next, std::size_t index) {
    UniquenessVerdict v;
    v.index = index;
    v.a_n = a_n;
    v.a_next = a_next;
    attach_oracle(v, admissible_interval(a_n, a_next));

    const Integer lower_gap = a_next - a_n - 1;
    if (lower_gap <= 0) {
        v.tag = CaseTag::Unbounded;
        v.formula_unique = false;
        return v;
    }
    const Integer a_sq = a_n * a_n;
    if (divides(lower_gap, a_sq)) {
        v.tag = CaseTag::StrictDivisible;
        v.formula_unique = strict_case1_threshold(a_n, a_next);
    } else {
        v.tag = CaseTag::StrictNonDivisible;
        // floor(a^2/(a'-a-1)) <= (a-1)^2/(a'-a+1), cross-multiplied
        Integer fl = floor_div(a_sq, lower_gap);
        v.formula_unique = fl * (a_next - a_n + 1) <= (a_n - 1) * (a_n - 1);
    }
    return v;
}

RationalInterval relaxed_interval(const Integer& a_n, const Integer& a_next) {
    if (a_n < 2 || a_next <= a_n) {
        throw DomainError("relaxed interval needs 2 <= a_n < a_next, got (" + to_string(a_n) + ", " +
                          to_string(a_next) + ")");
    }
    Integer diff = a_next - a_n;
    Rational hi(a_n * a_next, diff);
    Rational lo = hi - Rational(1) - Rational(2 * a_n - 1, diff);
    return RationalInterval::closed(std::move(lo), std::move(hi));
}

bool necessary_pair(const Integer& a_n, const Integer& a_next) {
    const Integer diff = a_next - a_n;
    if (diff < 2) return false;
    if (divides(diff, a_n * a_next)) return false;
    // floor(a^2/diff) < (a-1)^2/diff  <=>  floor(a^2/diff) * diff < (a-1)^2
    return floor_div(a_n * a_n, diff) * diff < (a_n - 1) * (a_n - 1);
}

UniquenessVerdict relaxed_pair_verdict(const Integer& a_n, const Integer& a_next, std::size_t index) {
    UniquenessVerdict v;
    v.index = index;
    v.a_n = a_n;
    v.a_next = a_next;
    attach_oracle(v, relaxed_interval(a_n, a_next));
    v.tag = divides(a_next - a_n, a_n * a_next) ? CaseTag::RelaxedDivisible : CaseTag::RelaxedNonDivisible;
    v.formula_unique = necessary_pair(a_n, a_next);
    return v;
}

namespace {

void check_shadow(std::span<const Integer> a) {
    if (a.empty()) throw InvalidSequence("empty sequence");
    if (a[0] < 2) throw InvalidSequence("sequence needs a_1 >= 2");
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (a[i] < a[i - 1]) throw InvalidSequence("sequence decreases at n = " + std::to_string(i));
    }
}

} // namespace

SequenceVerdict sufficient_for_uniqueness(std::span<const Integer> a) {
    check_shadow(a);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        bool ok = a[i + 1] - 2 >= a[i] && strict_pair_verdict(a[i], a[i + 1], i + 1).formula_unique;
        if (!ok) return {false, i + 1};
    }
    return {};
}

SequenceVerdict necessary_for_uniqueness(std::span<const Integer> a) {
    check_shadow(a);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        if (!necessary_pair(a[i], a[i + 1])) return {false, i + 1};
    }
    return {};
}

NecessaryConsequences necessary_consequences(const Integer& a_n, const Integer& a_next) {
    const Integer diff = a_next - a_n;
    NecessaryConsequences c;
    c.gap_divides_none = !divides(diff, (a_n - 1) * (a_n - 1)) && !divides(diff, a_n * a_n) &&
                         !divides(diff, a_n * a_next);
    c.more_than_triple = 3 * a_n < a_next;
    return c;
}

} // namespace unitfrac
