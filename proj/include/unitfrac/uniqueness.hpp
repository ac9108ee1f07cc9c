#pragma once

/**
 * @file uniqueness.hpp
 * @brief When does a shadow sequence (a_n) pin down theta and (b_n)?
 *
 * Two per-pair tests, each evaluated twice: once by closed-form integer
 * predicates and once by counting the integers in the corresponding interval.
 *
 *  - strict test: the open admissible interval of (a_n, a_{n+1}) holds exactly
 *    one integer. Holding for every pair is sufficient for uniqueness.
 *  - relaxed test: the closed jump interval
 *        [a a'/(a'-a) - 1 - (2a-1)/(a'-a), a a'/(a'-a)]
 *    holds exactly one integer. Holding for every pair is necessary.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "unitfrac/interval.hpp"
#include "unitfrac/rational.hpp"

namespace unitfrac {

enum class CaseTag {
    StrictDivisible,      // (a'-a-1) | a^2: upper end of the open interval is an integer
    StrictNonDivisible,
    RelaxedDivisible,     // (a'-a) | a a'
    RelaxedNonDivisible,
    Unbounded,            // a' - a <= 1: open interval has no upper end
};

// "e8-case-1-divisible", "e8-case-2-nondivisible", "e18-divisible",
// "e18-nondivisible", "unbounded-interval"
std::string to_string(CaseTag tag);

struct UniquenessVerdict {
    std::size_t index = 1;
    Integer a_n;
    Integer a_next;
    CaseTag tag = CaseTag::Unbounded;
    bool formula_unique = false;
    IntegerCount oracle_count = IntegerCount::infinite();
    // Largest integer in the interval, when the interval is bounded.
    std::optional<Integer> k_n;
    // Smallest and largest admissible b_n when there are two or more; the
    // largest is absent for an unbounded interval.
    std::optional<std::pair<Integer, std::optional<Integer>>> witness;

    bool agrees() const { return formula_unique == oracle_count.is_exactly(1); }
};

// Quadratic form of the divisible-case threshold:
//     a'^2 - (4a - 1) a' + (a^2 + a - 2) >= 0
bool strict_case1_threshold(const Integer& a_n, const Integer& a_next);

// Strict (open interval) test. Needs 2 <= a_n <= a_next.
UniquenessVerdict strict_pair_verdict(const Integer& a_n, const Integer& a_next, std::size_t index = 1);
// Relaxed (closed interval) test. Needs 2 <= a_n < a_next.
UniquenessVerdict relaxed_pair_verdict(const Integer& a_n, const Integer& a_next, std::size_t index = 1);

RationalInterval relaxed_interval(const Integer& a_n, const Integer& a_next);

struct SequenceVerdict {
    bool holds = true;
    std::optional<std::size_t> first_failure;  // 1-based pair index n of (a_n, a_{n+1})
};

// Sufficient condition: a_{n+1} - 2 >= a_n >= 2 and the strict test for every pair.
SequenceVerdict sufficient_for_uniqueness(std::span<const Integer> a);
// Necessary condition: a_{n+1} >= a_n + 2, (a_{n+1}-a_n) does not divide a_n a_{n+1},
// and floor(a_n^2/(a_{n+1}-a_n)) < (a_n-1)^2/(a_{n+1}-a_n), for every pair.
SequenceVerdict necessary_for_uniqueness(std::span<const Integer> a);

// Pair form of the necessary condition.
bool necessary_pair(const Integer& a_n, const Integer& a_next);

struct NecessaryConsequences {
    bool gap_divides_none = false;  // (a'-a) divides none of (a-1)^2, a^2, a a'
    bool more_than_triple = false;  // 3a < a'
    bool all() const { return gap_divides_none && more_than_triple; }
};

// Consequences that hold for every pair passing necessary_pair.
NecessaryConsequences necessary_consequences(const Integer& a_n, const Integer& a_next);

} // namespace unitfrac
