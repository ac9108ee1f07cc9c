#pragma once

// Shared generators and oracles for the test binaries.

#include <random>
#include <vector>

#include <gmpxx.h>

#include "unitfrac/construction.hpp"

namespace unitfrac::testing {

// Non-decreasing prefix with a_1 in [2,10], plateaus of up to three extra
// copies and jumps of 1..6, ending on a jump so repeat-last-delta keeps growing.
inline std::vector<Integer> random_target_prefix(std::mt19937_64& rng, std::size_t jumps) {
    std::uniform_int_distribution<long> first(2, 10), plateau(0, 3), step(1, 6);
    std::vector<Integer> a{Integer(first(rng))};
    for (std::size_t j = 0; j < jumps; ++j) {
        for (long k = plateau(rng); k > 0; --k) a.push_back(a.back());
        a.push_back(a.back() + step(rng));
    }
    return a;
}

inline TargetSequence random_target(std::mt19937_64& rng, std::size_t jumps) {
    return TargetSequence::repeat_last_delta(random_target_prefix(rng, jumps));
}

// Smallest a >= 2 with 1/a < x, by stepping from floor(1/x).
inline mpz_class oracle_g(const mpq_class& x) {
    mpz_class a = 2;
    mpz_class start = x.get_den() / x.get_num();
    if (start > 2) a = start - 1;
    while (mpq_class(1, a) >= x) ++a;
    return a;
}

// a_n = G(theta - sum_{i<n} 1/b_i) in raw mpq arithmetic; stops when the residual is spent.
inline std::vector<mpz_class> oracle_shadow(const std::vector<mpz_class>& b, mpq_class theta) {
    std::vector<mpz_class> a;
    for (const auto& bn : b) {
        if (sgn(theta) <= 0) break;
        a.push_back(oracle_g(theta));
        theta -= mpq_class(1, bn);
    }
    return a;
}

inline mpq_class to_mpq(const Rational& r) { return mpq_class(r.numerator(), r.denominator()); }

} // namespace unitfrac::testing
