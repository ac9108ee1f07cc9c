#pragma once

/**
 * @file families.hpp
 * @brief Closed-form shadow/denominator pairs for classical sequences.
 *
 *  geometric{a, r}:   a_n = a r^(n-1)
 *                     b_n = a r^n/(r-1) - 1 if (r-1) | a, else floor(a r^n/(r-1))
 *  arithmetic{a, d}:  a_n = a + (n-1) d
 *                     b_n = a_n a_{n+1}/d - 1 if d | a^2, else floor(a_n a_{n+1}/d)
 *  fibonacci:         a_n = F_{n+1}
 *                     b_1 = 3; b_n = F_{n+3} - 1 for odd n, F_{n+3} for even n
 *  explicit:          given lists
 *
 * Each b_n sits strictly inside the jump interval of (a_n, a_{n+1}). For
 * Fibonacci a_1 = F_2 = 1, so that check starts at n = 2. The parity formula is
 * also where the raw floor(F_{n+1} F_{n+2}/F_n) stops being valid: at n = 2
 * the floor is 6, which sits on the open upper end of the interval (2, 6).
 *
 * OEIS references for the worked instances: A008776/A024023 (geometric 2,3),
 * A004171/A020988 (geometric 2,4), A028387 (arithmetic 2,1), A056220
 * (arithmetic 3,2).
 */

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "unitfrac/construction.hpp"
#include "unitfrac/interval.hpp"
#include "unitfrac/rational.hpp"

namespace unitfrac {

struct Geometric {
    Integer a;
    Integer r;
};

struct Arithmetic {
    Integer a;
    Integer d;
};

struct Fibonacci {};

struct ExplicitPair {
    std::vector<Integer> a;
    std::vector<Integer> b;
};

using SequenceFamily = std::variant<Geometric, Arithmetic, Fibonacci, ExplicitPair>;

// "geometric:a=2,r=3" | "arithmetic:a=3,d=2" | "fibonacci". Validates parameter bounds.
SequenceFamily parse_family(std::string_view spec);
std::string to_string(const SequenceFamily& family);
// Throws DomainError on a < 2, r < 2, d < 1, or explicit lists of unequal length.
void validate(const SequenceFamily& family);

// F_n with F_0 = 0, F_1 = 1.
Integer fibonacci(std::size_t n);

Integer family_a(const SequenceFamily& family, std::size_t n);
Integer family_b(const SequenceFamily& family, std::size_t n);

std::vector<Integer> family_a_prefix(const SequenceFamily& family, std::size_t count);
std::vector<Integer> family_b_prefix(const SequenceFamily& family, std::size_t count);

// First index checked by verify_strict_jump (2 for Fibonacci, else 1).
std::size_t first_checked_index(const SequenceFamily& family);

struct StrictJumpCheck {
    bool holds = true;
    std::optional<std::size_t> first_failure;
};

// 1/a_n - 1/a_{n+1} < 1/b_n < 1/(a_n-1) - 1/(a_{n+1}-1) for every checked n <= max_n.
StrictJumpCheck verify_strict_jump(const SequenceFamily& family, std::size_t max_n);

// F_{n-1} F_{n+1} - F_n^2 = (-1)^n for 1 <= n <= max_n.
bool cassini_check(std::size_t max_n);

// Certified open enclosure of theta = sum_{n>=1} 1/b_n: the exact partial sum
// through `terms` plus the telescoped bracket (1/a_{N+1}, 1/(a_{N+1}-1)) for the tail.
RationalInterval family_theta_enclosure(const SequenceFamily& family, std::size_t terms);

// Limit of a_{n+1}/a_n when known in closed form.
struct RatioLimit {
    std::optional<Rational> exact;  // absent for irrational limits
    bool exceeds_one = false;
    std::string description;
};

std::optional<RatioLimit> declared_ratio_limit(const SequenceFamily& family);

// Shadow sequence of the family as a construction target.
TargetSequence as_target(const SequenceFamily& family);

} // namespace unitfrac
