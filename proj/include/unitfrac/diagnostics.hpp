#pragma once

/**
 * @file diagnostics.hpp
 * @brief Finite-prefix evidence for the asymptotic behaviour of weak greedy pairs.
 *
 * Limits and "infinitely often" statements cannot be decided from a prefix.
 * Reports therefore carry evidence verdicts, and only a closed-form ratio
 * limit declared by a known family makes a verdict exact.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unitfrac/families.hpp"
#include "unitfrac/greedy.hpp"
#include "unitfrac/rational.hpp"

namespace unitfrac {

enum class Verdict { ProducibleEvidence, NotProducibleEvidence, Inconclusive };

std::string to_string(Verdict verdict);

// {1, 3/2, 2, 3, 5, 10}
std::vector<Rational> default_t_grid();

struct WitnessCount {
    Rational t;
    std::size_t total = 0;  // #{n <= N : b_n/a_n <= t}
    std::size_t late = 0;   // same, restricted to the second half of the prefix
};

struct ClassificationReport {
    std::size_t prefix_length = 0;
    std::vector<Rational> a_ratios;  // a_{n+1}/a_n, n = 1..N-1
    std::vector<Rational> b_over_a;  // b_n/a_n
    std::vector<WitnessCount> witnesses;
    // No witness in the late half can coexist with a late ratio above this.
    Rational late_ratio_threshold;
    Rational late_ratio_max;
    Verdict verdict = Verdict::Inconclusive;
    bool exact = false;
    std::optional<RatioLimit> declared_limit;
};

// Compares bounded b_n/a_n against the growth of a_{n+1}/a_n on a prefix.
// Throws DomainError on unequal lengths or fewer than two terms.
ClassificationReport classify(std::span<const Integer> a, std::span<const Integer> b,
                              std::span<const Rational> t_grid,
                              std::optional<RatioLimit> declared_limit = std::nullopt);

struct RatioStep {
    std::size_t n = 0;
    Rational ratio;  // a_{n+1}/a_n
    Rational lower;  // (t + 1/a_n)(1 - 1/a_n) / (t - 1 + 2/a_n)
    Rational upper;  // t/(t-1) + 1/a_n
    bool lower_holds = false;
    bool upper_holds = false;
};

struct RatioBoundsReport {
    Rational t;
    Rational limit;  // t/(t-1)
    std::vector<RatioStep> steps;
    Rational final_ratio;
    Rational final_distance;  // |final_ratio - limit|
    bool all_hold() const;
};

// Per-step bracket of a_{n+1}/a_n for a run with b_n = ceil(t a_n) on every
// index and t > 1. Throws PolicyViolation for any other policy.
RatioBoundsReport check_ratio_bounds(const WeakGreedyRun& run);

// Greedy runs: b_{n+1}/b_n >= b_n - 1 + 1/b_n. Returns the first failing n.
std::optional<std::size_t> check_greedy_growth(std::span<const Integer> b);

struct BoundedShadowReport {
    Rational gap;         // certified lower bound on theta - sum 1/b_n
    Integer bound;        // G(gap)
    std::vector<Integer> recovered_a;
    bool holds = false;   // every recovered a_n <= bound
};

// When a (possibly infinite) list sums strictly below theta, every shadow value
// stays below G(theta - sum). `tail_upper` bounds the sum beyond the given prefix.
// Throws DomainError when the gap cannot be certified positive.
BoundedShadowReport bounded_shadow(std::span<const Integer> b, const Rational& theta, const Rational& tail_upper);

} // namespace unitfrac
