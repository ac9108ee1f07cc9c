#pragma once

/**
 * @file construction.hpp
 * @brief Building theta and (b_n) from a prescribed shadow sequence (a_n).
 *
 * Given non-decreasing a_n with a_1 >= 2 and a_n -> infinity, the construction
 * works on the jump indices n_1 < n_2 < ... (those n with a_{n+1} > a_n):
 *
 *   1. each jump index gets a denominator strictly inside the jump interval
 *      of (a_{n_j}, a_{n_{j+1}}), so the jump sub-series telescopes between
 *      1/a_{n_j} and 1/(a_{n_j} - 1);
 *   2. the plateau positions before n_j all get one large filler value N_j,
 *      sized against a headroom theta_j left by the jump sub-series;
 *   3-4. theta is the full sum, and every tail sum_{i>=n} 1/b_i lands in
 *      (1/a_n, 1/(a_n - 1)], which is exactly a_n = G(theta - sum_{i<n} 1/b_i).
 *
 * theta is an infinite sum, so it is reported as a certified open enclosure
 * and every certificate is an exact comparison against enclosure endpoints.
 * All choices are canonical (largest admissible denominator, half the headroom,
 * smallest filler) and a jump's choices depend only on data up to that jump,
 * so deepening a construction extends it without changing its prefix.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unitfrac/interval.hpp"
#include "unitfrac/rational.hpp"

namespace unitfrac {

class TargetSequence {
public:
    // 1-based generator.
    using Generator = std::function<Integer(std::size_t)>;

    // Explicit prefix continued by repeating its last difference forever.
    // Needs at least two values when the last difference is to be inferred.
    static TargetSequence repeat_last_delta(std::vector<Integer> prefix);
    static TargetSequence from_generator(Generator gen, bool strictly_increasing, std::string label);

    Integer at(std::size_t n) const;
    // True when the source guarantees a_{n+1} > a_n everywhere (no plateaus, so
    // no filler terms and no headroom to reserve).
    bool strictly_increasing() const { return strictly_increasing_; }
    const std::string& label() const { return label_; }

private:
    TargetSequence(Generator gen, bool strictly_increasing, std::string label)
        : gen_(std::move(gen)), strictly_increasing_(strictly_increasing), label_(std::move(label)) {}

    Generator gen_;
    bool strictly_increasing_;
    std::string label_;
};

// Indices n <= depth with a_{n+1} > a_n. Throws InvalidSequence when there is
// none, or when the sequence is not a valid target (a_1 < 2, a decrease).
std::vector<std::size_t> jump_set(const TargetSequence& seq, std::size_t depth);

// Open interval for b at a jump from a_j to a_j_next > a_j:
//     a a'/(a'-a) - 1 - (2a-1)/(a'-a) < b < a a'/(a'-a),
// equivalently 1/a - 1/a' < 1/b < 1/(a-1) - 1/(a'-1). Its length exceeds 1.
RationalInterval jump_interval(const Integer& a_j, const Integer& a_j_next);

// Largest integer strictly inside an open interval of length > 1.
Integer choose_jump_denominator(const RationalInterval& iv);

// Enclosure of sum_{i>=j} 1/b_{n_i}, given the constructed b_{n_j}..b_{n_D} and
// a_{n_{D+1}}; the rest of the sub-series telescopes to (1/a, 1/(a-1)).
RationalInterval jump_tail_enclosure(std::span<const Integer> b_jumps, const Integer& a_after);

// Half the certified headroom below 1/(a_j - 1). Throws DepthExhausted when the
// enclosure does not certify 1/a_j <= lower and upper < 1/(a_j - 1).
Rational choose_headroom(const RationalInterval& tail_enclosure, const Integer& a_j);

// Filler budget for jump j (1-based, j = thetas.size()):
//     min { theta_1 / 2^j, theta_2 / 2^(j-1), ..., theta_j / 2 }.
Rational filler_budget(std::span<const Rational> thetas);
// Smallest N with gap / N < budget; nullopt when gap == 0.
std::optional<Integer> choose_filler(std::size_t gap, const Rational& budget);

struct JumpRecord {
    std::size_t index;   // n_j
    Integer a;           // a_{n_j}
    Integer a_next;      // a_{n_j + 1}
    Integer b;           // b_{n_j}
    std::size_t gap;     // n_j - n_{j-1} - 1 filler positions before n_j
    std::optional<Integer> filler; // N_j when gap > 0
};

struct ConstructionResult {
    std::vector<Integer> a_prefix;  // a_1 .. a_{n_D}
    std::vector<Integer> b_prefix;  // b_1 .. b_{n_D}
    std::vector<JumpRecord> jumps;  // j = 1 .. D
    // Headroom per jump; empty for strictly increasing targets.
    std::vector<Rational> headrooms;
    RationalInterval theta_enclosure;
    std::size_t verification_depth = 0;

    // upper(theta) < 1/(a_{n_1} - 1) <= 1, and lower(theta) > 0.
    bool step3_certified = false;
    // Per prefix index n: 1/a_n < tail_n <= 1/(a_n - 1) certified from enclosures.
    std::vector<bool> step4_certified;

    std::vector<std::size_t> jump_indices() const;
    std::vector<Integer> filler_values() const;
    // Enclosure of sum_{i>=n} 1/b_i, 1 <= n <= prefix length.
    RationalInterval tail_enclosure(std::size_t n) const;
    bool all_certified() const;
    std::optional<std::size_t> first_uncertified() const;
};

// Runs the construction through `depth` jumps (depth >= 2).
ConstructionResult construct(const TargetSequence& seq, std::size_t depth,
                             std::size_t horizon = 100 * 10000);

} // namespace unitfrac
