#pragma once

/**
 * @file greedy.hpp
 * @brief Greedy and weak greedy unit-fraction underapproximation.
 *
 * A run of the weak greedy algorithm keeps two sequences. The shadow a_n is
 * the greedy choice for the current residual,
 *
 *     a_n = G(theta - sum_{i<n} 1/b_i),
 *
 * and b_n >= a_n is the denominator actually used. On indices in the policy's
 * index set the choice is capped by ceil(t * a_n). With t = 1, every index in
 * the set and b_n = a_n this is the plain greedy expansion.
 */

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unitfrac/interval.hpp"
#include "unitfrac/rational.hpp"

namespace unitfrac {

inline constexpr std::size_t kDefaultTermCap = 10000;

// Set of 1-based indices on which the ceil(t * a_n) cap applies.
class IndexSet {
public:
    enum class Kind { All, Finite, Cofinite, Periodic };

    static IndexSet all() { return IndexSet(Kind::All, {}, 0); }
    static IndexSet finite(std::set<std::size_t> members) { return IndexSet(Kind::Finite, std::move(members), 0); }
    static IndexSet all_except(std::set<std::size_t> excluded) {
        return IndexSet(Kind::Cofinite, std::move(excluded), 0);
    }
    // n belongs iff n mod period is one of the residues.
    static IndexSet periodic(std::size_t period, std::set<std::size_t> residues);

    // "all" | "set:1,2,5" | "not:3,4" | "periodic:3:0,1"
    static IndexSet parse(std::string_view text);
    std::string to_string() const;

    bool contains(std::size_t n) const;
    Kind kind() const { return kind_; }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    IndexSet(Kind kind, std::set<std::size_t> values, std::size_t period)
        : kind_(kind), values_(std::move(values)), period_(period) {}

    Kind kind_;
    std::set<std::size_t> values_;
    std::size_t period_;
};

enum class BSelection {
    Greedy,        // b_n = a_n
    CeilTA,        // b_n = ceil(t * a_n)
    MinAdmissible, // smallest non-greedy denominator a_n + 1 the cap allows, else a_n
    Explicit,      // replay a given list
};

std::string to_string(BSelection selection);
BSelection parse_bselection(std::string_view text);

struct WgaaPolicy {
    Rational t{1};
    IndexSet lambda = IndexSet::all();
    BSelection selection = BSelection::Greedy;
    std::vector<Integer> explicit_b;
    // Choose the final term of a finite run greedily (b_N = a_N).
    bool last_greedy = false;

    static WgaaPolicy greedy() { return {}; }
    // Every index capped, b_n = ceil(t * a_n).
    static WgaaPolicy ceil_t(Rational t, bool last_greedy = false);
    static WgaaPolicy replay(std::vector<Integer> b, Rational t = Rational(1), IndexSet lambda = IndexSet::finite({}));

    // Throws DomainError when t < 1.
    void validate() const;
    // Cap on b_n for index n, or nullopt off the index set.
    std::optional<Integer> cap(std::size_t n, const Integer& a_n) const;
};

struct WeakGreedyRun {
    Rational theta;
    std::vector<Integer> a;
    std::vector<Integer> b;
    // residuals[n-1] = theta - sum_{i<=n} 1/b_i
    std::vector<Rational> residuals;
    WgaaPolicy policy;

    std::size_t size() const { return a.size(); }
    Rational partial_sum() const;
};

// Greedy expansion: b = a, a_{n+1} = G(theta - sum 1/a_i).
WeakGreedyRun greedy_expand(const Rational& theta, std::size_t n_terms, std::size_t term_cap = kDefaultTermCap);

// Throws PolicyViolation when an explicit list breaks b_n >= a_n or the cap.
WeakGreedyRun wgaa_expand(const Rational& theta, const WgaaPolicy& policy, std::size_t n_terms,
                          std::size_t term_cap = kDefaultTermCap);

struct ShadowRecovery {
    // a_n for every index reached; includes the violating index when there is one.
    std::vector<Integer> a;
    // First 1-based n with b_n < a_n. From that point the partial sum is >= theta,
    // so the list cannot be a weak greedy approximation of theta.
    std::optional<std::size_t> first_violation;

    bool consistent() const { return !first_violation.has_value(); }
};

// a_n = G(theta - sum_{i<n} 1/b_i), checking b_n >= a_n lazily at every step.
ShadowRecovery recover_shadow(std::span<const Integer> b, const Rational& theta);

// Open interval of denominators b_n compatible with consecutive shadow values:
//     1/a_n - 1/(a_next - 1) < 1/b_n < 1/(a_n - 1) - 1/a_next.
// Unbounded above when a_next - a_n <= 1.
RationalInterval admissible_interval(const Integer& a_n, const Integer& a_next);

// First violated run invariant, as a message naming the index; nullopt when the run is sound.
std::optional<std::string> find_run_violation(const WeakGreedyRun& run);

} // namespace unitfrac
