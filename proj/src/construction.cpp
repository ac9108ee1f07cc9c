#include "unitfrac/construction.hpp"

#include <algorithm>
#include <memory>

#include "unitfrac/errors.hpp"

namespace unitfrac {

namespace {

// Reads a_1, a_2, ... until `jumps` jump indices and the value after the last
// one are known. Validates a_1 >= 2 and monotonicity along the way.
struct Scan {
    std::vector<Integer> values;        // values[n-1] = a_n
    std::vector<std::size_t> jump_idx;  // n_1 < n_2 < ...
};

Scan scan_jumps(const TargetSequence& seq, std::size_t jumps, std::size_t horizon) {
    Scan s;
    s.values.push_back(seq.at(1));
    if (s.values[0] < 2) throw InvalidSequence("target sequence needs a_1 >= 2, got " + to_string(s.values[0]));
    for (std::size_t n = 1; s.jump_idx.size() < jumps; ++n) {
        if (n >= horizon) {
            throw InvalidSequence("only " + std::to_string(s.jump_idx.size()) + " jumps within the first " +
                                  std::to_string(horizon) + " terms; the sequence looks bounded");
        }
        Integer next = seq.at(n + 1);
        if (next < s.values.back()) {
            throw InvalidSequence("target sequence decreases at n = " + std::to_string(n));
        }
        if (next > s.values.back()) {
            s.jump_idx.push_back(n);
        } else if (seq.strictly_increasing()) {
            throw InvalidSequence("sequence declared strictly increasing has a plateau at n = " + std::to_string(n));
        }
        s.values.push_back(std::move(next));
    }
    return s;
}

Rational power_of_two(std::size_t k) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
    return Rational(p);
}

} // namespace

TargetSequence TargetSequence::repeat_last_delta(std::vector<Integer> prefix) {
    if (prefix.size() < 2) throw InvalidSequence("a continued prefix needs at least two values");
    Integer delta = prefix.back() - prefix[prefix.size() - 2];
    if (delta < 0) throw InvalidSequence("prefix decreases at its end");
    bool strict = delta > 0;
    for (std::size_t i = 1; i < prefix.size() && strict; ++i) strict = prefix[i] > prefix[i - 1];
    auto values = std::make_shared<const std::vector<Integer>>(std::move(prefix));
    Generator gen = [values, delta](std::size_t n) -> Integer {
        if (n == 0) throw DomainError("sequence indices are 1-based");
        if (n <= values->size()) return (*values)[n - 1];
        return values->back() + delta * Integer(static_cast<unsigned long>(n - values->size()));
    };
    return TargetSequence(std::move(gen), strict, "prefix+repeat-last-delta");
}

TargetSequence TargetSequence::from_generator(Generator gen, bool strictly_increasing, std::string label) {
    return TargetSequence(std::move(gen), strictly_increasing, std::move(label));
}

Integer TargetSequence::at(std::size_t n) const {
    if (n == 0) throw DomainError("sequence indices are 1-based");
    return gen_(n);
}

std::vector<std::size_t> jump_set(const TargetSequence& seq, std::size_t depth) {
    if (depth == 0) throw DomainError("depth must be at least 1");
    Integer prev = seq.at(1);
    if (prev < 2) throw InvalidSequence("target sequence needs a_1 >= 2, got " + to_string(prev));
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n <= depth; ++n) {
        Integer next = seq.at(n + 1);
        if (next < prev) throw InvalidSequence("target sequence decreases at n = " + std::to_string(n));
        if (next > prev) out.push_back(n);
        prev = std::move(next);
    }
    if (out.empty()) {
        throw InvalidSequence("no jump within the first " + std::to_string(depth) + " indices");
    }
    return out;
}

RationalInterval jump_interval(const Integer& a_j, const Integer& a_j_next) {
    if (a_j < 2 || a_j_next <= a_j) {
        throw DomainError("jump interval needs 2 <= a_j < a_j_next, got (" + to_string(a_j) + ", " +
                          to_string(a_j_next) + ")");
    }
    Integer diff = a_j_next - a_j;
    Rational hi(a_j * a_j_next, diff);
    Rational lo = hi - Rational(1) - Rational(2 * a_j - 1, diff);
    return RationalInterval::open(std::move(lo), std::move(hi));
}

Integer choose_jump_denominator(const RationalInterval& iv) {
    auto k = largest_integer_in(iv);
    if (!k) throw DomainError("no integer inside " + iv.to_string());
    return *k;
}

RationalInterval jump_tail_enclosure(std::span<const Integer> b_jumps, const Integer& a_after) {
    if (a_after < 2) throw DomainError("tail enclosure needs a >= 2");
    Rational head = sum_of_reciprocals(b_jumps);
    return RationalInterval::open(head + unit_fraction(a_after), head + unit_fraction(a_after - 1));
}

Rational choose_headroom(const RationalInterval& tail_enclosure, const Integer& a_j) {
    const Rational lower_target = unit_fraction(a_j);
    const Rational upper_target = unit_fraction(a_j - 1);
    bool lower_ok = tail_enclosure.lo_open() ? tail_enclosure.lo() >= lower_target
                                             : tail_enclosure.lo() > lower_target;
    if (!lower_ok || !tail_enclosure.bounded() || !(tail_enclosure.hi() < upper_target)) {
        throw DepthExhausted("enclosure " + tail_enclosure.to_string() + " does not certify a tail inside (1/" +
                             to_string(a_j) + ", 1/" + to_string(a_j - 1) + ")");
    }
    return (upper_target - tail_enclosure.hi()) / Rational(2);
}

Rational filler_budget(std::span<const Rational> thetas) {
    if (thetas.empty()) throw DomainError("filler budget needs at least one headroom");
    const std::size_t j = thetas.size();
    Rational best = thetas[0] / power_of_two(j);
    for (std::size_t i = 1; i < j; ++i) {
        best = std::min(best, thetas[i] / power_of_two(j - i));
    }
    return best;
}

std::optional<Integer> choose_filler(std::size_t gap, const Rational& budget) {
    if (gap == 0) return std::nullopt;
    if (budget.sign() <= 0) throw DomainError("filler budget must be positive");
    // gap / N < budget  <=>  N > gap / budget
    return (Rational(Integer(static_cast<unsigned long>(gap))) / budget).floor() + 1;
}

std::vector<std::size_t> ConstructionResult::jump_indices() const {
    std::vector<std::size_t> out;
    out.reserve(jumps.size());
    for (const auto& j : jumps) out.push_back(j.index);
    return out;
}

std::vector<Integer> ConstructionResult::filler_values() const {
    std::vector<Integer> out;
    for (const auto& j : jumps) {
        if (j.filler) out.push_back(*j.filler);
    }
    return out;
}

RationalInterval ConstructionResult::tail_enclosure(std::size_t n) const {
    if (n == 0 || n > b_prefix.size()) throw DomainError("tail index out of range");
    return theta_enclosure.translated(-sum_of_reciprocals(std::span(b_prefix).first(n - 1)));
}

bool ConstructionResult::all_certified() const { return step3_certified && !first_uncertified(); }

std::optional<std::size_t> ConstructionResult::first_uncertified() const {
    auto it = std::find(step4_certified.begin(), step4_certified.end(), false);
    if (it == step4_certified.end()) return std::nullopt;
    return static_cast<std::size_t>(it - step4_certified.begin()) + 1;
}

ConstructionResult construct(const TargetSequence& seq, std::size_t depth, std::size_t horizon) {
    if (depth < 2) throw DomainError("construction needs a depth of at least two jumps");
    Scan scan = scan_jumps(seq, depth, horizon);
    const auto& a = scan.values;
    auto a_at = [&](std::size_t n) -> const Integer& { return a[n - 1]; };

    std::vector<JumpRecord> jumps;
    std::vector<Integer> b_jumps;
    std::size_t prev_index = 0;
    for (auto n_j : scan.jump_idx) {
        Integer b = choose_jump_denominator(jump_interval(a_at(n_j), a_at(n_j + 1)));
        b_jumps.push_back(b);
        jumps.push_back({n_j, a_at(n_j), a_at(n_j + 1), std::move(b), n_j - prev_index - 1, std::nullopt});
        prev_index = n_j;
    }

    std::vector<Rational> headrooms;
    if (!seq.strictly_increasing()) {
        for (std::size_t j = 0; j < depth; ++j) {
            // Shallowest certifying depth, so a headroom never depends on later jumps.
            std::optional<Rational> theta_j;
            for (std::size_t last = j; last <= depth && !theta_j; ++last) {
                const Integer& a_after = last == j ? jumps[j].a : jumps[last - 1].a_next;
                auto enclosure = jump_tail_enclosure(std::span(b_jumps).subspan(j, last - j), a_after);
                try {
                    theta_j = choose_headroom(enclosure, jumps[j].a);
                } catch (const DepthExhausted&) {
                    if (last == depth) throw;
                }
            }
            headrooms.push_back(std::move(*theta_j));
            jumps[j].filler = choose_filler(jumps[j].gap, filler_budget(std::span(headrooms)));
        }
    }

    std::vector<Integer> b_prefix;
    b_prefix.reserve(jumps.back().index);
    for (const auto& jump : jumps) {
        for (std::size_t k = 0; k < jump.gap; ++k) b_prefix.push_back(*jump.filler);
        b_prefix.push_back(jump.b);
    }
    std::vector<Integer> a_prefix(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(b_prefix.size()));

    // Beyond the prefix: the remaining jump sub-series telescopes to
    // (1/A, 1/(A-1)) with A = a_{n_D + 1}; later fillers add [0, budget_D).
    const Integer& after = jumps.back().a_next;
    Rational prefix_sum = sum_of_reciprocals(b_prefix);
    Rational filler_slack = headrooms.empty() ? Rational() : filler_budget(std::span(headrooms));
    auto enclosure = RationalInterval::open(prefix_sum + unit_fraction(after),
                                            prefix_sum + unit_fraction(after - 1) + filler_slack);

    ConstructionResult result{std::move(a_prefix), std::move(b_prefix), std::move(jumps), std::move(headrooms),
                              std::move(enclosure), depth, false, {}};

    result.step3_certified = result.theta_enclosure.lo().sign() >= 0 &&
                             result.theta_enclosure.hi() < unit_fraction(result.jumps.front().a - 1) &&
                             result.theta_enclosure.hi() <= Rational(1);

    result.step4_certified.reserve(result.b_prefix.size());
    Rational consumed;
    for (std::size_t i = 0; i < result.b_prefix.size(); ++i) {
        auto tail = result.theta_enclosure.translated(-consumed);
        const Integer& a_n = result.a_prefix[i];
        result.step4_certified.push_back(tail.lo() >= unit_fraction(a_n) && tail.hi() <= unit_fraction(a_n - 1));
        consumed += unit_fraction(result.b_prefix[i]);
    }
    return result;
}

} // namespace unitfrac
