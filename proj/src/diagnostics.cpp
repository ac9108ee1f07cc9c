#include "unitfrac/diagnostics.hpp"

#include <algorithm>

#include "unitfrac/errors.hpp"

namespace unitfrac {

std::string to_string(Verdict verdict) {
    switch (verdict) {
    case Verdict::ProducibleEvidence: return "producible-evidence";
    case Verdict::NotProducibleEvidence: return "not-producible-evidence";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return {};
}

std::vector<Rational> default_t_grid() {
    return {Rational(1), Rational(3, 2), Rational(2), Rational(3), Rational(5), Rational(10)};
}

ClassificationReport classify(std::span<const Integer> a, std::span<const Integer> b,
                              std::span<const Rational> t_grid, std::optional<RatioLimit> declared_limit) {
    if (a.size() != b.size()) throw DomainError("a and b prefixes differ in length");
    if (a.size() < 2) throw DomainError("classification needs at least two terms");
    if (t_grid.empty()) throw DomainError("empty t grid");
    for (const auto& t : t_grid) {
        if (t < Rational(1)) throw DomainError("grid values must be >= 1");
    }
    for (const auto& v : a) {
        if (v < 2) throw DomainError("shadow values must be >= 2");
    }

    ClassificationReport r;
    const std::size_t n_terms = a.size();
    const std::size_t late_from = n_terms / 2 + 1;  // 1-based start of the late half
    r.prefix_length = n_terms;
    r.declared_limit = std::move(declared_limit);
    for (std::size_t i = 0; i < n_terms; ++i) r.b_over_a.emplace_back(b[i], a[i]);
    for (std::size_t i = 0; i + 1 < n_terms; ++i) r.a_ratios.emplace_back(a[i + 1], a[i]);

    for (const auto& t : t_grid) {
        WitnessCount w{t, 0, 0};
        for (std::size_t i = 0; i < n_terms; ++i) {
            if (r.b_over_a[i] <= t) {
                ++w.total;
                if (i + 1 >= late_from) ++w.late;
            }
        }
        r.witnesses.push_back(std::move(w));
    }

    // A witness b_n/a_n <= t forces a_{n+1}/a_n > 1/(1 - 1/t + 1/(a_n - 1)), which
    // exceeds 1/(1 - 1/(2t)) once a_n > 2t + 1. Use the largest grid t.
    const Rational t_max = *std::max_element(t_grid.begin(), t_grid.end());
    r.late_ratio_threshold = (Rational(1) - (Rational(2) * t_max).reciprocal()).reciprocal();
    r.late_ratio_max = Rational(1);
    for (std::size_t i = late_from - 1; i < r.a_ratios.size(); ++i) {
        r.late_ratio_max = std::max(r.late_ratio_max, r.a_ratios[i]);
    }

    bool late_witness = std::any_of(r.witnesses.begin(), r.witnesses.end(), [](const auto& w) { return w.late > 0; });
    if (r.declared_limit) {
        r.exact = true;
        if (!r.declared_limit->exceeds_one) {
            r.verdict = Verdict::NotProducibleEvidence;
        } else if (late_witness) {
            r.verdict = Verdict::ProducibleEvidence;
        } else {
            r.exact = false;
            r.verdict = Verdict::Inconclusive;
        }
    } else if (late_witness) {
        r.verdict = Verdict::ProducibleEvidence;
    } else if (r.late_ratio_max < r.late_ratio_threshold) {
        r.verdict = Verdict::NotProducibleEvidence;
    } else {
        r.verdict = Verdict::Inconclusive;
    }
    return r;
}

bool RatioBoundsReport::all_hold() const {
    return std::all_of(steps.begin(), steps.end(), [](const auto& s) { return s.lower_holds && s.upper_holds; });
}

RatioBoundsReport check_ratio_bounds(const WeakGreedyRun& run) {
    const auto& policy = run.policy;
    if (policy.selection != BSelection::CeilTA || policy.lambda.kind() != IndexSet::Kind::All) {
        throw PolicyViolation("ratio bounds need b_n = ceil(t a_n) on every index", 1);
    }
    if (!(policy.t > Rational(1))) throw PolicyViolation("ratio bounds need t > 1", 1);
    if (run.size() < 2) throw DomainError("ratio bounds need at least two terms");

    RatioBoundsReport r;
    r.t = policy.t;
    r.limit = policy.t / (policy.t - Rational(1));
    const Rational& t = policy.t;
    for (std::size_t i = 0; i + 1 < run.size(); ++i) {
        const Rational inv_a = unit_fraction(run.a[i]);
        RatioStep s;
        s.n = i + 1;
        s.ratio = Rational(run.a[i + 1], run.a[i]);
        s.lower = (t + inv_a) * (Rational(1) - inv_a) / (t - Rational(1) + Rational(2) * inv_a);
        s.upper = r.limit + inv_a;
        s.lower_holds = s.ratio > s.lower;
        s.upper_holds = s.ratio < s.upper;
        r.steps.push_back(std::move(s));
    }
    r.final_ratio = r.steps.back().ratio;
    r.final_distance = abs(r.final_ratio - r.limit);
    return r;
}

std::optional<std::size_t> check_greedy_growth(std::span<const Integer> b) {
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        Rational ratio(b[i + 1], b[i]);
        if (ratio < Rational(b[i] - 1) + unit_fraction(b[i])) return i + 1;
    }
    return std::nullopt;
}

BoundedShadowReport bounded_shadow(std::span<const Integer> b, const Rational& theta, const Rational& tail_upper) {
    if (tail_upper.sign() < 0) throw DomainError("tail bound must be non-negative");
    BoundedShadowReport r;
    r.gap = theta - sum_of_reciprocals(b) - tail_upper;
    if (r.gap.sign() <= 0) {
        throw DomainError("cannot certify sum 1/b_n < theta: gap bound is " + r.gap.to_string());
    }
    r.bound = greedy_selector(r.gap);
    auto recovery = recover_shadow(b, theta);
    r.recovered_a = std::move(recovery.a);
    r.holds = recovery.consistent() &&
              std::all_of(r.recovered_a.begin(), r.recovered_a.end(), [&](const Integer& v) { return v <= r.bound; });
    return r;
}

} // namespace unitfrac
