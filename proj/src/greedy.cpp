#include "unitfrac/greedy.hpp"

#include <charconv>

#include "unitfrac/errors.hpp"

namespace unitfrac {

namespace {

std::size_t parse_index(std::string_view text) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("bad index '" + std::string(text) + "'");
    }
    return value;
}

// Indices are 1-based; residues of a periodic set may be 0.
std::set<std::size_t> parse_index_list(std::string_view text, bool allow_zero) {
    std::set<std::size_t> out;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto v = parse_index(text.substr(0, comma));
        if (v == 0 && !allow_zero) throw ParseError("indices are 1-based, got 0");
        out.insert(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::string join(const std::set<std::size_t>& values) {
    std::string s;
    for (auto v : values) {
        if (!s.empty()) s += ',';
        s += std::to_string(v);
    }
    return s;
}

void check_theta(const Rational& theta) {
    if (theta.sign() <= 0 || theta > Rational(1)) {
        throw DomainError("theta must lie in (0,1], got " + theta.to_string());
    }
}

void check_terms(std::size_t n_terms, std::size_t term_cap) {
    if (n_terms == 0) throw DomainError("at least one term is required");
    if (n_terms > term_cap) {
        throw DomainError("requested " + std::to_string(n_terms) + " terms exceeds the cap of " +
                          std::to_string(term_cap));
    }
}

} // namespace

IndexSet IndexSet::periodic(std::size_t period, std::set<std::size_t> residues) {
    if (period == 0) throw DomainError("period must be positive");
    for (auto r : residues) {
        if (r >= period) throw DomainError("residue " + std::to_string(r) + " not below period");
    }
    return IndexSet(Kind::Periodic, std::move(residues), period);
}

IndexSet IndexSet::parse(std::string_view text) {
    if (text == "all") return all();
    if (text.starts_with("set:")) return finite(parse_index_list(text.substr(4), false));
    if (text.starts_with("not:")) return all_except(parse_index_list(text.substr(4), false));
    if (text.starts_with("periodic:")) {
        auto rest = text.substr(9);
        auto colon = rest.find(':');
        if (colon == std::string_view::npos) throw ParseError("periodic index set needs 'periodic:P:R,...'");
        try {
            return periodic(parse_index(rest.substr(0, colon)), parse_index_list(rest.substr(colon + 1), true));
        } catch (const DomainError& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("unknown index set '" + std::string(text) + "'");
}

std::string IndexSet::to_string() const {
    switch (kind_) {
    case Kind::All: return "all";
    case Kind::Finite: return "set:" + join(values_);
    case Kind::Cofinite: return "not:" + join(values_);
    case Kind::Periodic: return "periodic:" + std::to_string(period_) + ":" + join(values_);
    }
    return {};
}

bool IndexSet::contains(std::size_t n) const {
    switch (kind_) {
    case Kind::All: return true;
    case Kind::Finite: return values_.count(n) != 0;
    case Kind::Cofinite: return values_.count(n) == 0;
    case Kind::Periodic: return values_.count(n % period_) != 0;
    }
    return false;
}

std::string to_string(BSelection selection) {
    switch (selection) {
    case BSelection::Greedy: return "greedy";
    case BSelection::CeilTA: return "ceil-t-a";
    case BSelection::MinAdmissible: return "min-admissible";
    case BSelection::Explicit: return "explicit";
    }
    return {};
}

BSelection parse_bselection(std::string_view text) {
    if (text == "greedy") return BSelection::Greedy;
    if (text == "ceil-t-a") return BSelection::CeilTA;
    if (text == "min-admissible") return BSelection::MinAdmissible;
    if (text == "explicit") return BSelection::Explicit;
    throw ParseError("unknown b-selection '" + std::string(text) + "'");
}

WgaaPolicy WgaaPolicy::ceil_t(Rational t, bool last_greedy) {
    WgaaPolicy p;
    p.t = std::move(t);
    p.selection = BSelection::CeilTA;
    p.last_greedy = last_greedy;
    return p;
}

WgaaPolicy WgaaPolicy::replay(std::vector<Integer> b, Rational t, IndexSet lambda) {
    WgaaPolicy p;
    p.t = std::move(t);
    p.lambda = std::move(lambda);
    p.selection = BSelection::Explicit;
    p.explicit_b = std::move(b);
    return p;
}

void WgaaPolicy::validate() const {
    if (t < Rational(1)) throw DomainError("policy needs t >= 1, got " + t.to_string());
}

std::optional<Integer> WgaaPolicy::cap(std::size_t n, const Integer& a_n) const {
    if (!lambda.contains(n)) return std::nullopt;
    return ceil_mul(t, a_n);
}

Rational WeakGreedyRun::partial_sum() const {
    if (residuals.empty()) return Rational();
    return theta - residuals.back();
}

WeakGreedyRun greedy_expand(const Rational& theta, std::size_t n_terms, std::size_t term_cap) {
    return wgaa_expand(theta, WgaaPolicy::greedy(), n_terms, term_cap);
}

WeakGreedyRun wgaa_expand(const Rational& theta, const WgaaPolicy& policy, std::size_t n_terms,
                          std::size_t term_cap) {
    check_theta(theta);
    check_terms(n_terms, term_cap);
    policy.validate();
    if (policy.selection == BSelection::Explicit && policy.explicit_b.size() < n_terms) {
        throw PolicyViolation("explicit list has " + std::to_string(policy.explicit_b.size()) +
                                  " terms, fewer than the " + std::to_string(n_terms) + " requested",
                              policy.explicit_b.size() + 1);
    }

    WeakGreedyRun run{theta, {}, {}, {}, policy};
    run.a.reserve(n_terms);
    run.b.reserve(n_terms);
    run.residuals.reserve(n_terms);

    Rational residual = theta;
    for (std::size_t n = 1; n <= n_terms; ++n) {
        Integer a_n = greedy_selector(residual);
        auto cap = policy.cap(n, a_n);
        Integer b_n;
        if (policy.last_greedy && n == n_terms) {
            b_n = a_n;
        } else {
            switch (policy.selection) {
            case BSelection::Greedy: b_n = a_n; break;
            case BSelection::CeilTA: b_n = ceil_mul(policy.t, a_n); break;
            case BSelection::MinAdmissible:
                b_n = a_n + 1;
                if (cap && b_n > *cap) b_n = a_n;
                break;
            case BSelection::Explicit: b_n = policy.explicit_b[n - 1]; break;
            }
        }
        if (b_n < a_n) {
            throw PolicyViolation("b_" + std::to_string(n) + " = " + to_string(b_n) + " is below the greedy choice " +
                                      to_string(a_n) + "; the partial sum would reach theta",
                                  n);
        }
        if (cap && b_n > *cap) {
            throw PolicyViolation("b_" + std::to_string(n) + " = " + to_string(b_n) + " exceeds ceil(t*a_n) = " +
                                      to_string(*cap),
                                  n);
        }
        residual -= unit_fraction(b_n);
        run.a.push_back(std::move(a_n));
        run.b.push_back(std::move(b_n));
        run.residuals.push_back(residual);
    }
    return run;
}

ShadowRecovery recover_shadow(std::span<const Integer> b, const Rational& theta) {
    check_theta(theta);
    ShadowRecovery out;
    out.a.reserve(b.size());
    Rational residual = theta;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] <= 0) throw DomainError("denominators must be positive");
        out.a.push_back(greedy_selector(residual));
        if (b[i] < out.a.back()) {
            out.first_violation = i + 1;
            break;
        }
        residual -= unit_fraction(b[i]);
    }
    return out;
}

RationalInterval admissible_interval(const Integer& a_n, const Integer& a_next) {
    if (a_n < 2 || a_next < a_n) {
        throw DomainError("admissible interval needs 2 <= a_n <= a_next, got (" + to_string(a_n) + ", " +
                          to_string(a_next) + ")");
    }
    Rational lo((a_n - 1) * a_next, a_next - a_n + 1);
    Integer gap = a_next - a_n - 1;
    if (gap <= 0) return RationalInterval::unbounded_above(lo, true);
    return RationalInterval::open(lo, Rational(a_n * (a_next - 1), gap));
}

std::optional<std::string> find_run_violation(const WeakGreedyRun& run) {
    const auto n_terms = run.size();
    if (run.b.size() != n_terms || run.residuals.size() != n_terms) return "sequence lengths differ";
    Rational residual = run.theta;
    for (std::size_t i = 0; i < n_terms; ++i) {
        const auto n = i + 1;
        const auto tag = " at n = " + std::to_string(n);
        const Integer& a_n = run.a[i];
        if (a_n < 2) return "a_n < 2" + tag;
        if (i > 0 && a_n < run.a[i - 1]) return "a decreases" + tag;
        // 1/a_n < residual_{n-1} <= 1/(a_n - 1)
        if (!(unit_fraction(a_n) < residual) || residual > unit_fraction(a_n - 1)) {
            return "residual sandwich fails" + tag;
        }
        if (run.b[i] < a_n) return "b_n < a_n" + tag;
        if (auto cap = run.policy.cap(n, a_n); cap && run.b[i] > *cap) {
            return "b_n exceeds ceil(t*a_n)" + tag;
        }
        residual -= unit_fraction(run.b[i]);
        if (residual != run.residuals[i]) return "stored residual mismatch" + tag;
        if (residual.sign() <= 0) return "residual not positive" + tag;
        if (i + 1 < n_terms && !admissible_interval(a_n, run.a[i + 1]).contains(Rational(run.b[i]))) {
            return "b_n outside admissible interval" + tag;
        }
    }
    return std::nullopt;
}

} // namespace unitfrac
