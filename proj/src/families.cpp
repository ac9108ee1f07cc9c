#include "unitfrac/families.hpp"

#include <map>

#include "unitfrac/errors.hpp"

namespace unitfrac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Integer pow_int(const Integer& base, std::size_t exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

Integer index_value(std::size_t n) { return Integer(static_cast<unsigned long>(n)); }

void require_index(std::size_t n) {
    if (n == 0) throw DomainError("family indices are 1-based");
}

// "a=2,r=3" -> {a: 2, r: 3}
std::map<std::string, Integer> parse_params(std::string_view text) {
    std::map<std::string, Integer> out;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = text.substr(0, comma);
        auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError("family parameter needs key=value: '" + std::string(item) + "'");
        out[std::string(item.substr(0, eq))] = parse_integer(item.substr(eq + 1));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

const Integer& need(const std::map<std::string, Integer>& params, const std::string& key, std::string_view spec) {
    auto it = params.find(key);
    if (it == params.end()) throw ParseError("family spec '" + std::string(spec) + "' lacks '" + key + "'");
    return it->second;
}

const Integer& explicit_at(const std::vector<Integer>& values, std::size_t n, const char* name) {
    if (n > values.size()) {
        throw DomainError(std::string("explicit ") + name + " list has no term " + std::to_string(n));
    }
    return values[n - 1];
}

} // namespace

SequenceFamily parse_family(std::string_view spec) {
    SequenceFamily family;
    if (spec == "fibonacci") {
        family = Fibonacci{};
    } else if (spec.starts_with("geometric:")) {
        auto params = parse_params(spec.substr(10));
        if (params.size() != 2) throw ParseError("geometric spec takes exactly a and r");
        family = Geometric{need(params, "a", spec), need(params, "r", spec)};
    } else if (spec.starts_with("arithmetic:")) {
        auto params = parse_params(spec.substr(11));
        if (params.size() != 2) throw ParseError("arithmetic spec takes exactly a and d");
        family = Arithmetic{need(params, "a", spec), need(params, "d", spec)};
    } else {
        throw ParseError("unknown family spec '" + std::string(spec) + "'");
    }
    validate(family);
    return family;
}

std::string to_string(const SequenceFamily& family) {
    return std::visit(overloaded{
                          [](const Geometric& g) { return "geometric:a=" + to_string(g.a) + ",r=" + to_string(g.r); },
                          [](const Arithmetic& f) { return "arithmetic:a=" + to_string(f.a) + ",d=" + to_string(f.d); },
                          [](const Fibonacci&) { return std::string("fibonacci"); },
                          [](const ExplicitPair& e) { return "explicit:" + std::to_string(e.a.size()); },
                      },
                      family);
}

void validate(const SequenceFamily& family) {
    std::visit(overloaded{
                   [](const Geometric& g) {
                       if (g.a < 2 || g.r < 2) throw DomainError("geometric family needs a >= 2 and r >= 2");
                   },
                   [](const Arithmetic& f) {
                       if (f.a < 2 || f.d < 1) throw DomainError("arithmetic family needs a >= 2 and d >= 1");
                   },
                   [](const Fibonacci&) {},
                   [](const ExplicitPair& e) {
                       if (e.a.size() != e.b.size()) throw DomainError("explicit a and b lists differ in length");
                   },
               },
               family);
}

Integer fibonacci(std::size_t n) {
    Integer out;
    mpz_fib_ui(out.get_mpz_t(), n);
    return out;
}

Integer family_a(const SequenceFamily& family, std::size_t n) {
    require_index(n);
    return std::visit(overloaded{
                          [n](const Geometric& g) { return Integer(g.a * pow_int(g.r, n - 1)); },
                          [n](const Arithmetic& f) { return Integer(f.a + (index_value(n) - 1) * f.d); },
                          [n](const Fibonacci&) { return fibonacci(n + 1); },
                          [n](const ExplicitPair& e) { return explicit_at(e.a, n, "a"); },
                      },
                      family);
}

Integer family_b(const SequenceFamily& family, std::size_t n) {
    require_index(n);
    return std::visit(overloaded{
                          [n](const Geometric& g) {
                              Integer top = g.a * pow_int(g.r, n);
                              Integer den = g.r - 1;
                              if (divides(den, g.a)) return Integer(top / den - 1);
                              return floor_div(top, den);
                          },
                          [n](const Arithmetic& f) {
                              Integer a_n = f.a + (index_value(n) - 1) * f.d;
                              Integer top = a_n * (a_n + f.d);
                              if (divides(f.d, f.a * f.a)) return Integer(top / f.d - 1);
                              return floor_div(top, f.d);
                          },
                          [n](const Fibonacci&) {
                              if (n == 1) return Integer(3);
                              Integer f = fibonacci(n + 3);
                              return n % 2 == 1 ? Integer(f - 1) : f;
                          },
                          [n](const ExplicitPair& e) { return explicit_at(e.b, n, "b"); },
                      },
                      family);
}

std::vector<Integer> family_a_prefix(const SequenceFamily& family, std::size_t count) {
    std::vector<Integer> out;
    out.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) out.push_back(family_a(family, n));
    return out;
}

std::vector<Integer> family_b_prefix(const SequenceFamily& family, std::size_t count) {
    std::vector<Integer> out;
    out.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) out.push_back(family_b(family, n));
    return out;
}

std::size_t first_checked_index(const SequenceFamily& family) {
    return std::holds_alternative<Fibonacci>(family) ? 2 : 1;
}

StrictJumpCheck verify_strict_jump(const SequenceFamily& family, std::size_t max_n) {
    validate(family);
    StrictJumpCheck out;
    Integer a_n = family_a(family, first_checked_index(family));
    for (std::size_t n = first_checked_index(family); n <= max_n; ++n) {
        Integer a_next = family_a(family, n + 1);
        bool ok = a_n >= 2 && a_next > a_n && jump_interval(a_n, a_next).contains(Rational(family_b(family, n)));
        if (!ok) return {false, n};
        a_n = std::move(a_next);
    }
    return out;
}

bool cassini_check(std::size_t max_n) {
    for (std::size_t n = 1; n <= max_n; ++n) {
        Integer lhs = fibonacci(n - 1) * fibonacci(n + 1) - fibonacci(n) * fibonacci(n);
        if (lhs != (n % 2 == 0 ? 1 : -1)) return false;
    }
    return true;
}

RationalInterval family_theta_enclosure(const SequenceFamily& family, std::size_t terms) {
    validate(family);
    if (terms == 0) throw DomainError("enclosure needs at least one exact term");
    Rational head = sum_of_reciprocals(family_b_prefix(family, terms));
    Integer after = family_a(family, terms + 1);
    return RationalInterval::open(head + unit_fraction(after), head + unit_fraction(after - 1));
}

std::optional<RatioLimit> declared_ratio_limit(const SequenceFamily& family) {
    return std::visit(overloaded{
                          [](const Geometric& g) -> std::optional<RatioLimit> {
                              return RatioLimit{Rational(g.r), true, "r = " + to_string(g.r)};
                          },
                          [](const Arithmetic&) -> std::optional<RatioLimit> {
                              return RatioLimit{Rational(1), false, "1"};
                          },
                          [](const Fibonacci&) -> std::optional<RatioLimit> {
                              return RatioLimit{std::nullopt, true, "golden ratio (1+sqrt 5)/2"};
                          },
                          [](const ExplicitPair&) -> std::optional<RatioLimit> { return std::nullopt; },
                      },
                      family);
}

TargetSequence as_target(const SequenceFamily& family) {
    validate(family);
    if (const auto* e = std::get_if<ExplicitPair>(&family)) return TargetSequence::repeat_last_delta(e->a);
    return TargetSequence::from_generator([family](std::size_t n) { return family_a(family, n); }, true,
                                          to_string(family));
}

} // namespace unitfrac
