#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support.hpp"
#include "unitfrac/errors.hpp"
#include "unitfrac/families.hpp"
#include "unitfrac/greedy.hpp"

using namespace unitfrac;
using namespace unitfrac::testing;

namespace {

Rational q(long p, long d) { return Rational(Integer(p), Integer(d)); }

Integer pow_ui(long base, unsigned long e) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), base, e);
    return p;
}

// Largest b with 1/b > 1/a - 1/a', i.e. b < a a'/(a'-a).
mpz_class largest_strict_jump(const mpz_class& a, const mpz_class& a2) {
    mpz_class num = a * a2, den = a2 - a;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return c - 1;
}

// Independent tail bracket for geometric families: b_{n+1} >= r b_n gives
// 1/b_{N+1} < tail <= r/((r-1) b_{N+1}).
std::pair<mpq_class, mpq_class> geometric_comparison(const Geometric& g, std::size_t terms) {
    mpq_class head = 0;
    for (std::size_t n = 1; n <= terms; ++n) head += mpq_class(1, family_b(g, n));
    mpz_class next = family_b(g, terms + 1);
    mpq_class r(g.r);
    return {head + mpq_class(1, next), head + r / ((r - 1) * next)};
}

bool overlaps(const RationalInterval& iv, const mpq_class& lo, const mpq_class& hi) {
    return iv.lo() < Rational(Integer(hi.get_num()), Integer(hi.get_den())) &&
           Rational(Integer(lo.get_num()), Integer(lo.get_den())) < iv.hi();
}

// Distance from x to the enclosure (0 when inside).
double distance_to(const RationalInterval& iv, double x) {
    double lo = iv.lo().to_double(), hi = iv.hi().to_double();
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

} // namespace

TEST_CASE("family spec parsing", "[families]") {
    CHECK(to_string(parse_family("geometric:a=2,r=3")) == "geometric:a=2,r=3");
    CHECK(to_string(parse_family("arithmetic:a=3,d=2")) == "arithmetic:a=3,d=2");
    CHECK(std::holds_alternative<Fibonacci>(parse_family("fibonacci")));
    CHECK_THROWS_AS(parse_family("geometric:a=2"), ParseError);
    CHECK_THROWS_AS(parse_family("geometric:a=1,r=3"), DomainError);
    CHECK_THROWS_AS(parse_family("arithmetic:a=3,d=0"), DomainError);
    CHECK_THROWS_AS(parse_family("harmonic"), ParseError);
    CHECK_THROWS_AS(parse_family("geometric:a=2,r=x"), ParseError);
}

TEST_CASE("closed forms of the worked families", "[families]") {
    Geometric g23{Integer(2), Integer(3)}, g24{Integer(2), Integer(4)};
    Arithmetic a21{Integer(2), Integer(1)}, a32{Integer(3), Integer(2)};
    for (unsigned long n = 1; n <= 30; ++n) {
        long m = static_cast<long>(n);
        REQUIRE(family_a(g23, n) == 2 * pow_ui(3, n - 1));
        REQUIRE(family_b(g23, n) == pow_ui(3, n) - 1);
        REQUIRE(family_b(g24, n) == 2 * (pow_ui(4, n) - 1) / 3);
        REQUIRE(family_b(g24, n) == pow_ui(2, 2 * n + 1) / 3);
        REQUIRE(family_a(a21, n) == m + 1);
        REQUIRE(family_b(a21, n) == m * m + 3 * m + 1);
        REQUIRE(family_a(a32, n) == 2 * m + 1);
        REQUIRE(family_b(a32, n) == 2 * m * m + 4 * m + 1);
    }
    CHECK(family_b(Fibonacci{}, 1) == 3);
    CHECK(family_b(Fibonacci{}, 2) == 5);
    CHECK(family_a(Fibonacci{}, 3) == 3);
}

TEST_CASE("divisibility dichotomies", "[families][property]") {
    for (long a = 2; a <= 12; ++a) {
        for (long r = 2; r <= 7; ++r) {
            Geometric g{Integer(a), Integer(r)};
            for (unsigned long n = 1; n <= 12; ++n) {
                Integer top = a * pow_ui(r, n);
                if ((a % (r - 1)) == 0) {
                    REQUIRE((r - 1) * (family_b(g, n) + 1) == top);
                } else {
                    REQUIRE(family_b(g, n) == floor_div(top, Integer(r - 1)));
                }
            }
        }
        for (long d = 1; d <= 9; ++d) {
            Arithmetic f{Integer(a), Integer(d)};
            for (long n = 1; n <= 12; ++n) {
                long an = a + (n - 1) * d;
                long top = an * (an + d);
                REQUIRE(family_b(f, n) == ((a * a) % d == 0 ? top / d - 1 : top / d));
            }
        }
    }
}

TEST_CASE("strict jump check passes for the families", "[families]") {
    CHECK(verify_strict_jump(Geometric{Integer(2), Integer(3)}, 30).holds);
    CHECK(verify_strict_jump(Geometric{Integer(2), Integer(4)}, 30).holds);
    CHECK(verify_strict_jump(Arithmetic{Integer(2), Integer(1)}, 50).holds);
    CHECK(verify_strict_jump(Arithmetic{Integer(3), Integer(2)}, 50).holds);
    CHECK(verify_strict_jump(Fibonacci{}, 50).holds);
    for (long a = 2; a <= 10; ++a) {
        for (long p = 1; p <= 8; ++p) {
            REQUIRE(verify_strict_jump(Geometric{Integer(a), Integer(p + 1)}, 15).holds);
            REQUIRE(verify_strict_jump(Arithmetic{Integer(a), Integer(p)}, 40).holds);
        }
    }
}

TEST_CASE("injected Fibonacci b_2 = 6 fails at index 2", "[families]") {
    ExplicitPair e{family_a_prefix(Fibonacci{}, 10), family_b_prefix(Fibonacci{}, 10)};
    e.b[1] = Integer(6);
    // shift by one so the lists start at a = 2; index 1 here is Fibonacci index 2
    e.a.erase(e.a.begin());
    e.b.erase(e.b.begin());
    auto check = verify_strict_jump(e, 8);
    CHECK_FALSE(check.holds);
    CHECK(check.first_failure == std::optional<std::size_t>(1));

    ExplicitPair clean{family_a_prefix(Fibonacci{}, 10), family_b_prefix(Fibonacci{}, 10)};
    clean.a.erase(clean.a.begin());
    clean.b.erase(clean.b.begin());
    CHECK(verify_strict_jump(clean, 8).holds);
}

TEST_CASE("Fibonacci parity formula is the largest admissible denominator", "[families]") {
    for (std::size_t n = 2; n <= 50; ++n) {
        REQUIRE(family_b(Fibonacci{}, n) == largest_strict_jump(fibonacci(n + 1), fibonacci(n + 2)));
    }
    for (std::size_t n = 3; n <= 50; ++n) {
        REQUIRE(family_b(Fibonacci{}, n) == floor_div(fibonacci(n + 1) * fibonacci(n + 2), fibonacci(n)));
    }
    // n = 2: the raw floor gives 6 but only 5 is strictly inside (2, 6)
    CHECK(floor_div(fibonacci(3) * fibonacci(4), fibonacci(2)) == 6);
    CHECK(jump_interval(fibonacci(3), fibonacci(4)) == RationalInterval::open(Rational(2), Rational(6)));
    CHECK(family_b(Fibonacci{}, 2) == 5);
    CHECK_FALSE(jump_interval(Integer(2), Integer(3)).contains(Rational(6)));
}

TEST_CASE("Cassini identity", "[families]") {
    CHECK(cassini_check(2));
    CHECK(cassini_check(3));
    CHECK(cassini_check(80));
    mpz_class f0 = 0, f1 = 1;
    for (int n = 1; n <= 80; ++n) {
        mpz_class f2 = f0 + f1;
        REQUIRE(f0 * f2 - f1 * f1 == (n % 2 == 0 ? 1 : -1));
        REQUIRE(fibonacci(n) == f1);
        f0 = f1;
        f1 = f2;
    }
}

TEST_CASE("geometric theta enclosures", "[families][theta]") {
    Geometric g23{Integer(2), Integer(3)}, g24{Integer(2), Integer(4)};
    auto e23 = family_theta_enclosure(g23, 40);
    CHECK(e23.width() < q(1, 100000));
    CHECK(distance_to(e23, 0.68215) <= 5e-6);
    CHECK(distance_to(e23, 0.6821535026) <= 1e-10);
    auto e24 = family_theta_enclosure(g24, 30);
    CHECK(distance_to(e24, 0.63165) <= 5e-6);
    CHECK(distance_to(e24, 0.6316465291) <= 1e-10);

    for (const auto& g : {g23, g24, Geometric{Integer(3), Integer(2)}, Geometric{Integer(5), Integer(7)}}) {
        for (std::size_t terms : {3, 8, 20}) {
            auto [lo, hi] = geometric_comparison(g, terms);
            REQUIRE(overlaps(family_theta_enclosure(g, terms), lo, hi));
        }
    }
}

TEST_CASE("arithmetic theta enclosures", "[families][theta]") {
    auto e32 = family_theta_enclosure(Arithmetic{Integer(3), Integer(2)}, 2000);
    CHECK(e32.width() < q(1, 10000));
    CHECK(distance_to(e32, 0.34551) <= 1e-4);
    const double pi = std::acos(-1.0);
    CHECK(distance_to(e32, (-2.0 - std::sqrt(2.0) * pi / std::tan(pi / std::sqrt(2.0))) / 4.0) <= 1e-4);

    auto e21 = family_theta_enclosure(Arithmetic{Integer(2), Integer(1)}, 2000);
    CHECK(distance_to(e21, 0.54625) <= 1e-4);
    CHECK(distance_to(e21, pi * std::tan(std::sqrt(5.0) * pi / 2.0) / std::sqrt(5.0)) <= 1e-4);

    // the exact partial sum is below the enclosure and a deeper enclosure nests inside
    auto deeper = family_theta_enclosure(Arithmetic{Integer(2), Integer(1)}, 4000);
    CHECK(e21.contains(deeper));
}

TEST_CASE("recovery from a tight enclosure reproduces the family shadow", "[families][recover]") {
    std::vector<SequenceFamily> fams{Geometric{Integer(2), Integer(3)}, Geometric{Integer(2), Integer(4)},
                                     Arithmetic{Integer(2), Integer(1)}, Arithmetic{Integer(3), Integer(2)}};
    for (const auto& f : fams) {
        auto enc = family_theta_enclosure(f, 30);
        auto b = family_b_prefix(f, 20);
        auto shadow = oracle_shadow(b, to_mpq(enc.midpoint()));
        REQUIRE(shadow == family_a_prefix(f, 20));
        REQUIRE(recover_shadow(b, enc.midpoint()).a == family_a_prefix(f, 20));
    }
    // Fibonacci a_1 = 1 is not a valid shadow value, so compare from index 2 on
    auto enc = family_theta_enclosure(Fibonacci{}, 40);
    auto b = family_b_prefix(Fibonacci{}, 25);
    auto a = family_a_prefix(Fibonacci{}, 25);
    auto rec = recover_shadow(b, enc.midpoint());
    REQUIRE(rec.a.size() == 25);
    CHECK(std::equal(a.begin() + 1, a.end(), rec.a.begin() + 1));
}

TEST_CASE("declared ratio limits", "[families]") {
    auto g = declared_ratio_limit(Geometric{Integer(2), Integer(3)});
    REQUIRE(g);
    CHECK(*g->exact == Rational(3));
    CHECK(g->exceeds_one);
    auto a = declared_ratio_limit(Arithmetic{Integer(2), Integer(1)});
    CHECK_FALSE(a->exceeds_one);
    CHECK_FALSE(declared_ratio_limit(Fibonacci{})->exact.has_value());
    CHECK_FALSE(declared_ratio_limit(ExplicitPair{}).has_value());
}
