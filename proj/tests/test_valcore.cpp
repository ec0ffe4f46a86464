#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ultraspec/field.hpp"
#include "ultraspec/scalar.hpp"

using namespace ultraspec;

TEST_CASE("exponent comparison: exact sign analysis") {
    // 1 < sqrt(2) and 3/2 > sqrt(2).
    CHECK(Exponent(Rat(1)) < Exponent(Rat(0), Rat(1)));
    CHECK(Exponent(make_rat(3, 2)) > Exponent(Rat(0), Rat(1)));
    // Same-sign and zero-part cases.
    CHECK(Exponent(Rat(0)) == Exponent(Rat(0)));
    CHECK(Exponent(Rat(-1), Rat(-1)) < Exponent(Rat(0)));
    CHECK(Exponent(Rat(2), Rat(1)) > Exponent(Rat(2)));
    CHECK(Exponent(Rat(2), Rat(-1)) < Exponent(Rat(2)));
    // -a + b*sqrt2 with 2b^2 > a^2 is positive.
    CHECK(quad2_sign(Rat(-4), Rat(3)) == 1);
    CHECK(quad2_sign(Rat(-5), Rat(3)) < 0); // 25 > 18
    CHECK(quad2_sign(Rat(5), Rat(-3)) > 0);
    CHECK(quad2_sign(Rat(4), Rat(-3)) < 0);
}

TEST_CASE("exponent infinity and arithmetic") {
    CHECK(Exponent::inf() > Exponent(Rat(1000000)));
    CHECK(Exponent::inf() == Exponent::inf());
    CHECK((Exponent::inf() + Exponent(Rat(3))).infinite);
    Exponent e = Exponent(make_rat(1, 2), make_rat(1, 3));
    CHECK(e + e == e * Rat(2));
    CHECK(e - e == Exponent(Rat(0)));
    CHECK((e * Rat(6)) / 6 == e);
    CHECK(min(Exponent(Rat(1)), Exponent::inf()) == Exponent(Rat(1)));
    CHECK(max(Exponent(Rat(1)), Exponent(Rat(0), Rat(1))) == Exponent(Rat(0), Rat(1)));
}

TEST_CASE("exponent literals round-trip and reject junk") {
    for (const char* s : {"0", "-3/2", "1+1*sqrt2", "1-1/2*sqrt2", "2/3*sqrt2", "-1*sqrt2", "inf"}) {
        Exponent e = parse_exponent(s);
        CHECK(format_exponent(e) == s);
    }
    CHECK(parse_exponent("5") == Exponent(Rat(5)));
    CHECK(parse_exponent("1/2+3*sqrt2") == Exponent(make_rat(1, 2), Rat(3)));
    CHECK_THROWS_AS(parse_exponent(""), validation_error);
    CHECK_THROWS_AS(parse_exponent("1.5"), validation_error);
    CHECK_THROWS_AS(parse_exponent("sqrt2"), validation_error);
    CHECK_THROWS_AS(parse_exponent("1+sqrt2"), validation_error);
    CHECK_THROWS_AS(parse_exponent("1/0"), validation_error);
    CHECK_THROWS_AS(parse_exponent("2e3"), validation_error);
    CHECK_THROWS_AS(parse_exponent("1 + 1*sqrt2"), validation_error);
}

TEST_CASE("field modes, omega, factorial valuation") {
    FieldSpec f2 = FieldSpec::padic(2);
    FieldSpec f3 = FieldSpec::padic(3);
    FieldSpec fz = FieldSpec::equal_char_zero();
    FieldSpec ft = FieldSpec::trivial();

    CHECK_THROWS_AS(FieldSpec::padic(4), validation_error);
    CHECK_THROWS_AS(FieldSpec::padic(1), validation_error);

    CHECK(omega_exponent(f2) == Exponent(Rat(1)));
    CHECK(omega_exponent(f3) == Exponent(make_rat(1, 2)));
    CHECK(omega_exponent(fz) == Exponent(Rat(0)));
    CHECK(omega_exponent(ft) == Exponent(Rat(0)));

    CHECK(factorial_valuation(Int(4), f2) == Rat(3));
    CHECK(factorial_valuation(Int(8), f2) == Rat(7));      // (2^3 - 1)/(2 - 1)
    CHECK(factorial_valuation(Int(9), f3) == Rat(4));      // (3^2 - 1)/(3 - 1)
    CHECK(factorial_valuation(Int(0), f2) == Rat(0));
    CHECK(factorial_valuation(Int(100), fz) == Rat(0));
    CHECK(factorial_valuation(Int(100), ft) == Rat(0));
}

TEST_CASE("value group membership per mode") {
    FieldSpec f2 = FieldSpec::padic(2);
    FieldSpec ft = FieldSpec::trivial();
    FieldSpec fz = FieldSpec::equal_char_zero();
    CHECK(in_value_group(Exponent(make_rat(7, 3)), f2));
    CHECK_FALSE(in_value_group(Exponent(Rat(0), Rat(1)), f2));
    CHECK(in_value_group(Exponent(Rat(-2)), fz));
    CHECK_FALSE(in_value_group(Exponent(Rat(0), make_rat(1, 2)), fz));
    CHECK(in_value_group(Exponent(Rat(0)), ft));
    CHECK_FALSE(in_value_group(Exponent(Rat(1)), ft));
    CHECK_FALSE(in_value_group(Exponent::inf(), f2));
}

TEST_CASE("scalar valuation: p-adic") {
    FieldSpec f2 = FieldSpec::padic(2);
    CHECK(valuation(QuadScalar(4), f2) == Exponent(Rat(2)));
    CHECK(valuation(QuadScalar(Rat(0), Rat(1)), f2) == Exponent(make_rat(1, 2)));
    CHECK(valuation(QuadScalar(0), f2).infinite);
    CHECK(valuation(QuadScalar(make_rat(3, 4)), f2) == Exponent(Rat(-2)));
    // Mixed: min of integer and half-integer candidates.
    CHECK(valuation(QuadScalar(Rat(2), Rat(1)), f2) == Exponent(make_rat(1, 2)));
    CHECK(valuation(QuadScalar(Rat(1), Rat(4)), f2) == Exponent(Rat(0)));
    FieldSpec f3 = FieldSpec::padic(3);
    CHECK(valuation(QuadScalar(Rat(9), make_rat(1, 3)), f3) == Exponent(make_rat(-1, 2)));
}

TEST_CASE("scalar valuation: residual characteristic zero modes") {
    FieldSpec fz = FieldSpec::equal_char_zero();
    CHECK(valuation(QuadScalar(2), fz) == Exponent(Rat(1)));
    CHECK(valuation(QuadScalar(make_rat(1, 2)), fz) == Exponent(Rat(-1)));
    CHECK(valuation(QuadScalar(3), fz) == Exponent(Rat(0)));
    CHECK(valuation(QuadScalar(0), fz).infinite);
    CHECK_THROWS_AS(valuation(QuadScalar(Rat(1), Rat(1)), fz), validation_error);

    FieldSpec ft = FieldSpec::trivial();
    CHECK(valuation(QuadScalar(5), ft) == Exponent(Rat(0)));
    CHECK(valuation(QuadScalar(make_rat(-7, 3)), ft) == Exponent(Rat(0)));
    CHECK(valuation(QuadScalar(0), ft).infinite);
    CHECK_THROWS_AS(valuation(QuadScalar(Rat(0), Rat(2)), ft), validation_error);
}

TEST_CASE("scalar_with_valuation realizes requested valuations") {
    FieldSpec f2 = FieldSpec::padic(2);
    CHECK(valuation(scalar_with_valuation(Rat(3), f2), f2) == Exponent(Rat(3)));
    CHECK(valuation(scalar_with_valuation(make_rat(-5, 2), f2), f2) == Exponent(make_rat(-5, 2)));
    CHECK_THROWS_AS(scalar_with_valuation(make_rat(1, 3), f2), unsupported_error);
    FieldSpec fz = FieldSpec::equal_char_zero();
    CHECK(valuation(scalar_with_valuation(Rat(-2), fz), fz) == Exponent(Rat(-2)));
    CHECK_THROWS_AS(scalar_with_valuation(make_rat(1, 2), fz), unsupported_error);
    FieldSpec ft = FieldSpec::trivial();
    CHECK(valuation(scalar_with_valuation(Rat(0), ft), ft) == Exponent(Rat(0)));
    CHECK_THROWS_AS(scalar_with_valuation(Rat(1), ft), unsupported_error);
}

TEST_CASE("scalar literals round-trip and reject junk") {
    FieldSpec f2 = FieldSpec::padic(2);
    for (const char* s : {"0", "-5/3", "1+1*sqrt(2)", "1-1/2*sqrt(2)", "2/3*sqrt(2)", "-1*sqrt(2)"}) {
        QuadScalar q = parse_scalar(s, f2);
        CHECK(format_scalar(q, f2) == s);
    }
    CHECK_THROWS_AS(parse_scalar("1*sqrt(3)", f2), validation_error); // wrong radicand
    CHECK_THROWS_AS(parse_scalar("1*sqrt(2)", FieldSpec::trivial()), validation_error);
    CHECK_THROWS_AS(parse_scalar("1*sqrt(2)", FieldSpec::equal_char_zero()), validation_error);
    CHECK_THROWS_AS(parse_scalar("x", f2), validation_error);
    CHECK_THROWS_AS(parse_scalar("1.5", f2), validation_error);
    CHECK_THROWS_AS(parse_scalar("", f2), validation_error);
    FieldSpec f5 = FieldSpec::padic(5);
    CHECK(format_scalar(parse_scalar("3+2*sqrt(5)", f5), f5) == "3+2*sqrt(5)");
}

TEST_CASE("scalar field arithmetic") {
    FieldSpec f2 = FieldSpec::padic(2);
    QuadScalar x(Rat(1), Rat(1));  // 1 + sqrt2
    QuadScalar y(Rat(3), Rat(-2)); // 3 - 2*sqrt2
    QuadScalar prod = qs_mul(x, y, f2); // 3 - 4 + (3 - 2)sqrt2 = -1 + sqrt2
    CHECK(prod == QuadScalar(Rat(-1), Rat(1)));
    CHECK(qs_mul(x, qs_inv(x, f2), f2) == QuadScalar(1));
    CHECK(qs_sub(qs_add(x, y), y) == x);
    CHECK(qs_div(prod, y, f2) == x);
    CHECK_THROWS_AS(qs_inv(QuadScalar(0), f2), validation_error);
}

namespace {

Rat random_rat(std::mt19937& rng, int num_lo, int num_hi, int den_hi) {
    std::uniform_int_distribution<int> num(num_lo, num_hi);
    std::uniform_int_distribution<int> den(1, den_hi);
    return make_rat(num(rng), den(rng));
}

} // namespace

TEST_CASE("property: exponent ordering agrees with a float oracle") {
    std::mt19937 rng(20260816u);
    int compared = 0;
    const double s2 = std::sqrt(2.0);
    for (int i = 0; i < 2000; ++i) {
        Rat a1 = random_rat(rng, -1000000, 1000000, 997);
        Rat b1 = random_rat(rng, -1000000, 1000000, 997);
        Rat a2 = random_rat(rng, -1000000, 1000000, 997);
        Rat b2 = random_rat(rng, -1000000, 1000000, 997);
        double fx = a1.get_d() + b1.get_d() * s2;
        double fy = a2.get_d() + b2.get_d() * s2;
        if (std::abs(fx - fy) < 1e-3) continue; // float oracle unreliable near ties
        ++compared;
        int exact = cmp(Exponent(a1, b1), Exponent(a2, b2));
        CHECK(exact == (fx < fy ? -1 : 1));
    }
    CHECK(compared > 1500);
}

TEST_CASE("property: scalar valuation is multiplicative") {
    std::mt19937 rng(7u);
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        FieldSpec f = FieldSpec::padic(p);
        for (int i = 0; i < 400; ++i) {
            QuadScalar x(random_rat(rng, -40, 40, 24), random_rat(rng, -40, 40, 24));
            QuadScalar y(random_rat(rng, -40, 40, 24), random_rat(rng, -40, 40, 24));
            if (x.is_zero() || y.is_zero()) continue;
            Exponent lhs = valuation(qs_mul(x, y, f), f);
            Exponent rhs = valuation(x, f) + valuation(y, f);
            CHECK(cmp(lhs, rhs) == 0);
        }
    }
    FieldSpec fz = FieldSpec::equal_char_zero();
    for (int i = 0; i < 400; ++i) {
        QuadScalar x(random_rat(rng, -60, 60, 32));
        QuadScalar y(random_rat(rng, -60, 60, 32));
        if (x.is_zero() || y.is_zero()) continue;
        CHECK(valuation(qs_mul(x, y, fz), fz) == valuation(x, fz) + valuation(y, fz));
    }
}

TEST_CASE("property: Legendre formula cross-checks") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        FieldSpec f = FieldSpec::padic(p);
        // Against the floor-sum form for n <= 10^4.
        for (long n : {1L, 2L, 17L, 100L, 729L, 1024L, 4999L, 10000L}) {
            Rat lhs = factorial_valuation(Int(n), f);
            long sum = 0;
            for (long q = static_cast<long>(p); q <= n; q *= static_cast<long>(p)) {
                sum += n / q;
                if (q > n / static_cast<long>(p)) break;
            }
            CHECK(lhs == Rat(sum));
        }
        // Against direct factorization of n! for n <= 200.
        long direct = 0;
        for (long k = 1; k <= 200; ++k) {
            direct += int_valuation(Int(k), p);
            CHECK(factorial_valuation(Int(k), f) == Rat(direct));
        }
    }
}
