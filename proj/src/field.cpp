#include "ultraspec/field.hpp"

#include "ultraspec/errors.hpp"

namespace ultraspec {

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (unsigned long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::padic(unsigned long p) {
    if (!is_prime(p)) throw validation_error("p-adic mode requires a prime p");
    FieldSpec f;
    f.mode = FieldMode::PAdic;
    f.p = p;
    return f;
}

FieldSpec FieldSpec::equal_char_zero() {
    FieldSpec f;
    f.mode = FieldMode::EqualCharZero;
    f.p = 2;
    return f;
}

FieldSpec FieldSpec::trivial() {
    FieldSpec f;
    f.mode = FieldMode::Trivial;
    f.p = 2;
    return f;
}

Exponent omega_exponent(const FieldSpec& f) {
    if (f.mode == FieldMode::PAdic) return Exponent(make_rat(1, static_cast<long>(f.p) - 1));
    return Exponent(0L);
}

Rat factorial_valuation(const Int& n, const FieldSpec& f) {
    if (n < 0) throw validation_error("factorial valuation of a negative integer");
    if (f.mode != FieldMode::PAdic) return Rat(0);
    // Legendre: v_p(n!) = (n - digit_sum_p(n)) / (p - 1).
    Int s = n - digit_sum(n, f.p);
    return make_rat(s, Int(f.p - 1));
}

bool in_value_group(const Exponent& e, const FieldSpec& f) {
    if (e.infinite) return false;
    if (f.mode == FieldMode::Trivial) return e.a == 0 && e.b == 0;
    return e.b == 0;
}

std::string format_field(const FieldSpec& f) {
    switch (f.mode) {
        case FieldMode::PAdic: return "p-adic(p=" + std::to_string(f.p) + ")";
        case FieldMode::EqualCharZero: return "equal-char-zero";
        case FieldMode::Trivial: return "trivial";
    }
    return "?";
}

} // namespace ultraspec
