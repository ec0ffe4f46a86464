#pragma once

#include <string>

#include "ultraspec/exponent.hpp"
#include "ultraspec/rational.hpp"

namespace ultraspec {

/**
 * The ground field configuration.  Three modes:
 *
 *  - PAdic(p): scalars u + v*sqrt(p) over Q, valuation base p, residual
 *    characteristic p.
 *  - EqualCharZero: rational scalars valued by their 2-adic exponent
 *    (base fixed at 2); residual characteristic 0, so every nonzero integer
 *    is a unit for norm purposes.
 *  - Trivial: rational scalars, trivial valuation (0 for every nonzero
 *    scalar); value group {0}.
 */
enum class FieldMode { PAdic, EqualCharZero, Trivial };

struct FieldSpec {
    FieldMode mode = FieldMode::PAdic;
    unsigned long p = 2; // meaningful in PAdic mode only

    static FieldSpec padic(unsigned long p);
    static FieldSpec equal_char_zero();
    static FieldSpec trivial();

    bool residual_char_zero() const { return mode != FieldMode::PAdic; }

    /** Multiplicative base the exponents refer to (p, or 2 outside p-adic mode). */
    unsigned long base() const { return mode == FieldMode::PAdic ? p : 2; }
};

bool is_prime(unsigned long n);

/**
 * Exponent of omega = |p|^(1/(p-1)): 1/(p-1) in p-adic mode, 0 where the
 * residual characteristic is zero (omega = 1).
 */
Exponent omega_exponent(const FieldSpec& f);

/**
 * Valuation of n! in the ground field: Legendre's formula
 * (n - digit_sum_p(n)) / (p - 1) in p-adic mode, identically 0 in the
 * residual-characteristic-zero modes where integers are units.
 */
Rat factorial_valuation(const Int& n, const FieldSpec& f);

/** Whether an exponent lies in the value group of the field. */
bool in_value_group(const Exponent& e, const FieldSpec& f);

std::string format_field(const FieldSpec& f);

} // namespace ultraspec
