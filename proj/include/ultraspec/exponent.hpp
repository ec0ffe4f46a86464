#pragma once

#include <string>

#include "ultraspec/rational.hpp"

namespace ultraspec {

/**
 * Additive exponent a + b*sqrt(2) with exact rational a, b, plus +infinity.
 *
 * All radii and absolute values are carried multiplicatively as
 * base^(-exponent), so a LARGER exponent always means a SMALLER radius or
 * magnitude, and +infinity is the exponent of zero.  The sqrt(2) component
 * exists so radii strictly outside the value group (type-(3) data) are exact
 * first-class citizens; b != 0 certifies "not in the value group" in the
 * p-adic and equal-characteristic-zero modes.
 *
 * Comparison is exact sign analysis of (a1-a2) + (b1-b2)*sqrt(2): when the
 * two parts have equal signs the sign is immediate, otherwise it is decided
 * by comparing (a1-a2)^2 against 2*(b1-b2)^2 (they can never be equal with
 * both parts nonzero, since sqrt(2) is irrational).
 */
struct Exponent {
    bool infinite = false;
    Rat a;
    Rat b;

    Exponent() : a(0), b(0) {}
    explicit Exponent(const Rat& a_, const Rat& b_ = Rat(0)) : a(a_), b(b_) {}
    explicit Exponent(long v) : a(v), b(0) {}

    static Exponent inf() {
        Exponent e;
        e.infinite = true;
        return e;
    }

    bool is_rational() const { return !infinite && b == 0; }
};

/** -1 / 0 / +1 for the sign of a + b*sqrt(2). */
int quad2_sign(const Rat& a, const Rat& b);

/** Three-way compare; +infinity is greater than every finite exponent. */
int cmp(const Exponent& x, const Exponent& y);

inline bool operator==(const Exponent& x, const Exponent& y) { return cmp(x, y) == 0; }
inline bool operator!=(const Exponent& x, const Exponent& y) { return cmp(x, y) != 0; }
inline bool operator<(const Exponent& x, const Exponent& y) { return cmp(x, y) < 0; }
inline bool operator<=(const Exponent& x, const Exponent& y) { return cmp(x, y) <= 0; }
inline bool operator>(const Exponent& x, const Exponent& y) { return cmp(x, y) > 0; }
inline bool operator>=(const Exponent& x, const Exponent& y) { return cmp(x, y) >= 0; }

Exponent operator+(const Exponent& x, const Exponent& y);
Exponent operator-(const Exponent& x, const Exponent& y); // finite operands only
Exponent operator-(const Exponent& x);
Exponent operator*(const Exponent& x, const Rat& k);
Exponent operator/(const Exponent& x, long k);

Exponent min(const Exponent& x, const Exponent& y);
Exponent max(const Exponent& x, const Exponent& y);

/** Format "a", "a+b*sqrt2", "a-b*sqrt2", "b*sqrt2" or "inf". */
std::string format_exponent(const Exponent& e);

/** Strict parse of the exponent literal grammar above. */
Exponent parse_exponent(const std::string& text);

} // namespace ultraspec
