#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "ultraspec/errors.hpp"

namespace ultraspec {

using Rat = mpq_class;
using Int = mpz_class;

/** Exact rational num/den in canonical form. */
inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw validation_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw validation_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/** p-adic valuation of a nonzero integer (number of factors p). */
inline long int_valuation(const Int& n, unsigned long p) {
    if (n == 0) throw validation_error("valuation of integer zero");
    Int reduced;
    return static_cast<long>(mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), Int(p).get_mpz_t()));
}

/** p-adic valuation of a nonzero rational: v(num) - v(den). */
inline long rat_valuation(const Rat& q, unsigned long p) {
    if (q == 0) throw validation_error("valuation of rational zero");
    return int_valuation(q.get_num(), p) - int_valuation(q.get_den(), p);
}

/** Digit sum of n >= 0 in base p. */
inline long digit_sum(Int n, unsigned long p) {
    if (n < 0) throw validation_error("digit sum of negative integer");
    long s = 0;
    Int base(p), rem;
    while (n > 0) {
        mpz_fdiv_qr(n.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), base.get_mpz_t());
        s += static_cast<long>(rem.get_ui());
    }
    return s;
}

/** p^k as an exact rational, k possibly negative. */
inline Rat pow_rat(unsigned long p, long k) {
    Int num;
    mpz_ui_pow_ui(num.get_mpz_t(), p, static_cast<unsigned long>(k < 0 ? -k : k));
    if (k >= 0) return Rat(num);
    return make_rat(Int(1), num);
}

/** Exact square root of a rational if it is a perfect square (and >= 0). */
inline std::optional<Rat> rat_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    const Int& num = q.get_num();
    const Int& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return make_rat(rn, rd);
}

/** Format "n" or "n/d" (canonical lowest terms). */
inline std::string format_rat(const Rat& q) { return q.get_str(); }

/** Strict parse of "n" or "n/d" with optional sign; rejects anything else. */
Rat parse_rat(const std::string& text);

} // namespace ultraspec
