#pragma once

#include <string>

#include "ultraspec/field.hpp"

namespace ultraspec {

/**
 * Exact ground-field scalar u + v*sqrt(p) with rational u, v.
 *
 * The sqrt(p) part is only legal in p-adic mode; elsewhere any scalar with
 * v != 0 is invalid and rejected on parse and on valuation.  sqrt(p) has
 * valuation 1/2, which is how half-integer magnitudes are realized exactly.
 */
struct QuadScalar {
    Rat u;
    Rat v;

    QuadScalar() : u(0), v(0) {}
    explicit QuadScalar(const Rat& u_, const Rat& v_ = Rat(0)) : u(u_), v(v_) {}
    explicit QuadScalar(long n) : u(n), v(0) {}

    bool is_zero() const { return u == 0 && v == 0; }
    bool is_rational() const { return v == 0; }
};

inline bool operator==(const QuadScalar& x, const QuadScalar& y) { return x.u == y.u && x.v == y.v; }
inline bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }

QuadScalar qs_add(const QuadScalar& x, const QuadScalar& y);
QuadScalar qs_sub(const QuadScalar& x, const QuadScalar& y);
QuadScalar qs_neg(const QuadScalar& x);
QuadScalar qs_mul(const QuadScalar& x, const QuadScalar& y, const FieldSpec& f);
QuadScalar qs_inv(const QuadScalar& x, const FieldSpec& f);
QuadScalar qs_div(const QuadScalar& x, const QuadScalar& y, const FieldSpec& f);
QuadScalar qs_conj(const QuadScalar& x);

/** Reject scalars whose sqrt(p) part is illegal in the active mode. */
void check_scalar(const QuadScalar& s, const FieldSpec& f);

/**
 * Exact valuation of a scalar.  Zero has valuation +infinity.  In p-adic
 * mode v(u + v*sqrt(p)) = min(v_p(u), v_p(v) + 1/2) — the two candidates can
 * never tie since one is an integer and the other is not.  In
 * equal-characteristic-zero mode the valuation is the 2-adic exponent of the
 * rational scalar; in trivial mode every nonzero scalar has valuation 0.
 */
Exponent valuation(const QuadScalar& s, const FieldSpec& f);

/** p^k, or p^(k-1/2)*sqrt(p) for half-integer k, realizing valuation k exactly. */
QuadScalar scalar_with_valuation(const Rat& k, const FieldSpec& f);

/** Format "u", "u+v*sqrt(p)", "u-v*sqrt(p)" or "v*sqrt(p)". */
std::string format_scalar(const QuadScalar& s, const FieldSpec& f);

/** Strict parse of the scalar literal grammar above. */
QuadScalar parse_scalar(const std::string& text, const FieldSpec& f);

} // namespace ultraspec
