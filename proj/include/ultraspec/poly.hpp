#pragma once

#include <utility>
#include <vector>

#include "ultraspec/scalar.hpp"

namespace ultraspec {

/**
 * Dense univariate polynomial over the ground field, coefficients ascending
 * by degree, trailing zeros trimmed.  The zero polynomial is the empty
 * vector.  Exact arithmetic throughout; degrees at desk scale (<= 8 for
 * module data, a few hundred transiently inside probes).
 */
struct QPoly {
    std::vector<QuadScalar> c;

    QPoly() = default;
    explicit QPoly(std::vector<QuadScalar> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    const QuadScalar& coeff(int i) const {
        static const QuadScalar zero;
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(i)] : zero;
    }
};

bool operator==(const QPoly& f, const QPoly& g);

QPoly poly_add(const QPoly& f, const QPoly& g);
QPoly poly_sub(const QPoly& f, const QPoly& g);
QPoly poly_neg(const QPoly& f);
QPoly poly_scale(const QPoly& f, const QuadScalar& k, const FieldSpec& fs);
QPoly poly_mul(const QPoly& f, const QPoly& g, const FieldSpec& fs);
std::pair<QPoly, QPoly> poly_divrem(const QPoly& f, const QPoly& g, const FieldSpec& fs);
QPoly poly_derivative(const QPoly& f);
QPoly poly_monic(const QPoly& f, const FieldSpec& fs);

/** Monic gcd by the Euclidean algorithm (exact; gcd(0,0) = 0). */
QPoly poly_gcd(const QPoly& f, const QPoly& g, const FieldSpec& fs);

QuadScalar poly_eval(const QPoly& f, const QuadScalar& x, const FieldSpec& fs);

/** X - a. */
QPoly poly_linear(const QuadScalar& a);

/** Coefficients of f(X + a), i.e. the Taylor expansion of f at a. */
QPoly poly_taylor_at(const QPoly& f, const QuadScalar& a, const FieldSpec& fs);

/** Coefficient-wise sqrt(p)-conjugate. */
QPoly poly_conj(const QPoly& f);

/** Split f = A + B*sqrt(p) into rational-coefficient parts (A, B). */
std::pair<std::vector<Rat>, std::vector<Rat>> poly_split(const QPoly& f);

/**
 * Squarefree decomposition (Yun): returns pairs (g_k, k) with f = lc * prod
 * g_k^k, each g_k monic squarefree, pairwise coprime, k >= 1 strictly
 * increasing.  Characteristic zero, so derivatives behave.
 */
std::vector<std::pair<QPoly, int>> poly_squarefree(const QPoly& f, const FieldSpec& fs);

} // namespace ultraspec
