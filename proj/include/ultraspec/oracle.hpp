#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ultraspec/specengine.hpp"

namespace ultraspec {

/**
 * Finite-dimensional model of the function space on a disk or annulus:
 * basis monomials (S-c)^i with i in 0..N (disk) or -N..N (annulus).
 *
 * Norms are the exact weighted max-norms of the full space restricted to the
 * band: a monomial (S-c)^i has norm exponent i*rho_eff(i), where rho_eff is
 * the disk radius exponent, or the outer radius exponent for i >= 0 and the
 * inner one for i < 0 on an annulus (the sup over the annulus sits at the
 * outer boundary for nonnegative powers and at the inner one for poles).
 */
struct TruncatedSpace {
    enum class Model { Disk, Annulus };
    Model model = Model::Disk;
    QuadScalar center;
    Exponent outer_exp;   // disk radius exponent, or annulus outer exponent
    Exponent inner_exp;   // annulus inner exponent (>= outer_exp); unused for disks
    long degree_bound = 0;

    static TruncatedSpace disk(const QuadScalar& c, const Exponent& rho, long N);
    static TruncatedSpace annulus(const QuadScalar& c, const Exponent& rho0,
                                  const Exponent& rho1, long N);

    Exponent rho_eff(long i) const { return i >= 0 ? outer_exp : inner_exp; }
    long lo() const { return model == Model::Disk ? 0 : -degree_bound; }
    long hi() const { return degree_bound; }
    bool in_band(long i) const { return i >= lo() && i <= hi(); }
};

/**
 * Truncated-space models for a domain: one per connected component.  Radius
 * data is all that matters to the probes, so an affinoid with holes becomes
 * a single annulus whose inner exponent is the largest hole exponent (the
 * smallest hole: the binding Mittag-Leffler summand); a type-(2)/(3) point
 * becomes the degenerate annulus at its radius; a type-(4) point is modeled
 * on its deepest family witness with the declared limit radius.
 */
std::vector<TruncatedSpace> model_for(const DomainSpec& dom, const FieldSpec& f, long N);

/** Element of a truncated space: sparse coefficients, index -> scalar. */
struct TruncatedElement {
    std::map<long, QuadScalar> coeff;
};

/** Exact norm exponent: min_i (val(a_i) + i*rho_eff(i)); infinite for 0. */
Exponent element_norm(const TruncatedElement& e, const TruncatedSpace& sp, const FieldSpec& f);

/** Exact matrix on a truncated space: (row, col) -> scalar, rows/cols in band. */
struct TruncatedOperator {
    std::map<std::pair<long, long>, QuadScalar> entries;
};

/**
 * Exact operator-norm exponent: min over nonzero entries (i, j) of
 * val(entry) + i*rho_eff(i) - j*rho_eff(j); infinite for the zero operator.
 */
Exponent operator_norm(const TruncatedOperator& op, const TruncatedSpace& sp, const FieldSpec& f);

/**
 * Honest matrix of (d/dS)^n on the band: entry (j-n, j) is the falling
 * factorial j(j-1)...(j-n+1).  Rows falling below an annulus band are
 * dropped (boundary policy); on a disk the image naturally stays in band.
 */
TruncatedOperator derivation_power(const TruncatedSpace& sp, long n);

/**
 * Exact operator-norm exponent of (d/dS)^n on the truncated model of the
 * domain (the min across components for unions).  For a disk model with
 * N >= n this equals val(n!) - n*rho exactly (norm |n!|/r^n); on an annulus
 * the polar rows push it to val(n!) - n*max(rho_outer, rho_inner), exact as
 * soon as the band keeps the first polar row (band >= n+1).
 *
 * Throws validation_error("degenerate truncation...") when N < n.
 */
Exponent truncated_power_norm(long n, const DomainSpec& dom, const FieldSpec& f, long N);

/**
 * The norm ladder ||d^n||^(1/n) at n = base^1..base^K against the spectral
 * norm: per-n exponents are nondecreasing toward the limit (the radius
 * exponent of the derivation spectrum), and the final gap is exactly
 * 1/((p-1) p^K) in p-adic mode and 0 in the residual-characteristic-zero
 * modes.
 */
struct SpectralEstimate {
    std::vector<std::pair<long, Exponent>> per_n;  // (n, exponent of ||d^n||^(1/n))
    Exponent limit_exp;
    Exponent gap;        // limit_exp minus the last per-n exponent
    bool monotone = false;
};
SpectralEstimate spectral_norm_estimate(const DomainSpec& dom, const FieldSpec& f, int K);

/**
 * Kernel membership of d - a on a disk domain, decided by the exact limit of
 * the exponential-series test: exp(a(S-c)) lies in the function space iff
 * its term exponents n*val(a) - val(n!) + n*rho diverge to +infinity, i.e.
 * iff val(a) > omega_exp - rho (residual char p) or val(a) > -rho (residual
 * char 0).  True means a is strictly inside the derivation spectrum.
 */
bool kernel_witness(const QuadScalar& a, const DomainSpec& dom, const FieldSpec& f);

/**
 * Boundary divergence witness (p-adic only): at |a| = omega/r the equation
 * (d - a) y = g with the sparse source g (terms beta^l / alpha^(p^l - 1) at
 * degree p^l - 1, |alpha| = r, |beta| = |p|^(1/2)) has solution coefficients
 * whose weighted exponents val(a_{p^l}) + (p^l - 1)*rho equal -l/2 exactly:
 * the magnitudes |p|^(-l/2) grow without bound, so y leaves the space.
 * Returns the exponents at levels 0..L.
 *
 * Requires rho and omega_exp - rho realizable as scalar valuations
 * (half-integers; p in {2, 3}), else unsupported_error.
 */
std::vector<Exponent> divergence_witness(const FieldSpec& f, const Exponent& rho, int L);

/**
 * Inversion probe on an annulus-type domain (affinoid with holes, or a
 * type-(2)/(3) point): solves (d - a) y = 1/(S-c) by the polar recurrence
 * a_n = (n-1)!/(-a)^n and classifies convergence by the slope of the term
 * norm exponents s_n = val(a_n) - n*rho_inner over the window (N/2, N]:
 * slope <= 0 means the series diverges (a inside the spectrum).  The closed
 * form it must agree with is val(a) >= omega_exp - rho_inner.
 */
struct ResolventProbe {
    bool skipped = false;  // a = 0: always inside, nothing to invert
    bool diverges = false;
    bool closed_form_diverges = false;
    Exponent slope;
    std::vector<Exponent> tail;  // s_n for n = 1..N
    bool agree() const { return skipped || diverges == closed_form_diverges; }
};
ResolventProbe annulus_resolvent_probe(const QuadScalar& a, const DomainSpec& dom,
                                       const FieldSpec& f, long N = 256);

/**
 * Distance-to-spectrum probe: for a outside the closed-form derivation
 * spectrum, inverts d - a on the truncation (triangular solve, diagonal
 * -1/a), measures the growth of ||(d-a)^{-n}|| and returns the negated
 * slope, which estimates the separation exponent of a from the spectrum.
 * Throws validation_error when a lies inside the spectrum.
 */
struct ResolventRadius {
    Exponent estimate;
    Exponent separation_exp;
    bool within_tolerance = false;  // |estimate - separation| <= 1/10
    std::vector<Exponent> power_exps;  // ||B^n|| exponents, n = 1..K
};
ResolventRadius resolvent_radius_probe(const QuadScalar& a, const DomainSpec& dom,
                                       const FieldSpec& f, long N = 16, int K = 24);

/**
 * Residual-characteristic-zero boundedness check at a type-(4) point: for
 * |a| equal to the reciprocal declared radius, the polynomial solve
 * y = -sum_k g^(k)/a^(k+1) of (d - a) y = g satisfies |y| <= r(x)|g| at
 * every family witness.  Reports the per-level ratio exponents
 * norm(y) - norm(g) (each must be >= the declared radius exponent).
 */
struct Type4Report {
    QPoly g;
    QPoly y;
    std::vector<Exponent> ratio_exps;
    Exponent min_ratio;
    bool bound_holds = false;
};
Type4Report type4_bound_check(const PointT4& x, const QuadScalar& a, const QPoly& g,
                              const FieldSpec& f);
/** Same check against a deterministic pseudo-random polynomial of degree <= N. */
Type4Report type4_bound_check(const PointT4& x, const QuadScalar& a, const FieldSpec& f,
                              int N, unsigned long seed);

/**
 * Finite-dimensional shadow of the block-triangular spectrum law: the
 * characteristic polynomial of [[G1, C], [0, G2]] factors as the product of
 * the blocks', and the eigenvalue multisets merge.
 */
struct BlockSpectrumReport {
    bool charpoly_product_ok = false;
    bool eigen_union_ok = false;
    std::vector<std::pair<QuadScalar, int>> merged_roots;
};
BlockSpectrumReport finite_dim_block_spectrum_check(const QMatrix& g1, const QMatrix& g2,
                                                    const QMatrix& c, const FieldSpec& f);

}  // namespace ultraspec
