#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ultraspec/specengine.hpp"

namespace ultraspec {

using ModuleInput = std::variant<QMatrix, DiffPoly>;

/**
 * Radial segment of the line: the center stays fixed and only the radius
 * exponent varies, from rho_high (the small-radius end) down to rho_low.
 * The grid lists the exponents to sample, strictly increasing and contained
 * in [rho_low, rho_high].
 */
struct SegmentSpec {
    QuadScalar center;
    Exponent rho_high;
    Exponent rho_low;
    std::vector<Exponent> grid;
};

void validate_segment(const SegmentSpec& seg, const FieldSpec& f);

struct SegmentSample {
    Exponent rho;
    int type_tag = 2;  // 2 when rho lies in the value group, else 3
    Spectrum spectrum;
};

/**
 * Module spectra along the segment, one per grid exponent, in grid order.
 * Modules whose eigenvalues stay unresolved are refused: their spectra carry
 * no centers to vary.
 */
std::vector<SegmentSample> sample_segment(const ModuleInput& m, const SegmentSpec& seg,
                                          const FieldSpec& f);

/**
 * Neighborhood of s built from a positive margin: every disk is enlarged by
 * the margin into an open disk (union U), and each disk contributes two
 * parts — its enlarged disk and the open annulus of width `margin` around
 * its boundary sphere.
 */
Neighborhood margin_neighborhood(const Spectrum& s, const Rat& margin, const FieldSpec& f);

/**
 * Largest grid-certified delta such that every approach-side sample
 * (rho' > rho_y, radius smaller than r(y)) with |rho' - rho_y| < delta is a
 * member of n.  Scans closest-first; the first failing sample caps the
 * threshold at its distance, a failure at the closest sample yields nullopt,
 * and a fully clean scan certifies the whole approach width
 * rho_high - rho_y.
 */
std::optional<Exponent> left_continuity_threshold(const ModuleInput& m, const SegmentSpec& seg,
                                                  const Exponent& rho_y, const Neighborhood& n,
                                                  const FieldSpec& f);

struct DiscontinuityReport {
    QuadScalar witness;                 // rigid point b on the boundary sphere
    Exponent boundary_exp;              // omega exponent - rho_y
    bool witness_in_spectrum = false;   // b lies in the spectrum at y
    Neighborhood violating;             // neighborhood of Sigma_y no upper sample enters
    std::vector<Exponent> sample_rhos;  // samples strictly above y (rho' < rho_y)
    std::vector<Exponent> separations;  // distance from b to each upper spectrum
    bool separation_constant = false;   // every separation equals boundary_exp
    bool never_enters = false;          // no upper spectrum is a member of `violating`
};

/**
 * Exhibits the jump at a type-2 point: a rigid witness b at distance exactly
 * omega/r(y) from an eigenvalue, which the ten spectra sampled just above y
 * (at rho_y - k/4) keep at constant separation, together with a neighborhood
 * of the spectrum at y that none of them enters.
 */
DiscontinuityReport discontinuity_witness(const ModuleInput& m, const Exponent& rho_y,
                                          const FieldSpec& f);

}  // namespace ultraspec
