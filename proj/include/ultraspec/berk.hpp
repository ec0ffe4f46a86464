#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ultraspec/poly.hpp"

namespace ultraspec {

/**
 * Kind of a disk in the affine Berkovich line over the ground field.
 *
 *  - Closed: the closed disk D+(c, r) = { x : delta_c(x) <= r }.
 *  - ClosureOpen: the closure of the open disk D-(c, r), i.e. the open disk
 *    together with its Shilov point x_{c,r}; strictly smaller than the
 *    closed disk of the same radius (it misses the rigid boundary).
 */
enum class DiskKind { Closed, ClosureOpen };

/** A disk: center scalar plus radius exponent (radius = base^(-radius_exp)). */
struct Disk {
    QuadScalar center;
    Exponent radius_exp;
    DiskKind kind = DiskKind::Closed;
};

bool operator==(const Disk& a, const Disk& b);

/** Type-(1) rigid point: a scalar of the field. */
struct PointT1 {
    QuadScalar value;
};

/**
 * Type-(2)/(3) point x_{c,r}: the sup-seminorm of the closed disk
 * D+(c, base^(-radius_exp)).  Type (2) when the radius lies in the value
 * group, type (3) otherwise; the data is the same.
 */
struct PointT23 {
    QuadScalar center;
    Exponent radius_exp;
};

/**
 * Type-(4) point: the limit of a strictly decreasing family of closed disks
 * with empty rigid intersection, represented by finitely many witnesses of
 * the family (outermost first, radii strictly decreasing, centers a
 * coherent chain) plus the declared limit radius r(x) > 0.
 */
struct PointT4 {
    std::vector<PointT23> family;
    Exponent declared_radius_exp;
};

using BerkPoint = std::variant<PointT1, PointT23, PointT4>;

/** Radius invariant r(x): 0-exponent convention is: infinite for type (1). */
Exponent point_radius_exp(const BerkPoint& pt);

/**
 * Finite union of disks in normal form: no disk contained in another,
 * components grouped (two closure-of-open disks of equal radius whose
 * centers are exactly that radius apart share their Shilov point and form
 * one connected component).
 */
struct Spectrum {
    std::vector<Disk> disks;
    std::vector<std::vector<int>> components; // partition of disk indices
};

/** Open region: an open disk or an open annulus (both Berkovich-open). */
struct OpenDisk {
    QuadScalar center;
    Exponent radius_exp;
};

/**
 * Open annulus { x : r_inner < delta_c(x) < r_outer }.  Exponents invert the
 * radius order: inner_exp > outer_exp.
 */
struct OpenAnnulus {
    QuadScalar center;
    Exponent inner_exp;
    Exponent outer_exp;
};

using OpenRegion = std::variant<OpenDisk, OpenAnnulus>;

/**
 * Neighborhood datum for continuity checks: an open cover element U (a
 * finite union of open regions) together with finitely many "parts", each a
 * finite union of open regions contained in U.  A spectrum is a member when
 * it lies inside U and meets every part.
 */
struct Neighborhood {
    std::vector<OpenRegion> regions;            // the union U
    std::vector<std::vector<OpenRegion>> parts; // each inside U
};

// --- point/disk predicates ------------------------------------------------

/** delta_c(pt): exponent of the distance seminorm |(S - c)|(pt). */
Exponent point_center_distance(const BerkPoint& pt, const QuadScalar& c, const FieldSpec& f);

/** Exact membership of a point in a disk. */
bool contains_point(const Disk& d, const BerkPoint& pt, const FieldSpec& f);

/** Exact containment of disks as subsets of the line. */
bool disk_subset(const Disk& inner, const Disk& outer, const FieldSpec& f);

/** Exact equality of disks as subsets. */
bool disk_equal_as_set(const Disk& a, const Disk& b, const FieldSpec& f);

/** Whether two disks share their Shilov point as touching closures. */
bool disks_touch(const Disk& a, const Disk& b, const FieldSpec& f);

// --- spectrum operations ----------------------------------------------------

/**
 * Normal form of a nonempty finite union of disks: drops disks contained in
 * others, orders canonically (center valuation descending, then center
 * lexicographically, then radius exponent ascending, then kind), and groups
 * touching closures into components.  Errors on empty input.
 */
Spectrum normalize(const std::vector<Disk>& disks, const FieldSpec& f);

bool spectrum_contains(const Spectrum& s, const BerkPoint& pt, const FieldSpec& f);

/** Subset test between normalized spectra (disk-wise; exact). */
bool spectrum_subset(const Spectrum& a, const Spectrum& b, const FieldSpec& f);

/**
 * Separation of a rigid point b from a spectrum: nullopt when b is
 * contained; otherwise the exponent of min_i |b - c_i| over the disk
 * centers (the distance from b to the spectrum).
 */
std::optional<Exponent> separation(const QuadScalar& b, const Spectrum& s, const FieldSpec& f);

/** Exponent of max(|c_i|, R_i) over the disks: the enclosing radius about 0. */
Exponent enclosing_radius(const Spectrum& s, const FieldSpec& f);

/**
 * Exact image of a disk under a nonconstant polynomial: center Q(a), radius
 * exponent min over i >= 1 of (val(c_i) + i * R_exp) with c_i the Taylor
 * coefficients of Q at the center, kind preserved.
 */
Disk poly_image(const QPoly& q, const Disk& d, const FieldSpec& f);

// --- neighborhoods ----------------------------------------------------------

bool region_contains_point(const OpenRegion& r, const BerkPoint& pt, const FieldSpec& f);

/** Exact test: is the disk contained in the union of open regions? */
bool disk_subset_of_union(const Disk& d, const std::vector<OpenRegion>& regions, const FieldSpec& f);

/** Exact test: is the region contained in the union of open regions? */
bool region_subset_of_union(const OpenRegion& r, const std::vector<OpenRegion>& regions, const FieldSpec& f);

/** Exact test: does the disk meet the union of open regions? */
bool disk_meets_union(const Disk& d, const std::vector<OpenRegion>& regions, const FieldSpec& f);

/** Well-formedness: every part is contained in U. */
void validate_neighborhood(const Neighborhood& n, const FieldSpec& f);

/**
 * Membership: the spectrum lies inside U and meets every part.  Validates
 * well-formedness first.
 */
bool neighborhood_member(const Spectrum& s, const Neighborhood& n, const FieldSpec& f);

} // namespace ultraspec
