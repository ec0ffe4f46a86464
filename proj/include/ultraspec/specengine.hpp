#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ultraspec/diffmod.hpp"

namespace ultraspec {

// One leftover characteristic-polynomial factor with no roots in the ground
// field: the spectrum's centers under it stay symbolic, but its Newton
// slopes (p-adic mode) still pin the root valuations down exactly.
struct UnresolvedInfo {
    QPoly factor;
    int multiplicity = 1;
    std::vector<std::pair<Rat, int>> slopes;  // empty outside p-adic mode
};

struct SpectrumReport {
    Spectrum spectrum;               // empty iff no eigenvalue was resolved
    Exponent enclosing_radius_exp;   // infinite for an empty spectrum
    std::string case_tag;
    bool valuation_only = false;     // some factors stayed unresolved
    bool mixed_kind = false;         // spectrum mixes closed and closure-open disks
    std::vector<std::pair<QuadScalar, int>> eigenvalues;  // resolved, with multiplicity
    std::vector<UnresolvedInfo> unresolved;
};

// Mode half of a case tag: "padic", "char0" or "trivial".
const char* mode_of(const FieldSpec& f);

// The case-table row that fires for this domain and field: "<mode>-<kind>"
// with mode in {padic, char0, trivial} and kind in {disk, affinoid, union,
// point2, point3, point4}.  An affinoid without holes fires the disk row and
// is tagged accordingly.
std::string derivation_case_tag(const DomainSpec& dom, const FieldSpec& f);

// Spectrum of the plain derivation d/dS on the given domain.  Every row
// yields a single disk centered at 0; disjoint unions normalize the
// per-component disks (concentric, so the largest absorbs the rest, closed
// kind winning ties).
Spectrum derivation_spectrum(const DomainSpec& dom, const FieldSpec& f);

// Spectrum of the module with constant matrix g: the normalized union of
// eigenvalue translates of the derivation spectrum.  Multiplicities do not
// move the set; they are reported for the caller.
SpectrumReport module_spectrum(const QMatrix& g, const DomainSpec& dom, const FieldSpec& f);
SpectrumReport module_spectrum(const DiffPoly& p, const DomainSpec& dom, const FieldSpec& f);

// Spectrum of the commutative transform Q applied to the derivation:
// poly_image of each derivation-spectrum disk, normalized.
Spectrum diffpoly_operator_spectrum(const DiffPoly& p, const DomainSpec& dom,
                                    const FieldSpec& f);

enum class SpectraVerdict { Equal, OperatorInsideModule, ModuleInsideOperator, Incomparable };
const char* verdict_string(SpectraVerdict v);

struct ComparisonReport {
    SpectrumReport module_report;
    Spectrum operator_spectrum;
    Exponent operator_enclosing_exp;
    SpectraVerdict verdict = SpectraVerdict::Incomparable;
};

// Module spectrum (via the companion matrix) side by side with the operator
// spectrum, with a mutual-containment verdict.  A valuation-only module
// spectrum is reported incomparable: the missing centers block the test.
ComparisonReport spectra_report(const DiffPoly& p, const DomainSpec& dom, const FieldSpec& f);

// Necessary condition for an alternative eigenvalue list to present the same
// module: every candidate lies in the computed spectrum.
bool alternative_eigenvalues_compatible(const SpectrumReport& r,
                                        const std::vector<QuadScalar>& alt,
                                        const FieldSpec& f);

}  // namespace ultraspec
