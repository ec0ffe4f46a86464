#include "ultraspec/vary.hpp"

#include "ultraspec/errors.hpp"

namespace ultraspec {

namespace {

SpectrumReport report_at(const ModuleInput& m, const QuadScalar& center, const Exponent& rho,
                         const FieldSpec& f) {
    DomainSpec dom = DomainPoint{PointT23{center, rho}};
    SpectrumReport report = std::visit(
        [&](const auto& module) { return module_spectrum(module, dom, f); }, m);
    if (report.valuation_only)
        throw validation_error("unresolved eigenvalues leave the spectrum valuation-only");
    return report;
}

}  // namespace

void validate_segment(const SegmentSpec& seg, const FieldSpec& f) {
    check_scalar(seg.center, f);
    if (seg.rho_high.infinite || seg.rho_low.infinite)
        throw validation_error("segment endpoints must be finite radii");
    if (cmp(seg.rho_high, seg.rho_low) < 0)
        throw validation_error("segment interval is inverted");
    for (std::size_t i = 0; i < seg.grid.size(); ++i) {
        const Exponent& rho = seg.grid[i];
        if (rho.infinite || cmp(rho, seg.rho_low) < 0 || cmp(rho, seg.rho_high) > 0)
            throw validation_error("grid exponent outside the segment interval");
        if (i > 0 && cmp(seg.grid[i - 1], rho) >= 0)
            throw validation_error("grid must be strictly increasing");
    }
}

std::vector<SegmentSample> sample_segment(const ModuleInput& m, const SegmentSpec& seg,
                                          const FieldSpec& f) {
    validate_segment(seg, f);
    std::vector<SegmentSample> samples;
    samples.reserve(seg.grid.size());
    for (const Exponent& rho : seg.grid) {
        SegmentSample s;
        s.rho = rho;
        s.type_tag = in_value_group(rho, f) ? 2 : 3;
        s.spectrum = report_at(m, seg.center, rho, f).spectrum;
        samples.push_back(std::move(s));
    }
    return samples;
}

Neighborhood margin_neighborhood(const Spectrum& s, const Rat& margin, const FieldSpec& f) {
    if (margin <= 0) throw validation_error("margin must be positive");
    if (s.disks.empty()) throw validation_error("empty spectrum has no neighborhoods");
    Neighborhood n;
    Exponent eps{margin};
    for (const Disk& d : s.disks) {
        OpenDisk enlarged{d.center, d.radius_exp - eps};
        OpenAnnulus boundary{d.center, d.radius_exp + eps, d.radius_exp - eps};
        n.regions.push_back(enlarged);
        n.parts.push_back({OpenRegion{enlarged}});
        n.parts.push_back({OpenRegion{boundary}});
    }
    validate_neighborhood(n, f);
    return n;
}

std::optional<Exponent> left_continuity_threshold(const ModuleInput& m, const SegmentSpec& seg,
                                                  const Exponent& rho_y, const Neighborhood& n,
                                                  const FieldSpec& f) {
    validate_segment(seg, f);
    if (rho_y.infinite || cmp(rho_y, seg.rho_low) < 0 || cmp(rho_y, seg.rho_high) > 0)
        throw validation_error("y lies outside the segment");
    validate_neighborhood(n, f);
    Spectrum at_y = report_at(m, seg.center, rho_y, f).spectrum;
    if (!neighborhood_member(at_y, n, f))
        throw validation_error("not a neighborhood of the spectrum at y");

    bool closest = true;
    for (const Exponent& rho : seg.grid) {  // ascending, so closest-first above rho_y
        if (cmp(rho, rho_y) <= 0) continue;
        Spectrum sampled = report_at(m, seg.center, rho, f).spectrum;
        if (!neighborhood_member(sampled, n, f)) {
            if (closest) return std::nullopt;
            return rho - rho_y;
        }
        closest = false;
    }
    return seg.rho_high - rho_y;
}

DiscontinuityReport discontinuity_witness(const ModuleInput& m, const Exponent& rho_y,
                                          const FieldSpec& f) {
    if (f.mode != FieldMode::PAdic)
        throw unsupported_error("discontinuity witness needs a p-adic field");
    if (!in_value_group(rho_y, f)) throw validation_error("witness requires type (2)");

    Exponent s = omega_exponent(f) - rho_y;
    QuadScalar delta = scalar_with_valuation(s.a, f);
    SpectrumReport at_y = report_at(m, QuadScalar(0L), rho_y, f);

    // The witness must sit at distance exactly omega/r(y) from its base
    // eigenvalue and no closer to any other; a unit multiple of delta that
    // avoids every residue collision does it.  When all rigid directions are
    // taken (eigenvalues exactly omega/r(y) apart), no witness exists in the
    // quadratic extension.
    std::optional<QuadScalar> witness;
    for (const auto& [base, mult] : at_y.eigenvalues) {
        (void)mult;
        for (long u = 1; u <= 10 && !witness; ++u) {
            if (u % static_cast<long>(f.p) == 0) continue;
            QuadScalar b = qs_add(base, qs_mul(QuadScalar(u), delta, f));
            bool clear = true;
            for (const auto& [other, om] : at_y.eigenvalues) {
                (void)om;
                if (cmp(valuation(qs_sub(b, other), f), s) > 0) clear = false;
            }
            if (clear) witness = b;
        }
        if (witness) break;
    }
    if (!witness)
        throw unsupported_error("no rigid witness direction avoids the other eigenvalues");

    DiscontinuityReport report;
    report.witness = *witness;
    report.boundary_exp = s;
    report.witness_in_spectrum = spectrum_contains(at_y.spectrum, PointT1{*witness}, f);

    report.violating = margin_neighborhood(at_y.spectrum, Rat(1, 2), f);
    OpenDisk probe{*witness, s};
    report.violating.regions.push_back(probe);
    report.violating.parts.push_back({OpenRegion{probe}});
    validate_neighborhood(report.violating, f);

    report.separation_constant = true;
    report.never_enters = true;
    for (long k = 1; k <= 10; ++k) {
        Exponent rho = rho_y - Exponent(make_rat(k, 4));
        Spectrum above = report_at(m, QuadScalar(0L), rho, f).spectrum;
        report.sample_rhos.push_back(rho);
        auto sep = separation(*witness, above, f);
        report.separations.push_back(sep ? *sep : Exponent::inf());
        if (!sep || cmp(*sep, s) != 0) report.separation_constant = false;
        if (neighborhood_member(above, report.violating, f)) report.never_enters = false;
    }
    return report;
}

}  // namespace ultraspec
