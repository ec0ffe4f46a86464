#include "ultraspec/specengine.hpp"

#include <algorithm>

#include "ultraspec/errors.hpp"

namespace ultraspec {

const char* mode_of(const FieldSpec& f) {
    switch (f.mode) {
        case FieldMode::PAdic: return "padic";
        case FieldMode::EqualCharZero: return "char0";
        case FieldMode::Trivial: return "trivial";
    }
    return "unknown";
}

namespace {

Exponent point_domain_radius(const DomainPoint& p) {
    if (const auto* t = std::get_if<PointT23>(&p.x)) return t->radius_exp;
    return std::get<PointT4>(p.x).declared_radius_exp;
}

Exponent outer_radius_exp(const ConnectedDomain& c) {
    if (const auto* d = std::get_if<DomainDisk>(&c)) return d->disk.radius_exp;
    return std::get<DomainAffinoid>(c).outer.radius_exp;
}

// Largest radius exponent (= smallest radius) among the affinoid's outer
// disk and holes; with at least one hole the holes decide, since validation
// keeps their radii at or below the outer's.
Exponent smallest_radius_exp(const DomainAffinoid& a) {
    Exponent e = a.outer.radius_exp;
    for (const OpenDisk& h : a.holes) e = max(e, h.radius_exp);
    return e;
}

Disk spectrum_disk_for(const ConnectedDomain& c, const FieldSpec& f) {
    bool charp = !f.residual_char_zero();
    const auto* aff = std::get_if<DomainAffinoid>(&c);
    bool diskRow = !aff || aff->holes.empty();
    Exponent rho = diskRow ? outer_radius_exp(c) : smallest_radius_exp(*aff);
    if (charp)
        return Disk{QuadScalar(0), omega_exponent(f) - rho, DiskKind::Closed};
    if (diskRow)
        return Disk{QuadScalar(0), -rho, DiskKind::ClosureOpen};
    return Disk{QuadScalar(0), -rho, DiskKind::Closed};
}

}  // namespace

std::string derivation_case_tag(const DomainSpec& dom, const FieldSpec& f) {
    std::string kind;
    if (const auto* disk = std::get_if<DomainDisk>(&dom)) {
        (void)disk;
        kind = "disk";
    } else if (const auto* aff = std::get_if<DomainAffinoid>(&dom)) {
        kind = aff->holes.empty() ? "disk" : "affinoid";
    } else if (std::holds_alternative<DomainUnion>(dom)) {
        kind = "union";
    } else {
        const auto& p = std::get<DomainPoint>(dom);
        if (const auto* t = std::get_if<PointT23>(&p.x))
            kind = in_value_group(t->radius_exp, f) ? "point2" : "point3";
        else
            kind = "point4";
    }
    return std::string(mode_of(f)) + "-" + kind;
}

Spectrum derivation_spectrum(const DomainSpec& dom, const FieldSpec& f) {
    validate_domain(dom, f);
    bool charp = !f.residual_char_zero();

    if (const auto* disk = std::get_if<DomainDisk>(&dom))
        return normalize({spectrum_disk_for(ConnectedDomain{*disk}, f)}, f);
    if (const auto* aff = std::get_if<DomainAffinoid>(&dom))
        return normalize({spectrum_disk_for(ConnectedDomain{*aff}, f)}, f);
    if (const auto* u = std::get_if<DomainUnion>(&dom)) {
        std::vector<Disk> disks;
        disks.reserve(u->components.size());
        for (const auto& c : u->components) disks.push_back(spectrum_disk_for(c, f));
        return normalize(disks, f);
    }

    const auto& p = std::get<DomainPoint>(dom);
    Exponent rho = point_domain_radius(p);
    if (charp)
        return normalize({Disk{QuadScalar(0), omega_exponent(f) - rho, DiskKind::Closed}}, f);
    bool type4 = std::holds_alternative<PointT4>(p.x);
    DiskKind kind = type4 ? DiskKind::ClosureOpen : DiskKind::Closed;
    return normalize({Disk{QuadScalar(0), -rho, kind}}, f);
}

SpectrumReport module_spectrum(const QMatrix& g, const DomainSpec& dom, const FieldSpec& f) {
    check_square(g);
    QPoly chi = characteristic_polynomial(g, f);
    EigenAnalysis analysis = eigenvalue_multiset(chi, f);
    Spectrum base = derivation_spectrum(dom, f);

    SpectrumReport report;
    report.case_tag = derivation_case_tag(dom, f);
    report.eigenvalues = analysis.roots;
    report.valuation_only = !analysis.unresolved.empty();
    for (const auto& [factor, mult] : analysis.unresolved) {
        UnresolvedInfo info;
        info.factor = factor;
        info.multiplicity = mult;
        if (f.mode == FieldMode::PAdic)
            info.slopes = newton_polygon_slopes(factor, f).slopes;
        report.unresolved.push_back(std::move(info));
    }

    std::vector<Disk> translated;
    translated.reserve(analysis.roots.size() * base.disks.size());
    for (const auto& [a, mult] : analysis.roots) {
        (void)mult;
        for (const Disk& d : base.disks)
            translated.push_back(Disk{qs_add(d.center, a), d.radius_exp, d.kind});
    }
    if (!translated.empty()) {
        report.spectrum = normalize(translated, f);
        report.enclosing_radius_exp = enclosing_radius(report.spectrum, f);
    } else {
        report.enclosing_radius_exp = Exponent::inf();
    }
    bool closed = false, copen = false;
    for (const Disk& d : report.spectrum.disks) {
        closed = closed || d.kind == DiskKind::Closed;
        copen = copen || d.kind == DiskKind::ClosureOpen;
    }
    report.mixed_kind = closed && copen;
    return report;
}

SpectrumReport module_spectrum(const DiffPoly& p, const DomainSpec& dom, const FieldSpec& f) {
    return module_spectrum(companion_matrix(p), dom, f);
}

Spectrum diffpoly_operator_spectrum(const DiffPoly& p, const DomainSpec& dom,
                                    const FieldSpec& f) {
    if (p.order() == 0) throw validation_error("differential polynomial needs order >= 1");
    std::vector<QuadScalar> cs = p.g;
    cs.emplace_back(1);
    QPoly q{std::move(cs)};
    Spectrum base = derivation_spectrum(dom, f);
    std::vector<Disk> images;
    images.reserve(base.disks.size());
    for (const Disk& d : base.disks) images.push_back(poly_image(q, d, f));
    return normalize(images, f);
}

const char* verdict_string(SpectraVerdict v) {
    switch (v) {
        case SpectraVerdict::Equal: return "equal";
        case SpectraVerdict::OperatorInsideModule: return "operator ⊊ module";
        case SpectraVerdict::ModuleInsideOperator: return "module ⊊ operator";
        case SpectraVerdict::Incomparable: return "incomparable";
    }
    return "incomparable";
}

ComparisonReport spectra_report(const DiffPoly& p, const DomainSpec& dom, const FieldSpec& f) {
    ComparisonReport out;
    out.module_report = module_spectrum(p, dom, f);
    out.operator_spectrum = diffpoly_operator_spectrum(p, dom, f);
    out.operator_enclosing_exp = enclosing_radius(out.operator_spectrum, f);
    if (out.module_report.valuation_only || out.module_report.spectrum.disks.empty()) {
        out.verdict = SpectraVerdict::Incomparable;
        return out;
    }
    bool opInMod = spectrum_subset(out.operator_spectrum, out.module_report.spectrum, f);
    bool modInOp = spectrum_subset(out.module_report.spectrum, out.operator_spectrum, f);
    if (opInMod && modInOp) out.verdict = SpectraVerdict::Equal;
    else if (opInMod) out.verdict = SpectraVerdict::OperatorInsideModule;
    else if (modInOp) out.verdict = SpectraVerdict::ModuleInsideOperator;
    else out.verdict = SpectraVerdict::Incomparable;
    return out;
}

bool alternative_eigenvalues_compatible(const SpectrumReport& r,
                                        const std::vector<QuadScalar>& alt,
                                        const FieldSpec& f) {
    if (r.spectrum.disks.empty()) return false;
    for (const QuadScalar& a : alt)
        if (!spectrum_contains(r.spectrum, PointT1{a}, f)) return false;
    return true;
}

}  // namespace ultraspec
