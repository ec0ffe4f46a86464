#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ultraspec/errors.hpp"
#include "ultraspec/specengine.hpp"
#include "test_util.hpp"

using namespace ultraspec;
using namespace ultraspec::testutil;

namespace {

const FieldSpec F2 = FieldSpec::padic(2);
const FieldSpec F3 = FieldSpec::padic(3);
const FieldSpec F0 = FieldSpec::equal_char_zero();
const FieldSpec FT = FieldSpec::trivial();

QuadScalar qs(long u) { return QuadScalar(u); }
Exponent ex(long a) { return Exponent(Rat(a)); }

Disk cd(long c, long e) { return Disk{qs(c), ex(e), DiskKind::Closed}; }
OpenDisk od(long c, long e) { return OpenDisk{qs(c), ex(e)}; }

DomainSpec disk_domain(long c, long e) { return DomainDisk{cd(c, e)}; }

bool spectra_equal(const Spectrum& a, const Spectrum& b, const FieldSpec& f) {
    return spectrum_subset(a, b, f) && spectrum_subset(b, a, f);
}

bool single_disk(const Spectrum& s, long center, const Exponent& e, DiskKind kind,
                 const FieldSpec& f) {
    if (s.disks.size() != 1) return false;
    const Disk& d = s.disks[0];
    return valuation(qs_sub(d.center, qs(center)), f).infinite &&
           cmp(d.radius_exp, e) == 0 && d.kind == kind;
}

}  // namespace

TEST_CASE("derivation spectrum: residual characteristic p rows") {
    // Unit disk at p=2 and p=3: radius omega.
    CHECK(single_disk(derivation_spectrum(disk_domain(0, 0), F2), 0, ex(1),
                      DiskKind::Closed, F2));
    CHECK(single_disk(derivation_spectrum(disk_domain(0, 0), F3), 0,
                      Exponent(Rat(1, 2)), DiskKind::Closed, F3));
    // Doubling the domain radius halves the spectrum radius.
    CHECK(single_disk(derivation_spectrum(disk_domain(0, -1), F2), 0, ex(2),
                      DiskKind::Closed, F2));
    // Annulus with unit radii: same spectrum as the unit disk.
    CHECK(single_disk(derivation_spectrum(DomainAffinoid{cd(0, 0), {od(0, 0)}}, F2), 0,
                      ex(1), DiskKind::Closed, F2));
    // Affinoid whose smallest radius is the hole's.
    CHECK(single_disk(derivation_spectrum(DomainAffinoid{cd(0, 0), {od(0, 1)}}, F2), 0,
                      ex(0), DiskKind::Closed, F2));
    // Affinoid with no holes follows the disk row.
    CHECK(single_disk(derivation_spectrum(DomainAffinoid{cd(0, 0), {}}, F2), 0, ex(1),
                      DiskKind::Closed, F2));
    // Points of every type give the closed disk of radius omega/r(x).
    CHECK(single_disk(derivation_spectrum(DomainPoint{PointT23{qs(0), ex(1)}}, F2), 0,
                      ex(0), DiskKind::Closed, F2));
    CHECK(single_disk(
        derivation_spectrum(DomainPoint{PointT23{qs(0), Exponent(Rat(0), Rat(1))}}, F2), 0,
        Exponent(Rat(1), Rat(-1)), DiskKind::Closed, F2));
    CHECK(single_disk(
        derivation_spectrum(
            DomainPoint{PointT4{{PointT23{qs(0), ex(0)}, PointT23{qs(2), ex(1)}}, ex(2)}},
            F2),
        0, ex(-1), DiskKind::Closed, F2));
}

TEST_CASE("derivation spectrum: residual characteristic zero rows") {
    for (const FieldSpec* f : {&F0, &FT}) {
        // Unit disk: closure of the open unit disk.
        CHECK(single_disk(derivation_spectrum(disk_domain(0, 0), *f), 0, ex(0),
                          DiskKind::ClosureOpen, *f));
        // Affinoid with a hole: closed disk of radius 1/min r_i.
        CHECK(single_disk(derivation_spectrum(DomainAffinoid{cd(0, 0), {od(0, 1)}}, *f), 0,
                          ex(-1), DiskKind::Closed, *f));
        // Types 2 and 3: closed; type 4: closure-open.
        CHECK(single_disk(derivation_spectrum(DomainPoint{PointT23{qs(0), ex(1)}}, *f), 0,
                          ex(-1), DiskKind::Closed, *f));
        CHECK(single_disk(
            derivation_spectrum(
                DomainPoint{PointT4{{PointT23{qs(0), ex(0)}, PointT23{qs(0), ex(1)}}, ex(2)}},
                *f),
            0, ex(-2), DiskKind::ClosureOpen, *f));
    }
}

TEST_CASE("derivation spectrum: disjoint unions collapse concentrically") {
    // Two p-adic disks: the smaller domain component produces the larger
    // spectrum disk (radius omega/r), which absorbs the other.
    DomainSpec u1 = DomainUnion{{DomainDisk{cd(0, 0)},
                                 DomainDisk{Disk{QuadScalar{Rat(1, 2)}, ex(1), DiskKind::Closed}}}};
    CHECK(single_disk(derivation_spectrum(u1, F2), 0, ex(0), DiskKind::Closed, F2));

    // Residual char 0, tie between a disk and an annulus: closed absorbs the
    // closure-open of equal radius.
    DomainSpec u2 = DomainUnion{{DomainDisk{Disk{QuadScalar{Rat(1, 2)}, ex(0), DiskKind::Closed}},
                                 DomainAffinoid{cd(0, 0), {od(0, 0)}}}};
    Spectrum s2 = derivation_spectrum(u2, F0);
    CHECK(single_disk(s2, 0, ex(0), DiskKind::Closed, F0));

    // Strictly larger open side wins and keeps its closure-open kind: a tiny
    // domain disk yields a big closure-open spectrum disk (radius 1/r).
    DomainSpec u3 = DomainUnion{{DomainDisk{Disk{QuadScalar{Rat(1, 8)}, ex(3), DiskKind::Closed}},
                                 DomainAffinoid{cd(0, -1), {od(0, -1)}}}};
    Spectrum s3 = derivation_spectrum(u3, F0);
    CHECK(single_disk(s3, 0, ex(-3), DiskKind::ClosureOpen, F0));

    CHECK_THROWS_AS(derivation_spectrum(DomainUnion{{DomainDisk{cd(0, 0)}, DomainDisk{cd(0, 0)}}}, F2),
                    validation_error);
}

TEST_CASE("module spectrum: frozen examples") {
    // Nilpotent 2x2: eigenvalue 0 twice, spectrum equal to the derivation's.
    QMatrix nil = {{qs(0), qs(1)}, {qs(0), qs(0)}};
    SpectrumReport r1 = module_spectrum(nil, disk_domain(0, 0), F2);
    CHECK(single_disk(r1.spectrum, 0, ex(1), DiskKind::Closed, F2));
    CHECK_FALSE(r1.valuation_only);
    CHECK(r1.case_tag == "padic-disk");
    REQUIRE(r1.eigenvalues.size() == 1);
    CHECK(r1.eigenvalues[0].first == qs(0));
    CHECK(r1.eigenvalues[0].second == 2);
    CHECK(cmp(r1.enclosing_radius_exp, ex(1)) == 0);

    // diag(0,1) at p=3: two disjoint translates.
    QMatrix d01 = {{qs(0), qs(0)}, {qs(0), qs(1)}};
    SpectrumReport r2 = module_spectrum(d01, disk_domain(0, 0), F3);
    CHECK(r2.spectrum.disks.size() == 2);
    CHECK(r2.spectrum.components.size() == 2);
    CHECK(cmp(r2.enclosing_radius_exp, ex(0)) == 0);

    // diag(0,2) at p=2: |2| = 1/2 <= omega, so the translates merge.
    QMatrix d02 = {{qs(0), qs(0)}, {qs(0), qs(2)}};
    SpectrumReport r3 = module_spectrum(d02, disk_domain(0, 0), F2);
    CHECK(single_disk(r3.spectrum, 0, ex(1), DiskKind::Closed, F2));

    // Repeated eigenvalue is reported with its multiplicity.
    QMatrix d55 = {{qs(5), qs(0)}, {qs(0), qs(5)}};
    SpectrumReport r4 = module_spectrum(d55, disk_domain(0, 0), F2);
    REQUIRE(r4.eigenvalues.size() == 1);
    CHECK(r4.eigenvalues[0].first == qs(5));
    CHECK(r4.eigenvalues[0].second == 2);
    CHECK(spectra_equal(r4.spectrum, module_spectrum(QMatrix{{qs(5)}}, disk_domain(0, 0), F2).spectrum, F2));
}

TEST_CASE("module spectrum: unresolved factors give valuation-only reports") {
    // X^2 - 3 has no roots over Q(sqrt2): fully unresolved.
    SpectrumReport r1 = module_spectrum(DiffPoly{{qs(-3), qs(0)}}, disk_domain(0, 0), F2);
    CHECK(r1.valuation_only);
    CHECK(r1.spectrum.disks.empty());
    CHECK(r1.enclosing_radius_exp.infinite);
    REQUIRE(r1.unresolved.size() == 1);
    CHECK(r1.unresolved[0].factor.degree() == 2);
    REQUIRE(r1.unresolved[0].slopes.size() == 1);
    CHECK(r1.unresolved[0].slopes[0] == std::pair<Rat, int>{Rat(0), 2});

    // (X - 1)(X^2 - 3): partially resolved.
    SpectrumReport r2 = module_spectrum(DiffPoly{{qs(3), qs(-3), qs(-1)}}, disk_domain(0, 0), F2);
    CHECK(r2.valuation_only);
    CHECK(single_disk(r2.spectrum, 1, ex(1), DiskKind::Closed, F2));
    CHECK(cmp(r2.enclosing_radius_exp, ex(0)) == 0);

    // Newton slopes are not computed outside p-adic mode.
    SpectrumReport r3 = module_spectrum(DiffPoly{{qs(-3), qs(0)}}, disk_domain(0, 0), F0);
    CHECK(r3.valuation_only);
    REQUIRE(r3.unresolved.size() == 1);
    CHECK(r3.unresolved[0].slopes.empty());
}

TEST_CASE("operator spectra and comparison verdicts") {
    // P = D: identity transform.
    Spectrum op1 = diffpoly_operator_spectrum(DiffPoly{{qs(0)}}, disk_domain(0, 0), F2);
    CHECK(spectra_equal(op1, derivation_spectrum(disk_domain(0, 0), F2), F2));
    ComparisonReport c1 = spectra_report(DiffPoly{{qs(0)}}, disk_domain(0, 0), F2);
    CHECK(c1.verdict == SpectraVerdict::Equal);

    // P = D^2 on the unit disk at p=2: image D+(0, 1/4) vs module D+(0, 1/2).
    Spectrum op2 = diffpoly_operator_spectrum(DiffPoly{{qs(0), qs(0)}}, disk_domain(0, 0), F2);
    CHECK(single_disk(op2, 0, ex(2), DiskKind::Closed, F2));
    ComparisonReport c2 = spectra_report(DiffPoly{{qs(0), qs(0)}}, disk_domain(0, 0), F2);
    CHECK(c2.verdict == SpectraVerdict::OperatorInsideModule);
    CHECK(std::string(verdict_string(c2.verdict)) == "operator ⊊ module");
    CHECK(cmp(c2.operator_enclosing_exp, ex(2)) == 0);

    // P = D - 3: module disk sits at the eigenvalue 3, operator disk at
    // Q(0) = -3; at p=2 these are the same set, so the verdict is Equal.
    ComparisonReport c3 = spectra_report(DiffPoly{{qs(-3)}}, disk_domain(0, 0), F2);
    CHECK(c3.verdict == SpectraVerdict::Equal);
    CHECK(single_disk(c3.operator_spectrum, -3, ex(1), DiskKind::Closed, F2));
    CHECK(single_disk(c3.module_report.spectrum, 3, ex(1), DiskKind::Closed, F2));

    // P = D^2 on a tiny domain disk: squaring expands, module inside operator.
    ComparisonReport c4 = spectra_report(DiffPoly{{qs(0), qs(0)}}, disk_domain(0, 5), F2);
    CHECK(c4.verdict == SpectraVerdict::ModuleInsideOperator);

    // P = D^2 - 2 on the unit disk at p=2: eigenvalues +-sqrt2 sit away from
    // the operator disk centered at -2; neither side contains the other.
    ComparisonReport c5 = spectra_report(DiffPoly{{qs(-2), qs(0)}}, disk_domain(0, 0), F2);
    CHECK(c5.verdict == SpectraVerdict::Incomparable);

    // Valuation-only module spectra refuse the comparison.
    ComparisonReport c6 = spectra_report(DiffPoly{{qs(-3), qs(0)}}, disk_domain(0, 0), F2);
    CHECK(c6.verdict == SpectraVerdict::Incomparable);
    CHECK(c6.module_report.valuation_only);
}

TEST_CASE("alternative eigenvalue compatibility check") {
    QMatrix d01 = {{qs(0), qs(0)}, {qs(0), qs(1)}};
    SpectrumReport r = module_spectrum(d01, disk_domain(0, 0), F3);
    CHECK(alternative_eigenvalues_compatible(r, {qs(0), qs(1)}, F3));
    CHECK(alternative_eigenvalues_compatible(r, {qs(3), qs(1)}, F3));
    CHECK_FALSE(alternative_eigenvalues_compatible(r, {QuadScalar{Rat(1, 3)}}, F3));
    CHECK_FALSE(alternative_eigenvalues_compatible(r, {qs(0), QuadScalar{Rat(1, 3)}}, F3));

    SpectrumReport empty = module_spectrum(DiffPoly{{qs(-3), qs(0)}}, disk_domain(0, 0), F2);
    CHECK_FALSE(alternative_eigenvalues_compatible(empty, {qs(0)}, F2));
}

TEST_CASE("case-table totality: every mode and kind has a distinct tag") {
    std::vector<std::pair<DomainSpec, std::string>> kinds;
    kinds.emplace_back(disk_domain(0, 0), "disk");
    kinds.emplace_back(DomainAffinoid{cd(0, 0), {od(0, 1)}}, "affinoid");
    // Radii strictly below 1 so the components stay disjoint even under the
    // trivial valuation, where every nonzero center difference has value 0.
    kinds.emplace_back(DomainUnion{{DomainDisk{cd(0, 1)}, DomainDisk{cd(1, 1)}}}, "union");
    // Exponent 0 lies in every mode's value group, sqrt2 in none of them.
    kinds.emplace_back(DomainPoint{PointT23{qs(0), ex(0)}}, "point2");
    kinds.emplace_back(DomainPoint{PointT23{qs(0), Exponent(Rat(0), Rat(1))}}, "point3");
    kinds.emplace_back(
        DomainPoint{PointT4{{PointT23{qs(0), ex(0)}, PointT23{qs(2), ex(1)}}, ex(2)}},
        "point4");

    std::set<std::string> seen;
    for (const FieldSpec* f : {&F2, &F0, &FT}) {
        for (const auto& [dom, kindName] : kinds) {
            std::string tag = derivation_case_tag(dom, *f);
            CHECK(tag == std::string(mode_of(*f)) + "-" + kindName);
            CHECK(seen.insert(tag).second);
            // The tag is what module_spectrum reports, and the row fires.
            SpectrumReport r = module_spectrum(QMatrix{{qs(0)}}, dom, *f);
            CHECK(r.case_tag == tag);
            CHECK(r.spectrum.disks.size() == 1);
        }
    }
    CHECK(seen.size() == 18);

    // Affinoid without holes is tagged as the disk row.
    CHECK(derivation_case_tag(DomainAffinoid{cd(0, 0), {}}, F2) == "padic-disk");
    // In trivial mode only exponent 0 lies in the value group: the same
    // point radius flips type 2 to type 3.
    CHECK(derivation_case_tag(DomainPoint{PointT23{qs(0), ex(1)}}, FT) == "trivial-point3");
    CHECK(derivation_case_tag(DomainPoint{PointT23{qs(0), ex(0)}}, FT) == "trivial-point2");
}

TEST_CASE("property: translation equivariance of module spectra") {
    std::mt19937 rng(2024u);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> dimd(1, 3);
        int n = dimd(rng);
        QMatrix g(static_cast<std::size_t>(n), std::vector<QuadScalar>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = random_scalar(rng, F2);
        QuadScalar lam = random_scalar(rng, F2);
        QMatrix shifted = g;
        for (int i = 0; i < n; ++i)
            shifted[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
                qs_add(shifted[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)], lam);

        SpectrumReport base = module_spectrum(g, disk_domain(0, 0), F2);
        SpectrumReport moved = module_spectrum(shifted, disk_domain(0, 0), F2);
        REQUIRE_FALSE(base.valuation_only);
        std::vector<Disk> translated;
        for (const Disk& d : base.spectrum.disks)
            translated.push_back(Disk{qs_add(d.center, lam), d.radius_exp, d.kind});
        CHECK(spectra_equal(moved.spectrum, normalize(translated, F2), F2));
    }
}

TEST_CASE("property: block-triangular spectra are unions of block spectra") {
    std::mt19937 rng(555u);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> dimd(1, 2);
        int n1 = dimd(rng), n2 = dimd(rng);
        int n = n1 + n2;
        QMatrix g(static_cast<std::size_t>(n), std::vector<QuadScalar>(static_cast<std::size_t>(n)));
        auto fill_upper = [&](int off, int dim) {
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j)
                    g[static_cast<std::size_t>(off + i)][static_cast<std::size_t>(off + j)] =
                        random_scalar(rng, F2);
        };
        fill_upper(0, n1);
        fill_upper(n1, n2);
        for (int i = 0; i < n1; ++i)
            for (int j = n1; j < n; ++j)
                g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = random_scalar(rng, F2);

        auto block = [&](int off, int dim) {
            QMatrix b(static_cast<std::size_t>(dim), std::vector<QuadScalar>(static_cast<std::size_t>(dim)));
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        g[static_cast<std::size_t>(off + i)][static_cast<std::size_t>(off + j)];
            return b;
        };
        SpectrumReport whole = module_spectrum(g, disk_domain(0, 0), F2);
        SpectrumReport b1 = module_spectrum(block(0, n1), disk_domain(0, 0), F2);
        SpectrumReport b2 = module_spectrum(block(n1, n2), disk_domain(0, 0), F2);
        std::vector<Disk> both = b1.spectrum.disks;
        both.insert(both.end(), b2.spectrum.disks.begin(), b2.spectrum.disks.end());
        CHECK(spectra_equal(whole.spectrum, normalize(both, F2), F2));
    }
}

TEST_CASE("property: enclosing radius law") {
    std::mt19937 rng(31u);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> dimd(1, 3);
        int n = dimd(rng);
        QMatrix g(static_cast<std::size_t>(n), std::vector<QuadScalar>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = random_scalar(rng, F2);
        std::uniform_int_distribution<int> rd(-2, 2);
        DomainSpec dom = disk_domain(0, rd(rng));
        SpectrumReport r = module_spectrum(g, dom, F2);
        Exponent base = derivation_spectrum(dom, F2).disks[0].radius_exp;
        Exponent expected = Exponent::inf();
        for (const auto& [a, mult] : r.eigenvalues) {
            (void)mult;
            expected = min(expected, min(valuation(a, F2), base));
        }
        CHECK(cmp(r.enclosing_radius_exp, expected) == 0);
    }
}
