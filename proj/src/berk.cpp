#include "ultraspec/berk.hpp"

#include <algorithm>
#include <numeric>

#include "ultraspec/errors.hpp"

namespace ultraspec {

bool operator==(const Disk& a, const Disk& b) {
    return a.center == b.center && cmp(a.radius_exp, b.radius_exp) == 0 && a.kind == b.kind;
}

Exponent point_radius_exp(const BerkPoint& pt) {
    if (std::holds_alternative<PointT1>(pt)) return Exponent::inf();
    if (const auto* p = std::get_if<PointT23>(&pt)) return p->radius_exp;
    return std::get<PointT4>(pt).declared_radius_exp;
}

namespace {

// The point datum a type-4 point is evaluated through: its deepest family
// witness center together with the declared limit radius.
PointT23 t4_model(const PointT4& p) {
    if (p.family.empty()) throw validation_error("type-4 point with empty family");
    return PointT23{p.family.back().center, p.declared_radius_exp};
}

} // namespace

Exponent point_center_distance(const BerkPoint& pt, const QuadScalar& c, const FieldSpec& f) {
    if (const auto* p1 = std::get_if<PointT1>(&pt))
        return valuation(qs_sub(p1->value, c), f);
    PointT23 p = std::holds_alternative<PointT23>(pt) ? std::get<PointT23>(pt)
                                                      : t4_model(std::get<PointT4>(pt));
    // delta_c(x_{a,r}) = max(|c - a|, r): exponents take the min.
    return min(valuation(qs_sub(p.center, c), f), p.radius_exp);
}

bool contains_point(const Disk& d, const BerkPoint& pt, const FieldSpec& f) {
    const Exponent& e = d.radius_exp;
    if (const auto* p1 = std::get_if<PointT1>(&pt)) {
        Exponent v = valuation(qs_sub(p1->value, d.center), f);
        return d.kind == DiskKind::Closed ? v >= e : v > e;
    }
    if (const auto* p = std::get_if<PointT23>(&pt)) {
        Exponent v = valuation(qs_sub(p->center, d.center), f);
        if (d.kind == DiskKind::Closed) return v >= e && p->radius_exp >= e;
        // Closure of the open disk: strictly inside, or exactly the Shilov
        // point x_{center,R} itself.
        if (min(v, p->radius_exp) > e) return true;
        return cmp(p->radius_exp, e) == 0 && v >= e;
    }
    // Type 4: strictly-inside semantics only; the point never coincides with
    // a Shilov point of a disk (its radius is not attained).
    PointT23 m = t4_model(std::get<PointT4>(pt));
    Exponent v = valuation(qs_sub(m.center, d.center), f);
    if (d.kind == DiskKind::Closed) return v >= e && m.radius_exp >= e;
    return min(v, m.radius_exp) > e;
}

bool disk_subset(const Disk& inner, const Disk& outer, const FieldSpec& f) {
    Exponent v = valuation(qs_sub(inner.center, outer.center), f);
    const Exponent& e1 = inner.radius_exp;
    const Exponent& e2 = outer.radius_exp;
    if (outer.kind == DiskKind::Closed) return e1 >= e2 && v >= e2;
    if (inner.kind == DiskKind::Closed) return e1 > e2 && v > e2;
    return e1 >= e2 && v > e2;
}

bool disk_equal_as_set(const Disk& a, const Disk& b, const FieldSpec& f) {
    return disk_subset(a, b, f) && disk_subset(b, a, f);
}

bool disks_touch(const Disk& a, const Disk& b, const FieldSpec& f) {
    if (a.kind != DiskKind::ClosureOpen || b.kind != DiskKind::ClosureOpen) return false;
    if (cmp(a.radius_exp, b.radius_exp) != 0) return false;
    return cmp(valuation(qs_sub(a.center, b.center), f), a.radius_exp) == 0;
}

namespace {

struct DiskKey {
    Exponent center_val;
    const Disk* d;
};

bool center_lex_less(const QuadScalar& x, const QuadScalar& y) {
    int c = cmp(x.u, y.u);
    if (c != 0) return c < 0;
    return cmp(x.v, y.v) < 0;
}

// Canonical order: center valuation descending (infinite first), center
// lexicographic, radius exponent ascending (outermost first), closed before
// closure-of-open.
bool canonical_less(const DiskKey& a, const DiskKey& b) {
    int c = cmp(a.center_val, b.center_val);
    if (c != 0) return c > 0;
    if (!(a.d->center == b.d->center)) return center_lex_less(a.d->center, b.d->center);
    c = cmp(a.d->radius_exp, b.d->radius_exp);
    if (c != 0) return c < 0;
    return a.d->kind < b.d->kind;
}

} // namespace

Spectrum normalize(const std::vector<Disk>& disks, const FieldSpec& f) {
    if (disks.empty()) throw validation_error("normalize: empty disk list");
    std::vector<DiskKey> keys;
    keys.reserve(disks.size());
    for (const Disk& d : disks) keys.push_back({valuation(d.center, f), &d});
    std::stable_sort(keys.begin(), keys.end(), canonical_less);

    // Deduplicate set-equal disks (first in canonical order wins), then drop
    // disks strictly contained in another; strict containment is a partial
    // order, so keeping the maximal elements is sound.
    std::vector<Disk> uniq;
    for (const DiskKey& k : keys) {
        bool dup = false;
        for (const Disk& kept : uniq)
            if (disk_equal_as_set(*k.d, kept, f)) { dup = true; break; }
        if (!dup) uniq.push_back(*k.d);
    }
    std::vector<Disk> kept;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        bool inside = false;
        for (std::size_t j = 0; j < uniq.size() && !inside; ++j)
            if (j != i && disk_subset(uniq[i], uniq[j], f) && !disk_subset(uniq[j], uniq[i], f))
                inside = true;
        if (!inside) kept.push_back(uniq[i]);
    }

    // Components: touching closure-of-open disks share their Shilov point.
    std::vector<int> parent(kept.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = i + 1; j < kept.size(); ++j)
            if (disks_touch(kept[i], kept[j], f))
                parent[static_cast<std::size_t>(find(static_cast<int>(j)))] = find(static_cast<int>(i));

    Spectrum s;
    s.disks = std::move(kept);
    std::vector<int> root_order;
    for (std::size_t i = 0; i < s.disks.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (std::find(root_order.begin(), root_order.end(), r) == root_order.end())
            root_order.push_back(r);
    }
    for (int r : root_order) {
        std::vector<int> comp;
        for (std::size_t i = 0; i < s.disks.size(); ++i)
            if (find(static_cast<int>(i)) == r) comp.push_back(static_cast<int>(i));
        s.components.push_back(std::move(comp));
    }
    return s;
}

bool spectrum_contains(const Spectrum& s, const BerkPoint& pt, const FieldSpec& f) {
    for (const Disk& d : s.disks)
        if (contains_point(d, pt, f)) return true;
    return false;
}

bool spectrum_subset(const Spectrum& a, const Spectrum& b, const FieldSpec& f) {
    // A disk is connected, so inside a normalized finite union it must lie
    // inside a single member disk; disk-wise subsumption is exact here.
    for (const Disk& da : a.disks) {
        bool covered = false;
        for (const Disk& db : b.disks)
            if (disk_subset(da, db, f)) { covered = true; break; }
        if (!covered) return false;
    }
    return true;
}

std::optional<Exponent> separation(const QuadScalar& b, const Spectrum& s, const FieldSpec& f) {
    BerkPoint pt = PointT1{b};
    if (spectrum_contains(s, pt, f)) return std::nullopt;
    bool first = true;
    Exponent best;
    for (const Disk& d : s.disks) {
        Exponent v = valuation(qs_sub(b, d.center), f);
        if (first || v > best) { best = v; first = false; }
    }
    return best;
}

Exponent enclosing_radius(const Spectrum& s, const FieldSpec& f) {
    if (s.disks.empty()) throw validation_error("enclosing radius of an empty spectrum");
    bool first = true;
    Exponent best;
    for (const Disk& d : s.disks) {
        Exponent e = min(valuation(d.center, f), d.radius_exp);
        if (first || e < best) { best = e; first = false; }
    }
    return best;
}

Disk poly_image(const QPoly& q, const Disk& d, const FieldSpec& f) {
    if (q.degree() < 1) throw validation_error("image under a constant polynomial");
    if (d.radius_exp.infinite) throw validation_error("image of a degenerate disk");
    QPoly taylor = poly_taylor_at(q, d.center, f);
    Disk out;
    out.center = taylor.c[0];
    out.kind = d.kind;
    bool first = true;
    for (int i = 1; i <= taylor.degree(); ++i) {
        if (taylor.coeff(i).is_zero()) continue;
        Exponent e = valuation(taylor.coeff(i), f) + d.radius_exp * Rat(i);
        if (first || e < out.radius_exp) { out.radius_exp = e; first = false; }
    }
    // A nonconstant polynomial has a nonzero coefficient in degree >= 1.
    return out;
}

// --- neighborhoods ----------------------------------------------------------

namespace {

const QuadScalar& region_center(const OpenRegion& r) {
    if (const auto* d = std::get_if<OpenDisk>(&r)) return d->center;
    return std::get<OpenAnnulus>(r).center;
}

void check_region(const OpenRegion& r) {
    if (const auto* a = std::get_if<OpenAnnulus>(&r)) {
        if (!(a->inner_exp > a->outer_exp))
            throw validation_error("open annulus requires inner radius < outer radius");
    }
}

} // namespace

bool region_contains_point(const OpenRegion& r, const BerkPoint& pt, const FieldSpec& f) {
    if (const auto* d = std::get_if<OpenDisk>(&r))
        return point_center_distance(pt, d->center, f) > d->radius_exp;
    const OpenAnnulus& a = std::get<OpenAnnulus>(r);
    Exponent v = point_center_distance(pt, a.center, f);
    return v > a.outer_exp && v < a.inner_exp;
}

namespace {

// Exact containment machinery.  Membership of any point x in a disk or open
// region depends only on the distance vector (delta_{c'}(x)) over the finite
// set C' of centers involved.  Every realizable distance vector is realized
// by a point x_{c,t} on a branch through one of those centers: if x = x_{c'',t}
// with c'' arbitrary, pick c in C' maximizing val(c'' - c); the ultrametric
// forces delta_{c'}(x_{c,t}) = delta_{c'}(x) coordinate-wise.  On a fixed
// branch the verdict of every predicate is constant between consecutive
// "critical" exponents (center-difference valuations and region radii), so
// sampling the criticals, interval midpoints, the two extremes, and the
// rigid center decides containment exactly.  Shilov-point subtleties sit at
// critical exponents, which are always sampled.
struct SkeletonTester {
    const FieldSpec& f;
    std::vector<QuadScalar> centers;
    std::vector<Exponent> criticals; // shared exponent pool (finite)

    void add_center(const QuadScalar& c) {
        for (const QuadScalar& e : centers)
            if (e == c) return;
        centers.push_back(c);
    }
    void add_critical(const Exponent& e) {
        if (e.infinite) return;
        for (const Exponent& x : criticals)
            if (cmp(x, e) == 0) return;
        criticals.push_back(e);
    }
    void add_region(const OpenRegion& r) {
        check_region(r);
        add_center(region_center(r));
        if (const auto* d = std::get_if<OpenDisk>(&r)) {
            add_critical(d->radius_exp);
        } else {
            const OpenAnnulus& a = std::get<OpenAnnulus>(r);
            add_critical(a.inner_exp);
            add_critical(a.outer_exp);
        }
    }

    // Every point of the source (tested via src) must lie in the union.
    template <typename SrcContains>
    bool subset_of_union(SrcContains src, const std::vector<OpenRegion>& regions) {
        // Cross-center valuations are criticals too.
        for (std::size_t i = 0; i < centers.size(); ++i)
            for (std::size_t j = i + 1; j < centers.size(); ++j)
                add_critical(valuation(qs_sub(centers[i], centers[j]), f));

        std::vector<Exponent> levels = criticals;
        std::sort(levels.begin(), levels.end(), [](const Exponent& x, const Exponent& y) { return x < y; });
        std::vector<Exponent> samples;
        if (levels.empty()) {
            samples.push_back(Exponent(Rat(0)));
        } else {
            samples.push_back(levels.front() - Exponent(Rat(1)));
            for (std::size_t i = 0; i < levels.size(); ++i) {
                samples.push_back(levels[i]);
                if (i + 1 < levels.size())
                    samples.push_back((levels[i] + levels[i + 1]) / 2);
            }
            samples.push_back(levels.back() + Exponent(Rat(1)));
        }

        for (const QuadScalar& c : centers) {
            std::vector<BerkPoint> pts;
            for (const Exponent& t : samples) pts.push_back(PointT23{c, t});
            pts.push_back(PointT1{c});
            for (const BerkPoint& pt : pts) {
                if (!src(pt)) continue;
                bool covered = false;
                for (const OpenRegion& r : regions)
                    if (region_contains_point(r, pt, f)) { covered = true; break; }
                if (!covered) return false;
            }
        }
        return true;
    }
};

} // namespace

bool disk_subset_of_union(const Disk& d, const std::vector<OpenRegion>& regions, const FieldSpec& f) {
    SkeletonTester t{f, {}, {}};
    t.add_center(d.center);
    t.add_critical(d.radius_exp);
    for (const OpenRegion& r : regions) t.add_region(r);
    return t.subset_of_union([&](const BerkPoint& pt) { return contains_point(d, pt, f); }, regions);
}

bool region_subset_of_union(const OpenRegion& r, const std::vector<OpenRegion>& regions, const FieldSpec& f) {
    SkeletonTester t{f, {}, {}};
    t.add_region(r);
    for (const OpenRegion& u : regions) t.add_region(u);
    return t.subset_of_union([&](const BerkPoint& pt) { return region_contains_point(r, pt, f); }, regions);
}

bool disk_meets_union(const Disk& d, const std::vector<OpenRegion>& regions, const FieldSpec& f) {
    for (const OpenRegion& r : regions) {
        check_region(r);
        Exponent v = valuation(qs_sub(d.center, region_center(r)), f);
        const Exponent& er = d.radius_exp;
        if (const auto* od = std::get_if<OpenDisk>(&r)) {
            // Either the region's center lies in the disk, or the whole disk
            // sits at constant distance |a-c| from c which must be < rho.
            bool center_in = d.kind == DiskKind::Closed ? v >= er : v > er;
            if (center_in || v > od->radius_exp) return true;
        } else {
            const OpenAnnulus& a = std::get<OpenAnnulus>(r);
            bool center_in = d.kind == DiskKind::Closed ? v >= er : v > er;
            if (center_in) {
                // Distances to c realized inside the disk fill [0, R]; the
                // annulus meets that iff its inner radius is below R.
                if (a.inner_exp > er) return true;
            } else {
                if (v > a.outer_exp && v < a.inner_exp) return true;
            }
        }
    }
    return false;
}

void validate_neighborhood(const Neighborhood& n, const FieldSpec& f) {
    for (const OpenRegion& r : n.regions) check_region(r);
    for (const auto& part : n.parts) {
        if (part.empty()) throw validation_error("neighborhood part with no regions");
        for (const OpenRegion& r : part)
            if (!region_subset_of_union(r, n.regions, f))
                throw validation_error("neighborhood part not contained in the cover union");
    }
}

bool neighborhood_member(const Spectrum& s, const Neighborhood& n, const FieldSpec& f) {
    validate_neighborhood(n, f);
    for (const Disk& d : s.disks)
        if (!disk_subset_of_union(d, n.regions, f)) return false;
    for (const auto& part : n.parts) {
        bool met = false;
        for (const Disk& d : s.disks)
            if (disk_meets_union(d, part, f)) { met = true; break; }
        if (!met) return false;
    }
    return true;
}

} // namespace ultraspec
