#include "ultraspec/diffmod.hpp"

#include <algorithm>

#include "ultraspec/errors.hpp"

namespace ultraspec {

namespace {

// ---------------------------------------------------------------------------
// matrix helpers

QMatrix mat_mul(const QMatrix& a, const QMatrix& b, const FieldSpec& f) {
    std::size_t n = a.size();
    QMatrix r(n, std::vector<QuadScalar>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                r[i][j] = qs_add(r[i][j], qs_mul(a[i][k], b[k][j], f));
        }
    return r;
}

// ---------------------------------------------------------------------------
// exact rational factorization helpers (desk-scale degrees)
//
// All coefficients that reach this layer are rational; the integer model
// clears denominators and divides out the content.  Divisor enumeration is
// capped: inputs beyond the cap are rejected loudly rather than silently
// mis-classified.

const Int kDivisorCap = Int(1) << 44;
const long kTupleBudget = 400000;

Rat rat_of(const QuadScalar& s) {
    if (!(s.v == 0))
        throw validation_error("internal: expected rational coefficient");
    return s.u;
}

std::vector<Int> integer_model(const QPoly& a) {
    // lcm of denominators, then content removal; leading coefficient > 0.
    Int l = 1;
    for (const auto& c : a.c) {
        Int den = rat_of(c).get_den();
        l = l / gcd(l, den) * den;
    }
    std::vector<Int> out;
    out.reserve(a.c.size());
    for (const auto& c : a.c) {
        Rat v = rat_of(c) * Rat(l);
        out.push_back(v.get_num());  // exact: denominator cleared
    }
    Int content = 0;
    for (const auto& v : out) content = gcd(content, v);
    if (content == 0) return out;  // zero polynomial
    if (out.back() < 0) content = -content;
    for (auto& v : out) v /= content;
    return out;
}

Int int_eval(const std::vector<Int>& p, long x) {
    Int acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

std::vector<Int> divisors_capped(const Int& value) {
    Int v = abs(value);
    if (v > kDivisorCap)
        throw unsupported_error("coefficient size exceeds the exact factorization cap");
    std::vector<Int> out;
    for (Int i = 1; i * i <= v; ++i) {
        if (v % i == 0) {
            out.push_back(i);
            out.push_back(v / i);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

QPoly poly_from_rats(const std::vector<Rat>& cs) {
    std::vector<QuadScalar> q;
    q.reserve(cs.size());
    for (const auto& r : cs) q.emplace_back(r);
    return QPoly(std::move(q));
}

// Strips every rational root of the rational-coefficient monic polynomial
// `a` (with repetition), appending them to `roots`.
void strip_rational_roots(QPoly& a, const FieldSpec& f, std::vector<QuadScalar>& roots) {
    // Root at zero first.
    while (a.degree() >= 1 && a.coeff(0).is_zero()) {
        roots.emplace_back(QuadScalar(0));
        a = poly_divrem(a, poly_linear(QuadScalar(0)), f).first;
    }
    if (a.degree() < 1) return;
    std::vector<Int> z = integer_model(a);
    std::vector<Int> nums = divisors_capped(z.front());
    std::vector<Int> dens = divisors_capped(z.back());
    for (const Int& n : nums)
        for (const Int& d : dens) {
            if (gcd(n, d) != 1) continue;
            for (int sign = 0; sign < 2; ++sign) {
                Rat cand = sign ? Rat(-n, d) : Rat(n, d);
                cand.canonicalize();
                QuadScalar r{cand};
                while (a.degree() >= 1 && poly_eval(a, r, f).is_zero()) {
                    roots.push_back(r);
                    a = poly_divrem(a, poly_linear(r), f).first;
                }
            }
        }
}

// Searches for a degree-d integer factor of the rational-coefficient
// polynomial `a` by interpolation through divisor tuples at small integer
// points (values are nonzero once rational roots are stripped).  Returns the
// monic factor over Q, or nullopt if none exists.  `certified` is cleared
// when the search was skipped for budget reasons (only possible for d >= 3).
std::optional<QPoly> interpolation_factor(const QPoly& a, int d, const FieldSpec& f,
                                          bool* certified) {
    static const long kPoints[] = {0, 1, -1, 2, -2, 3, -3, 4, -4};
    std::vector<Int> z = integer_model(a);
    std::vector<long> xs(kPoints, kPoints + d + 1);
    std::vector<std::vector<Int>> divs;
    long tuples = 1;
    for (long x : xs) {
        Int v = int_eval(z, x);
        if (v == 0)
            throw validation_error("internal: rational root not stripped before factor search");
        divs.push_back(divisors_capped(v));
        long count = static_cast<long>(divs.back().size()) * 2;
        if (tuples > kTupleBudget / std::max(count, 1L)) tuples = kTupleBudget + 1;
        else tuples *= count;
    }
    if (tuples > kTupleBudget) {
        if (d <= 2)
            throw unsupported_error("coefficient size exceeds the exact factorization cap");
        if (certified) *certified = false;
        return std::nullopt;
    }

    // Odometer over signed divisor tuples; first coordinate positive (a
    // factor and its negation divide together).
    std::vector<std::size_t> idx(xs.size(), 0);
    std::vector<int> sgn(xs.size(), 1);
    auto advance = [&]() -> bool {
        for (std::size_t i = xs.size(); i-- > 0;) {
            if (i != 0 && sgn[i] == 1) { sgn[i] = -1; return true; }
            sgn[i] = 1;
            if (++idx[i] < divs[i].size()) return true;
            idx[i] = 0;
        }
        return false;
    };
    do {
        // Lagrange interpolation through (xs[j], sgn[j]*divs[j][idx[j]]).
        std::vector<Rat> g(static_cast<std::size_t>(d) + 1, Rat(0));
        for (std::size_t j = 0; j < xs.size(); ++j) {
            Rat y = Rat(divs[j][idx[j]]) * sgn[j];
            std::vector<Rat> basis{Rat(1)};
            Rat denom(1);
            for (std::size_t m = 0; m < xs.size(); ++m) {
                if (m == j) continue;
                basis.push_back(Rat(0));
                for (std::size_t t = basis.size(); t-- > 1;)
                    basis[t] = basis[t - 1] - basis[t] * xs[m];
                basis[0] = basis[0] * Rat(-xs[m]);
                denom *= Rat(xs[j] - xs[m]);
            }
            for (std::size_t t = 0; t < basis.size(); ++t)
                g[t] += y * basis[t] / denom;
        }
        if (!(g.back() == 0)) {
            QPoly cand = poly_from_rats(g);
            if (poly_divrem(a, cand, f).second.is_zero()) return poly_monic(cand, f);
        }
    } while (advance());
    return std::nullopt;
}

// Complete factorization of a monic rational polynomial into monic factors,
// each certified irreducible over Q except possibly pieces of degree >= 3
// whose refinement exceeded the search budget (harmless: they contribute no
// roots in the ground field either way).
std::vector<QPoly> factor_rational(QPoly a, const FieldSpec& f,
                                   std::vector<QuadScalar>& roots) {
    std::vector<QPoly> out;
    strip_rational_roots(a, f, roots);
    if (a.degree() < 1) return out;

    // Extract every quadratic factor (this is exhaustive: budget overruns at
    // degree 2 throw rather than skip).
    std::vector<QPoly> pending{a};
    std::vector<QPoly> cubicPlus;
    while (!pending.empty()) {
        QPoly cur = pending.back();
        pending.pop_back();
        if (cur.degree() <= 1) {
            if (cur.degree() == 1) roots.push_back(qs_neg(cur.coeff(0)));
            continue;
        }
        if (cur.degree() <= 3) {
            // No rational roots => deg-2/3 pieces are irreducible over Q.
            if (cur.degree() == 2) out.push_back(cur);
            else cubicPlus.push_back(cur);
            continue;
        }
        bool certified = true;
        auto q = interpolation_factor(cur, 2, f, &certified);
        if (q) {
            out.push_back(*q);
            pending.push_back(poly_divrem(cur, *q, f).first);
        } else {
            cubicPlus.push_back(cur);
        }
    }

    // Refine the degree >= 3 remainder into irreducibles when affordable.
    for (std::size_t i = 0; i < cubicPlus.size(); ++i) {
        QPoly cur = cubicPlus[i];
        bool splitFound = false;
        for (int d = 3; d <= cur.degree() / 2; ++d) {
            bool certified = true;
            auto q = interpolation_factor(cur, d, f, &certified);
            if (q) {
                cubicPlus.push_back(*q);
                cubicPlus.push_back(poly_divrem(cur, *q, f).first);
                splitFound = true;
                break;
            }
            if (!certified) break;  // over budget: keep the piece as-is
        }
        if (!splitFound) out.push_back(cur);
    }
    return out;
}

// Roots in Q(sqrt p) of a monic quadratic over Q(sqrt p), if any.
std::optional<std::pair<QuadScalar, QuadScalar>> quadratic_roots(const QPoly& q,
                                                                 const FieldSpec& f) {
    QuadScalar b = q.coeff(1), c = q.coeff(0);
    QuadScalar disc = qs_sub(qs_mul(b, b, f), qs_mul(QuadScalar(4), c, f));
    auto s = qs_sqrt(disc, f);
    if (!s) return std::nullopt;
    QuadScalar half{Rat(1, 2)};
    QuadScalar r1 = qs_mul(qs_sub(*s, b), half, f);
    QuadScalar r2 = qs_mul(qs_sub(qs_neg(*s), b), half, f);
    return std::make_pair(r1, r2);
}

// Roots in Q(sqrt p) of a monic squarefree polynomial, plus leftover factors.
void collect_squarefree(const QPoly& g, const FieldSpec& f,
                        std::vector<QuadScalar>& roots, std::vector<QPoly>& unresolved) {
    if (g.degree() < 1) return;
    if (g.degree() == 1) {
        roots.push_back(qs_neg(g.coeff(0)));
        return;
    }
    auto [ap, bp] = poly_split(g);
    bool rationalCoeffs = true;
    for (const Rat& r : bp)
        if (!(r == 0)) { rationalCoeffs = false; break; }

    if (rationalCoeffs) {
        std::vector<QPoly> factors = factor_rational(g, f, roots);
        for (const QPoly& h : factors) {
            if (h.degree() == 2) {
                if (auto rr = quadratic_roots(h, f)) {
                    roots.push_back(rr->first);
                    roots.push_back(rr->second);
                    continue;
                }
            }
            unresolved.push_back(h);
        }
        return;
    }

    if (g.degree() == 2) {
        if (auto rr = quadratic_roots(g, f)) {
            roots.push_back(rr->first);
            roots.push_back(rr->second);
        } else {
            unresolved.push_back(g);
        }
        return;
    }

    // Genuine sqrt(p) coefficients in degree >= 3: every root in the ground
    // field is also a root of the rational norm polynomial g * conj(g), so
    // extract that polynomial's ground-field roots and filter.
    QPoly norm = poly_mul(g, poly_conj(g), f);
    std::vector<QuadScalar> cand;
    std::vector<QPoly> candLeftover;
    for (const auto& [part, mult] : poly_squarefree(norm, f)) {
        (void)mult;
        collect_squarefree(part, f, cand, candLeftover);
    }
    QPoly rest = g;
    for (const QuadScalar& r : cand) {
        if (rest.degree() >= 1 && poly_eval(rest, r, f).is_zero()) {
            roots.push_back(r);
            rest = poly_divrem(rest, poly_linear(r), f).first;
        }
    }
    if (rest.degree() >= 1) unresolved.push_back(rest);
}

Exponent center_val(const QuadScalar& a, const QuadScalar& b, const FieldSpec& f) {
    return valuation(qs_sub(a, b), f);
}

const Disk& outer_of(const ConnectedDomain& c) {
    if (const auto* d = std::get_if<DomainDisk>(&c)) return d->disk;
    return std::get<DomainAffinoid>(c).outer;
}

const std::vector<OpenDisk>* holes_of(const ConnectedDomain& c) {
    if (const auto* a = std::get_if<DomainAffinoid>(&c)) return &a->holes;
    return nullptr;
}

void check_connected(const ConnectedDomain& c, const FieldSpec& f) {
    const Disk& outer = outer_of(c);
    if (outer.kind != DiskKind::Closed)
        throw validation_error("domain disks must be closed");
    if (outer.radius_exp.infinite)
        throw validation_error("domain disks need positive radius");
    const auto* holes = holes_of(c);
    if (!holes) return;
    for (const OpenDisk& h : *holes) {
        if (h.radius_exp.infinite)
            throw validation_error("holes need positive radius");
        if (cmp(h.radius_exp, outer.radius_exp) < 0)
            throw validation_error("hole larger than the outer disk");
        if (cmp(center_val(h.center, outer.center, f), outer.radius_exp) < 0)
            throw validation_error("hole outside the outer disk");
    }
    for (std::size_t i = 0; i < holes->size(); ++i)
        for (std::size_t j = i + 1; j < holes->size(); ++j) {
            const OpenDisk& a = (*holes)[i];
            const OpenDisk& b = (*holes)[j];
            Exponent dv = center_val(a.center, b.center, f);
            if (cmp(dv, min(a.radius_exp, b.radius_exp)) > 0)
                throw validation_error("holes overlap");
        }
}

bool components_disjoint(const ConnectedDomain& a, const ConnectedDomain& b,
                         const FieldSpec& f) {
    const Disk& oa = outer_of(a);
    const Disk& ob = outer_of(b);
    Exponent dv = center_val(oa.center, ob.center, f);
    if (cmp(dv, min(oa.radius_exp, ob.radius_exp)) < 0) return true;
    // Outer disks are nested; the inner component must sit inside a hole.
    auto insideHole = [&](const Disk& inner, const std::vector<OpenDisk>* holes) {
        if (!holes) return false;
        for (const OpenDisk& h : *holes) {
            if (cmp(center_val(inner.center, h.center, f), h.radius_exp) > 0 &&
                cmp(inner.radius_exp, h.radius_exp) > 0)
                return true;
        }
        return false;
    };
    return insideHole(oa, holes_of(b)) || insideHole(ob, holes_of(a));
}

void check_point(const DomainPoint& d, const FieldSpec& f) {
    if (std::holds_alternative<PointT1>(d.x))
        throw validation_error("point domains need positive radius (types 2, 3 or 4)");
    if (const auto* p = std::get_if<PointT23>(&d.x)) {
        if (p->radius_exp.infinite)
            throw validation_error("point domains need positive radius (types 2, 3 or 4)");
        return;
    }
    const auto& p4 = std::get<PointT4>(d.x);
    if (p4.family.empty())
        throw validation_error("type-4 point needs a nonempty disk family");
    if (p4.declared_radius_exp.infinite)
        throw validation_error("point domains need positive radius (types 2, 3 or 4)");
    for (std::size_t l = 0; l < p4.family.size(); ++l) {
        const PointT23& dl = p4.family[l];
        if (dl.radius_exp.infinite)
            throw validation_error("type-4 family disks need positive radius");
        if (cmp(p4.declared_radius_exp, dl.radius_exp) <= 0)
            throw validation_error("type-4 declared radius must lie strictly below the family radii");
        if (l + 1 < p4.family.size()) {
            const PointT23& dn = p4.family[l + 1];
            if (cmp(dn.radius_exp, dl.radius_exp) <= 0)
                throw validation_error("type-4 family radii must decrease strictly");
            if (cmp(center_val(dn.center, dl.center, f), dl.radius_exp) < 0)
                throw validation_error("type-4 family disks must be nested");
        }
    }
}

}  // namespace

void check_square(const QMatrix& m) {
    if (m.empty()) throw validation_error("matrix must be nonempty");
    for (const auto& row : m)
        if (row.size() != m.size()) throw validation_error("matrix must be square");
}

QMatrix companion_matrix(const DiffPoly& p) {
    std::size_t n = p.order();
    if (n == 0) throw validation_error("differential polynomial needs order >= 1");
    QMatrix m(n, std::vector<QuadScalar>(n));
    for (std::size_t i = 0; i + 1 < n; ++i) m[i + 1][i] = QuadScalar(1);
    for (std::size_t i = 0; i < n; ++i) m[i][n - 1] = qs_neg(p.g[i]);
    return m;
}

QPoly characteristic_polynomial(const QMatrix& g, const FieldSpec& f) {
    check_square(g);
    std::size_t n = g.size();
    std::vector<QuadScalar> coeffs(n + 1);
    coeffs[n] = QuadScalar(1);
    QMatrix b = g;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            for (std::size_t i = 0; i < n; ++i)
                b[i][i] = qs_add(b[i][i], coeffs[n - k + 1]);
            b = mat_mul(g, b, f);
        }
        QuadScalar tr;
        for (std::size_t i = 0; i < n; ++i) tr = qs_add(tr, b[i][i]);
        coeffs[n - k] = qs_neg(qs_mul(tr, QuadScalar(Rat(1, static_cast<long>(k))), f));
    }
    return QPoly(std::move(coeffs));
}

std::optional<QuadScalar> qs_sqrt(const QuadScalar& w, const FieldSpec& f) {
    auto verify = [&](const QuadScalar& s) { return qs_mul(s, s, f) == w; };
    if (w.is_zero()) return QuadScalar(0);
    if (w.v == 0) {
        if (w.u > 0) {
            if (auto r = rat_sqrt(w.u)) {
                QuadScalar s{*r};
                if (verify(s)) return s;
            }
            if (f.mode == FieldMode::PAdic) {
                Rat q = w.u / Rat(static_cast<long>(f.p));
                if (auto r = rat_sqrt(q)) {
                    QuadScalar s{Rat(0), *r};
                    if (verify(s)) return s;
                }
            }
        }
        return std::nullopt;
    }
    // w = d0 + d1 sqrt(p), d1 != 0: a root s + t sqrt(p) has s^2 + p t^2 = d0
    // and 2 s t = d1, so s^2 solves Y^2 - d0 Y + p d1^2 / 4 = 0.
    Rat p{static_cast<long>(f.p)};
    Rat delta = w.u * w.u - p * w.v * w.v;
    auto droot = rat_sqrt(delta >= 0 ? delta : Rat(-1));
    if (!droot) return std::nullopt;
    for (int branch = 0; branch < 2; ++branch) {
        Rat y = (w.u + (branch ? -*droot : *droot)) / 2;
        if (y < 0) continue;
        auto s = rat_sqrt(y);
        if (!s || *s == 0) continue;
        Rat t = w.v / (Rat(2) * *s);
        QuadScalar cand{*s, t};
        if (verify(cand)) return cand;
    }
    return std::nullopt;
}

EigenAnalysis eigenvalue_multiset(const QPoly& q, const FieldSpec& f) {
    if (q.is_zero()) throw validation_error("eigenvalue analysis needs a nonzero polynomial");
    EigenAnalysis out;
    QPoly m = poly_monic(q, f);
    if (m.degree() == 0) return out;
    for (const auto& [part, mult] : poly_squarefree(m, f)) {
        std::vector<QuadScalar> roots;
        std::vector<QPoly> leftover;
        collect_squarefree(part, f, roots, leftover);
        for (const QuadScalar& r : roots) out.roots.emplace_back(r, mult);
        for (const QPoly& h : leftover) out.unresolved.emplace_back(h, mult);
    }
    return out;
}

NewtonSlopes newton_polygon_slopes(const QPoly& q, const FieldSpec& f) {
    if (f.mode != FieldMode::PAdic)
        throw unsupported_error("Newton polygons are computed in p-adic mode only");
    if (q.degree() < 1)
        throw validation_error("Newton polygon needs a nonconstant polynomial");
    NewtonSlopes out;
    QPoly m = poly_monic(q, f);
    int shift = 0;
    while (m.coeff(shift).is_zero()) ++shift;
    out.zero_multiplicity = shift;
    // Lower convex hull of (i, val(c_i)) over nonzero coefficients.
    std::vector<std::pair<long, Rat>> pts;
    for (int i = shift; i <= m.degree(); ++i) {
        if (m.coeff(i).is_zero()) continue;
        Exponent v = valuation(m.coeff(i), f);
        pts.emplace_back(i - shift, v.a);
    }
    std::vector<std::pair<long, Rat>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& p1 = hull[hull.size() - 2];
            const auto& p2 = hull[hull.size() - 1];
            Rat cross = Rat(p2.first - p1.first) * (pt.second - p1.second) -
                        (p2.second - p1.second) * Rat(pt.first - p1.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        long len = hull[i + 1].first - hull[i].first;
        Rat slope = (hull[i + 1].second - hull[i].second) / Rat(len);
        out.slopes.emplace_back(Rat(-slope), static_cast<int>(len));
    }
    std::sort(out.slopes.begin(), out.slopes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

void validate_domain(const DomainSpec& d, const FieldSpec& f) {
    if (const auto* disk = std::get_if<DomainDisk>(&d)) {
        check_connected(ConnectedDomain{*disk}, f);
        return;
    }
    if (const auto* aff = std::get_if<DomainAffinoid>(&d)) {
        check_connected(ConnectedDomain{*aff}, f);
        return;
    }
    if (const auto* u = std::get_if<DomainUnion>(&d)) {
        if (u->components.empty())
            throw validation_error("union domain needs at least one component");
        for (const auto& c : u->components) check_connected(c, f);
        for (std::size_t i = 0; i < u->components.size(); ++i)
            for (std::size_t j = i + 1; j < u->components.size(); ++j)
                if (!components_disjoint(u->components[i], u->components[j], f))
                    throw validation_error("union components must be pairwise disjoint");
        return;
    }
    check_point(std::get<DomainPoint>(d), f);
}

}  // namespace ultraspec
