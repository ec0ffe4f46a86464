#include "ultraspec/oracle.hpp"

#include <algorithm>

#include "ultraspec/errors.hpp"

namespace ultraspec {

namespace {

QuadScalar qs_pow(const QuadScalar& x, unsigned long n, const FieldSpec& f) {
    QuadScalar result(1L);
    QuadScalar base = x;
    while (n > 0) {
        if (n & 1) result = qs_mul(result, base, f);
        base = qs_mul(base, base, f);
        n >>= 1;
    }
    return result;
}

Exponent charp_threshold(const Exponent& rho, const FieldSpec& f) {
    return f.residual_char_zero() ? -rho : omega_exponent(f) - rho;
}

/** min_i (val(c_i) + i * rho) over the coefficients of a polynomial. */
Exponent poly_norm_exp(const QPoly& g, const Exponent& rho, const FieldSpec& f) {
    Exponent e = Exponent::inf();
    for (int i = 0; i <= g.degree(); ++i) {
        if (g.coeff(i).is_zero()) continue;
        e = min(e, valuation(g.coeff(i), f) + rho * Rat(i));
    }
    return e;
}

long checked_power(unsigned long p, int k) {
    long n = 1;
    for (int i = 0; i < k; ++i) {
        n *= static_cast<long>(p);
        if (n > 1000000L) throw validation_error("power ladder exceeds the probe budget");
    }
    return n;
}

/** Ground-field valuation of the falling product j(j-1)...(j-n+1); the caller
    skips rows where the product crosses zero. Routing through the factorial
    ledger keeps integers units when the residual characteristic is zero. */
Rat falling_valuation(long j, long n, const FieldSpec& f) {
    if (j >= 0) return factorial_valuation(Int(j), f) - factorial_valuation(Int(j - n), f);
    return factorial_valuation(Int(-j + n - 1), f) - factorial_valuation(Int(-j - 1), f);
}

/** Integer factors of the triangular resolvent powers: the (i,j) entry of the
    n-th power of (d-a)^{-1} is m_ij / a^{n+(j-i)}, and only the integer m_ij
    is stored. Keeping the integer apart from the scalar lets the norm measure
    it in the ground field, where residual characteristic zero makes every
    nonzero integer a unit. */
using IDense = std::vector<std::vector<Int>>;

Exponent int_factor_valuation(const Int& m, const FieldSpec& f) {
    if (f.mode != FieldMode::PAdic) return Exponent(0L);
    return Exponent(Rat(int_valuation(m, f.p)));
}

Exponent dense_norm(const IDense& m, const TruncatedSpace& sp, const Exponent& val_a, long n,
                    const FieldSpec& f) {
    Exponent e = Exponent::inf();
    long lo = sp.lo();
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[r].size(); ++c) {
            if (m[r][c] == 0) continue;
            long i = lo + static_cast<long>(r);
            long j = lo + static_cast<long>(c);
            Exponent entry = int_factor_valuation(m[r][c], f) - val_a * Rat(n + (j - i));
            e = min(e, entry + sp.rho_eff(i) * Rat(i) - sp.rho_eff(j) * Rat(j));
        }
    return e;
}

IDense dense_mul(const IDense& a, const IDense& b) {
    std::size_t n = a.size();
    IDense out(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[k][j] == 0) continue;
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    return out;
}

/** Upper-triangular inverse of (d - a) on the band: diagonal factor -1. */
IDense resolvent_matrix(const TruncatedSpace& sp) {
    long lo = sp.lo(), hi = sp.hi();
    std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    IDense b(n, std::vector<Int>(n));
    for (long j = lo; j <= hi; ++j) {
        std::size_t cj = static_cast<std::size_t>(j - lo);
        b[cj][cj] = -1;
        for (long i = j - 1; i >= lo; --i) {
            std::size_t ri = static_cast<std::size_t>(i - lo);
            const Int& below = b[ri + 1][cj];
            if (below == 0 || i + 1 == 0) break;  // polar block decouples at index -1
            b[ri][cj] = Int(i + 1) * below;
        }
    }
    return b;
}

struct AnnulusView {
    QuadScalar center;
    Exponent inner_exp;
};

/** The annulus data a resolvent probe runs on, or nullopt for other shapes. */
std::optional<AnnulusView> annulus_view(const DomainSpec& dom) {
    if (const auto* aff = std::get_if<DomainAffinoid>(&dom)) {
        if (aff->holes.empty()) return std::nullopt;
        const OpenDisk* binding = &aff->holes.front();
        for (const OpenDisk& h : aff->holes)
            if (cmp(h.radius_exp, binding->radius_exp) > 0) binding = &h;
        return AnnulusView{binding->center, binding->radius_exp};
    }
    if (const auto* pt = std::get_if<DomainPoint>(&dom))
        if (const auto* t = std::get_if<PointT23>(&pt->x))
            return AnnulusView{t->center, t->radius_exp};
    return std::nullopt;
}

std::vector<std::pair<QuadScalar, int>> consolidate(std::vector<std::pair<QuadScalar, int>> roots) {
    auto less = [](const std::pair<QuadScalar, int>& x, const std::pair<QuadScalar, int>& y) {
        if (x.first.u != y.first.u) return x.first.u < y.first.u;
        return x.first.v < y.first.v;
    };
    std::sort(roots.begin(), roots.end(), less);
    std::vector<std::pair<QuadScalar, int>> out;
    for (const auto& r : roots) {
        if (!out.empty() && out.back().first == r.first) out.back().second += r.second;
        else out.push_back(r);
    }
    return out;
}

QPoly unresolved_product(const std::vector<std::pair<QPoly, int>>& parts, const FieldSpec& f) {
    QPoly prod{{QuadScalar(1L)}};
    for (const auto& [factor, mult] : parts)
        for (int k = 0; k < mult; ++k) prod = poly_mul(prod, factor, f);
    return prod;
}

}  // namespace

TruncatedSpace TruncatedSpace::disk(const QuadScalar& c, const Exponent& rho, long N) {
    if (N < 0) throw validation_error("negative degree bound");
    if (rho.infinite) throw validation_error("disk model needs a finite radius");
    TruncatedSpace sp;
    sp.model = Model::Disk;
    sp.center = c;
    sp.outer_exp = rho;
    sp.inner_exp = rho;
    sp.degree_bound = N;
    return sp;
}

TruncatedSpace TruncatedSpace::annulus(const QuadScalar& c, const Exponent& rho0,
                                       const Exponent& rho1, long N) {
    if (N < 0) throw validation_error("negative degree bound");
    if (rho0.infinite || rho1.infinite) throw validation_error("annulus model needs finite radii");
    if (cmp(rho1, rho0) < 0)
        throw validation_error("annulus inner radius must not exceed the outer");
    TruncatedSpace sp;
    sp.model = Model::Annulus;
    sp.center = c;
    sp.outer_exp = rho0;
    sp.inner_exp = rho1;
    sp.degree_bound = N;
    return sp;
}

std::vector<TruncatedSpace> model_for(const DomainSpec& dom, const FieldSpec& f, long N) {
    validate_domain(dom, f);
    std::vector<TruncatedSpace> models;
    auto component = [&](const ConnectedDomain& c) {
        if (const auto* d = std::get_if<DomainDisk>(&c)) {
            models.push_back(TruncatedSpace::disk(d->disk.center, d->disk.radius_exp, N));
            return;
        }
        const auto& aff = std::get<DomainAffinoid>(c);
        if (aff.holes.empty()) {
            models.push_back(TruncatedSpace::disk(aff.outer.center, aff.outer.radius_exp, N));
            return;
        }
        Exponent inner = aff.holes.front().radius_exp;
        for (const OpenDisk& h : aff.holes) inner = max(inner, h.radius_exp);
        models.push_back(TruncatedSpace::annulus(aff.outer.center, aff.outer.radius_exp, inner, N));
    };
    if (const auto* d = std::get_if<DomainDisk>(&dom)) component(ConnectedDomain{*d});
    else if (const auto* a = std::get_if<DomainAffinoid>(&dom)) component(ConnectedDomain{*a});
    else if (const auto* u = std::get_if<DomainUnion>(&dom))
        for (const auto& c : u->components) component(c);
    else {
        const auto& p = std::get<DomainPoint>(dom);
        if (const auto* t = std::get_if<PointT23>(&p.x))
            models.push_back(TruncatedSpace::annulus(t->center, t->radius_exp, t->radius_exp, N));
        else {
            const auto& t4 = std::get<PointT4>(p.x);
            models.push_back(
                TruncatedSpace::disk(t4.family.back().center, t4.declared_radius_exp, N));
        }
    }
    return models;
}

Exponent element_norm(const TruncatedElement& e, const TruncatedSpace& sp, const FieldSpec& f) {
    Exponent norm = Exponent::inf();
    for (const auto& [i, a] : e.coeff) {
        if (a.is_zero()) continue;
        if (!sp.in_band(i)) throw validation_error("element coefficient outside the band");
        norm = min(norm, valuation(a, f) + sp.rho_eff(i) * Rat(i));
    }
    return norm;
}

Exponent operator_norm(const TruncatedOperator& op, const TruncatedSpace& sp, const FieldSpec& f) {
    Exponent norm = Exponent::inf();
    for (const auto& [pos, a] : op.entries) {
        if (a.is_zero()) continue;
        if (!sp.in_band(pos.first) || !sp.in_band(pos.second))
            throw validation_error("operator entry outside the band");
        norm = min(norm, valuation(a, f) + sp.rho_eff(pos.first) * Rat(pos.first) -
                             sp.rho_eff(pos.second) * Rat(pos.second));
    }
    return norm;
}

TruncatedOperator derivation_power(const TruncatedSpace& sp, long n) {
    if (n < 0) throw validation_error("negative derivation power");
    TruncatedOperator op;
    for (long j = sp.lo(); j <= sp.hi(); ++j) {
        if (!sp.in_band(j - n)) continue;  // boundary policy: overflow rows dropped
        Rat falling(1);
        for (long k = 0; k < n; ++k) falling *= Rat(j - k);
        if (falling == 0) continue;
        op.entries[{j - n, j}] = QuadScalar(falling);
    }
    return op;
}

Exponent truncated_power_norm(long n, const DomainSpec& dom, const FieldSpec& f, long N) {
    if (n < 0) throw validation_error("negative derivation power");
    if (N < n) throw validation_error("degenerate truncation: band smaller than the power");
    // Same matrix as derivation_power, but the integer coefficients are
    // valued through the factorial ledger instead of as materialized scalars,
    // so residual-characteristic-zero modes see them as units.
    Exponent norm = Exponent::inf();
    for (const TruncatedSpace& sp : model_for(dom, f, N))
        for (long j = sp.lo(); j <= sp.hi(); ++j) {
            if (!sp.in_band(j - n)) continue;  // boundary policy: overflow rows dropped
            if (j >= 0 && j < n) continue;     // the falling product crosses zero
            Exponent term = Exponent(falling_valuation(j, n, f)) +
                            sp.rho_eff(j - n) * Rat(j - n) - sp.rho_eff(j) * Rat(j);
            norm = min(norm, term);
        }
    return norm;
}

SpectralEstimate spectral_norm_estimate(const DomainSpec& dom, const FieldSpec& f, int K) {
    if (K < 1) throw validation_error("estimate ladder needs at least one step");
    long top = checked_power(f.base(), K);
    SpectralEstimate est;
    est.limit_exp = derivation_spectrum(dom, f).disks[0].radius_exp;
    long n = 1;
    for (int k = 1; k <= K; ++k) {
        n *= static_cast<long>(f.base());
        est.per_n.emplace_back(n, truncated_power_norm(n, dom, f, top + 1) / n);
    }
    est.gap = est.limit_exp - est.per_n.back().second;
    est.monotone = true;
    for (std::size_t i = 1; i < est.per_n.size(); ++i)
        if (cmp(est.per_n[i].second, est.per_n[i - 1].second) < 0) est.monotone = false;
    return est;
}

bool kernel_witness(const QuadScalar& a, const DomainSpec& dom, const FieldSpec& f) {
    check_scalar(a, f);
    const auto* d = std::get_if<DomainDisk>(&dom);
    if (!d) throw validation_error("kernel witness runs on disk domains");
    validate_domain(dom, f);
    // Exact limit of the exponential-series test: term exponents
    // n*val(a) - val(n!) + n*rho tend to +infinity iff val(a) clears the
    // spectrum radius (val(n!)/n increases to omega_exp, and to 0 when the
    // residual characteristic is zero).
    return cmp(valuation(a, f), charp_threshold(d->disk.radius_exp, f)) > 0;
}

std::vector<Exponent> divergence_witness(const FieldSpec& f, const Exponent& rho, int L) {
    if (f.mode != FieldMode::PAdic)
        throw unsupported_error("divergence witness needs a p-adic field");
    if (L < 0) throw validation_error("negative witness depth");
    if (rho.infinite || rho.b != 0)
        throw unsupported_error("no scalar realizes magnitude exponent " + format_exponent(rho));
    long top = checked_power(f.p, L);

    QuadScalar alpha = scalar_with_valuation(rho.a, f);
    QuadScalar a = scalar_with_valuation((omega_exponent(f) - rho).a, f);
    QuadScalar beta(Rat(0), Rat(1));  // sqrt(p), valuation 1/2

    std::vector<Exponent> out;
    QuadScalar an(0L);
    long next_pow = 1;  // p^l for the level about to source, starting at l = 0
    int level = 0;
    for (long n = 0; n < top; ++n) {
        QuadScalar bn(0L);
        if (n == next_pow - 1) {
            bn = qs_div(qs_pow(beta, static_cast<unsigned long>(level), f),
                        qs_pow(alpha, static_cast<unsigned long>(n), f), f);
        }
        an = qs_div(qs_add(bn, qs_mul(a, an, f)), QuadScalar(n + 1), f);
        if (n + 1 == next_pow) {
            out.push_back(valuation(an, f) + rho * Rat(next_pow - 1));
            ++level;
            next_pow *= static_cast<long>(f.p);
        }
    }
    return out;
}

ResolventProbe annulus_resolvent_probe(const QuadScalar& a, const DomainSpec& dom,
                                       const FieldSpec& f, long N) {
    check_scalar(a, f);
    validate_domain(dom, f);
    if (N < 4) throw validation_error("probe window too small");
    auto view = annulus_view(dom);
    if (!view) throw validation_error("resolvent probe runs on annulus-type domains");

    ResolventProbe probe;
    if (a.is_zero()) {
        // 0 is always in the spectrum; there is nothing to invert.
        probe.skipped = true;
        probe.diverges = true;
        probe.closed_form_diverges = true;
        return probe;
    }
    const Exponent& rho1 = view->inner_exp;
    probe.closed_form_diverges = cmp(valuation(a, f), charp_threshold(rho1, f)) >= 0;

    // a_n = (-1)^n (n-1)!/a^n: the scalar part tracks only powers of 1/a, and
    // the integer factor (n-1)! is valued through the factorial ledger so the
    // residual-characteristic split comes out right.
    QuadScalar inv = qs_inv(a, f);
    QuadScalar tn(1L);
    Exponent lo_min = Exponent::inf(), hi_min = Exponent::inf();
    for (long n = 1; n <= N; ++n) {
        tn = qs_mul(tn, inv, f);
        Exponent sn = valuation(tn, f) + Exponent(factorial_valuation(Int(n - 1), f)) -
                      rho1 * Rat(n);
        probe.tail.push_back(sn);
        if (n <= N / 2) lo_min = min(lo_min, sn);
        else hi_min = min(hi_min, sn);
    }
    probe.slope = (hi_min - lo_min) / (N / 2);
    probe.diverges = cmp(probe.slope, Exponent(0)) <= 0;
    return probe;
}

ResolventRadius resolvent_radius_probe(const QuadScalar& a, const DomainSpec& dom,
                                       const FieldSpec& f, long N, int K) {
    check_scalar(a, f);
    if (K < 2 || K % 2 != 0) throw validation_error("probe steps must be even and >= 2");
    Spectrum sigma = derivation_spectrum(dom, f);
    auto sep = separation(a, sigma, f);
    if (!sep) throw validation_error("probe point lies inside the spectrum");

    ResolventRadius out;
    out.separation_exp = *sep;
    Exponent val_a = valuation(a, f);
    std::vector<TruncatedSpace> models = model_for(dom, f, N);
    std::vector<IDense> powers;
    std::vector<IDense> bases;
    for (const TruncatedSpace& sp : models) {
        bases.push_back(resolvent_matrix(sp));
        powers.push_back(bases.back());
    }
    for (int n = 1; n <= K; ++n) {
        Exponent en = Exponent::inf();
        for (std::size_t m = 0; m < models.size(); ++m) {
            if (n > 1) powers[m] = dense_mul(powers[m], bases[m]);
            en = min(en, dense_norm(powers[m], models[m], val_a, n, f));
        }
        out.power_exps.push_back(en);
    }
    Exponent ek = out.power_exps[static_cast<std::size_t>(K - 1)];
    Exponent eh = out.power_exps[static_cast<std::size_t>(K / 2 - 1)];
    out.estimate = -((ek - eh) / (K - K / 2));
    Exponent diff = out.estimate - out.separation_exp;
    if (cmp(diff, Exponent(0)) < 0) diff = -diff;
    out.within_tolerance = cmp(diff, Exponent(Rat(1, 10))) <= 0;
    return out;
}

Type4Report type4_bound_check(const PointT4& x, const QuadScalar& a, const QPoly& g,
                              const FieldSpec& f) {
    if (!f.residual_char_zero())
        throw unsupported_error("type-4 boundedness check needs residual characteristic zero");
    validate_domain(DomainSpec{DomainPoint{BerkPoint{x}}}, f);
    check_scalar(a, f);
    if (g.is_zero()) throw validation_error("zero right-hand side");
    if (cmp(valuation(a, f), -x.declared_radius_exp) != 0)
        throw validation_error("witness magnitude must equal the reciprocal declared radius");

    // Exact polynomial solve of (d - a) y = g: y = -sum_k g^(k) / a^(k+1).
    QuadScalar inv = qs_inv(a, f);
    QuadScalar weight = inv;
    QPoly acc;
    QPoly deriv = g;
    while (!deriv.is_zero()) {
        acc = poly_add(acc, poly_scale(deriv, weight, f));
        deriv = poly_derivative(deriv);
        weight = qs_mul(weight, inv, f);
    }
    QPoly y = poly_neg(acc);
    if (!(poly_sub(poly_derivative(y), poly_scale(y, a, f)) == g))
        throw mismatch_error("resolvent solve failed to verify");

    Type4Report report;
    report.g = g;
    report.y = y;
    report.min_ratio = Exponent::inf();
    for (const PointT23& level : x.family) {
        Exponent ny = poly_norm_exp(poly_taylor_at(y, level.center, f), level.radius_exp, f);
        Exponent ng = poly_norm_exp(poly_taylor_at(g, level.center, f), level.radius_exp, f);
        Exponent ratio = ny - ng;
        report.ratio_exps.push_back(ratio);
        report.min_ratio = min(report.min_ratio, ratio);
    }
    report.bound_holds = cmp(report.min_ratio, x.declared_radius_exp) >= 0;
    return report;
}

Type4Report type4_bound_check(const PointT4& x, const QuadScalar& a, const FieldSpec& f,
                              int N, unsigned long seed) {
    if (N < 0) throw validation_error("negative degree bound");
    // Deterministic pseudo-random rational coefficients from a fixed LCG, so
    // reports are byte-stable across platforms.
    unsigned long state = seed;
    auto step = [&state]() {
        state = state * 6364136223846793005UL + 1442695040888963407UL;
        return state;
    };
    std::vector<QuadScalar> coeffs;
    for (int i = 0; i <= N; ++i) {
        long num = static_cast<long>((step() >> 33) % 17UL) - 8;
        long den = static_cast<long>((step() >> 13) % 5UL) + 1;
        coeffs.emplace_back(make_rat(num, den));
    }
    QPoly g{std::move(coeffs)};
    if (g.is_zero()) g = QPoly{{QuadScalar(1L)}};
    return type4_bound_check(x, a, g, f);
}

BlockSpectrumReport finite_dim_block_spectrum_check(const QMatrix& g1, const QMatrix& g2,
                                                    const QMatrix& c, const FieldSpec& f) {
    check_square(g1);
    check_square(g2);
    std::size_t n1 = g1.size(), n2 = g2.size();
    if (c.size() != n1) throw validation_error("coupling block shape mismatch");
    for (const auto& row : c)
        if (row.size() != n2) throw validation_error("coupling block shape mismatch");

    QMatrix m(n1 + n2, std::vector<QuadScalar>(n1 + n2));
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) m[i][j] = g1[i][j];
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) m[i][n1 + j] = c[i][j];
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j) m[n1 + i][n1 + j] = g2[i][j];

    QPoly chi_m = characteristic_polynomial(m, f);
    QPoly chi_1 = characteristic_polynomial(g1, f);
    QPoly chi_2 = characteristic_polynomial(g2, f);

    BlockSpectrumReport report;
    report.charpoly_product_ok = chi_m == poly_mul(chi_1, chi_2, f);

    EigenAnalysis em = eigenvalue_multiset(chi_m, f);
    EigenAnalysis e1 = eigenvalue_multiset(chi_1, f);
    EigenAnalysis e2 = eigenvalue_multiset(chi_2, f);
    std::vector<std::pair<QuadScalar, int>> merged = e1.roots;
    merged.insert(merged.end(), e2.roots.begin(), e2.roots.end());
    report.merged_roots = consolidate(std::move(merged));
    bool roots_match = consolidate(em.roots) == report.merged_roots;
    std::vector<std::pair<QPoly, int>> leftover = e1.unresolved;
    leftover.insert(leftover.end(), e2.unresolved.begin(), e2.unresolved.end());
    bool unresolved_match =
        unresolved_product(em.unresolved, f) == unresolved_product(leftover, f);
    report.eigen_union_ok = roots_match && unresolved_match;
    return report;
}

}  // namespace ultraspec
