#include "ultraspec/poly.hpp"

#include "ultraspec/errors.hpp"

namespace ultraspec {

bool operator==(const QPoly& f, const QPoly& g) { return f.c == g.c; }

QPoly poly_add(const QPoly& f, const QPoly& g) {
    std::vector<QuadScalar> out(std::max(f.c.size(), g.c.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = qs_add(f.coeff(static_cast<int>(i)), g.coeff(static_cast<int>(i)));
    return QPoly(std::move(out));
}

QPoly poly_sub(const QPoly& f, const QPoly& g) {
    std::vector<QuadScalar> out(std::max(f.c.size(), g.c.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = qs_sub(f.coeff(static_cast<int>(i)), g.coeff(static_cast<int>(i)));
    return QPoly(std::move(out));
}

QPoly poly_neg(const QPoly& f) {
    std::vector<QuadScalar> out(f.c.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = qs_neg(f.c[i]);
    return QPoly(std::move(out));
}

QPoly poly_scale(const QPoly& f, const QuadScalar& k, const FieldSpec& fs) {
    std::vector<QuadScalar> out(f.c.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = qs_mul(f.c[i], k, fs);
    return QPoly(std::move(out));
}

QPoly poly_mul(const QPoly& f, const QPoly& g, const FieldSpec& fs) {
    if (f.is_zero() || g.is_zero()) return QPoly();
    std::vector<QuadScalar> out(f.c.size() + g.c.size() - 1);
    for (std::size_t i = 0; i < f.c.size(); ++i)
        for (std::size_t j = 0; j < g.c.size(); ++j)
            out[i + j] = qs_add(out[i + j], qs_mul(f.c[i], g.c[j], fs));
    return QPoly(std::move(out));
}

std::pair<QPoly, QPoly> poly_divrem(const QPoly& f, const QPoly& g, const FieldSpec& fs) {
    if (g.is_zero()) throw validation_error("polynomial division by zero");
    QPoly rem = f;
    int dg = g.degree();
    QuadScalar lead_inv = qs_inv(g.c.back(), fs);
    if (rem.degree() < dg) return {QPoly(), rem};
    std::vector<QuadScalar> quot(static_cast<std::size_t>(rem.degree() - dg + 1));
    while (!rem.is_zero() && rem.degree() >= dg) {
        int k = rem.degree() - dg;
        QuadScalar q = qs_mul(rem.c.back(), lead_inv, fs);
        quot[static_cast<std::size_t>(k)] = q;
        for (int i = 0; i <= dg; ++i) {
            std::size_t idx = static_cast<std::size_t>(i + k);
            rem.c[idx] = qs_sub(rem.c[idx], qs_mul(q, g.c[static_cast<std::size_t>(i)], fs));
        }
        rem.trim();
    }
    return {QPoly(std::move(quot)), rem};
}

QPoly poly_derivative(const QPoly& f) {
    if (f.c.size() <= 1) return QPoly();
    std::vector<QuadScalar> out(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i)
        out[i - 1] = QuadScalar(Rat(f.c[i].u * static_cast<long>(i)), Rat(f.c[i].v * static_cast<long>(i)));
    return QPoly(std::move(out));
}

QPoly poly_monic(const QPoly& f, const FieldSpec& fs) {
    if (f.is_zero()) return f;
    return poly_scale(f, qs_inv(f.c.back(), fs), fs);
}

QPoly poly_gcd(const QPoly& f, const QPoly& g, const FieldSpec& fs) {
    QPoly a = f, b = g;
    while (!b.is_zero()) {
        QPoly r = poly_divrem(a, b, fs).second;
        a = b;
        b = r;
    }
    return poly_monic(a, fs);
}

QuadScalar poly_eval(const QPoly& f, const QuadScalar& x, const FieldSpec& fs) {
    QuadScalar acc;
    for (std::size_t i = f.c.size(); i-- > 0;) acc = qs_add(qs_mul(acc, x, fs), f.c[i]);
    return acc;
}

QPoly poly_linear(const QuadScalar& a) { return QPoly({qs_neg(a), QuadScalar(1)}); }

QPoly poly_taylor_at(const QPoly& f, const QuadScalar& a, const FieldSpec& fs) {
    // Repeated synthetic division by (X - a): remainders are the Taylor
    // coefficients of f at a in ascending order.
    std::vector<QuadScalar> work = f.c;
    std::vector<QuadScalar> out(f.c.size());
    for (std::size_t k = 0; k < f.c.size(); ++k) {
        QuadScalar carry;
        for (std::size_t i = work.size(); i-- > 0;) {
            QuadScalar next = qs_add(work[i], qs_mul(carry, a, fs));
            carry = next;
            work[i] = next;
        }
        out[k] = work[0];
        work.erase(work.begin());
    }
    return QPoly(std::move(out));
}

QPoly poly_conj(const QPoly& f) {
    std::vector<QuadScalar> out(f.c.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = qs_conj(f.c[i]);
    return QPoly(std::move(out));
}

std::pair<std::vector<Rat>, std::vector<Rat>> poly_split(const QPoly& f) {
    std::vector<Rat> a(f.c.size()), b(f.c.size());
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        a[i] = f.c[i].u;
        b[i] = f.c[i].v;
    }
    return {a, b};
}

std::vector<std::pair<QPoly, int>> poly_squarefree(const QPoly& f, const FieldSpec& fs) {
    std::vector<std::pair<QPoly, int>> out;
    if (f.degree() < 1) return out;
    QPoly g = poly_monic(f, fs);
    QPoly d = poly_derivative(g);
    QPoly a = poly_gcd(g, d, fs);
    QPoly b = poly_divrem(g, a, fs).first;     // product of distinct factors
    QPoly c = poly_divrem(d, a, fs).first;
    QPoly z = poly_sub(c, poly_derivative(b)); // Yun's iteration state
    int k = 1;
    while (b.degree() >= 1) {
        QPoly fk = poly_gcd(b, z, fs);
        if (fk.degree() >= 1) out.emplace_back(fk, k);
        b = poly_divrem(b, fk, fs).first;
        c = poly_divrem(z, fk, fs).first;
        z = poly_sub(c, poly_derivative(b));
        ++k;
    }
    return out;
}

} // namespace ultraspec
