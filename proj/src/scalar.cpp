#include "ultraspec/scalar.hpp"

#include "ultraspec/errors.hpp"

namespace ultraspec {

QuadScalar qs_add(const QuadScalar& x, const QuadScalar& y) {
    return QuadScalar(Rat(x.u + y.u), Rat(x.v + y.v));
}

QuadScalar qs_sub(const QuadScalar& x, const QuadScalar& y) {
    return QuadScalar(Rat(x.u - y.u), Rat(x.v - y.v));
}

QuadScalar qs_neg(const QuadScalar& x) { return QuadScalar(Rat(-x.u), Rat(-x.v)); }

QuadScalar qs_mul(const QuadScalar& x, const QuadScalar& y, const FieldSpec& f) {
    // (u1 + v1*s)(u2 + v2*s) with s^2 = p.
    Rat p(static_cast<long>(f.p));
    return QuadScalar(Rat(x.u * y.u + p * x.v * y.v), Rat(x.u * y.v + x.v * y.u));
}

QuadScalar qs_inv(const QuadScalar& x, const FieldSpec& f) {
    if (x.is_zero()) throw validation_error("inverse of zero scalar");
    // 1/(u + v*s) = (u - v*s)/(u^2 - p*v^2); the norm is nonzero for nonzero
    // scalars because sqrt(p) is irrational.
    Rat p(static_cast<long>(f.p));
    Rat n = x.u * x.u - p * x.v * x.v;
    return QuadScalar(Rat(x.u / n), Rat(-x.v / n));
}

QuadScalar qs_div(const QuadScalar& x, const QuadScalar& y, const FieldSpec& f) {
    return qs_mul(x, qs_inv(y, f), f);
}

QuadScalar qs_conj(const QuadScalar& x) { return QuadScalar(x.u, Rat(-x.v)); }

void check_scalar(const QuadScalar& s, const FieldSpec& f) {
    if (f.mode != FieldMode::PAdic && s.v != 0)
        throw validation_error("invalid scalar: sqrt(p) component outside p-adic mode");
}

Exponent valuation(const QuadScalar& s, const FieldSpec& f) {
    check_scalar(s, f);
    if (s.is_zero()) return Exponent::inf();
    switch (f.mode) {
        case FieldMode::PAdic: {
            // min of v_p(u) and v_p(v) + 1/2; the integer and half-integer
            // candidates can never coincide, so min is exact and unambiguous.
            if (s.u == 0) return Exponent(Rat(rat_valuation(s.v, f.p) + make_rat(1, 2)));
            if (s.v == 0) return Exponent(Rat(rat_valuation(s.u, f.p)));
            Rat vu(rat_valuation(s.u, f.p));
            Rat vv = rat_valuation(s.v, f.p) + make_rat(1, 2);
            return Exponent(vu < vv ? vu : vv);
        }
        case FieldMode::EqualCharZero:
            return Exponent(Rat(rat_valuation(s.u, 2)));
        case FieldMode::Trivial:
            return Exponent(0L);
    }
    throw validation_error("unknown field mode");
}

QuadScalar scalar_with_valuation(const Rat& k, const FieldSpec& f) {
    switch (f.mode) {
        case FieldMode::PAdic: {
            if (k.get_den() == 1)
                return QuadScalar(pow_rat(f.p, k.get_num().get_si()));
            Rat half = k - make_rat(1, 2);
            if (half.get_den() == 1)
                return QuadScalar(Rat(0), pow_rat(f.p, half.get_num().get_si()));
            throw unsupported_error("no scalar realizes valuation " + format_rat(k));
        }
        case FieldMode::EqualCharZero: {
            if (k.get_den() != 1)
                throw unsupported_error("no scalar realizes valuation " + format_rat(k));
            return QuadScalar(pow_rat(2, k.get_num().get_si()));
        }
        case FieldMode::Trivial: {
            if (k != 0) throw unsupported_error("trivial mode realizes only valuation 0");
            return QuadScalar(1L);
        }
    }
    throw validation_error("unknown field mode");
}

std::string format_scalar(const QuadScalar& s, const FieldSpec& f) {
    if (s.v == 0) return format_rat(s.u);
    std::string stem = format_rat(Rat(abs(s.v))) + "*sqrt(" + std::to_string(f.p) + ")";
    if (s.u == 0) return (s.v < 0 ? "-" : "") + stem;
    return format_rat(s.u) + (s.v < 0 ? "-" : "+") + stem;
}

QuadScalar parse_scalar(const std::string& text, const FieldSpec& f) {
    const std::string suffix_tail = ")";
    std::size_t pos = text.rfind("*sqrt(");
    QuadScalar result;
    if (pos == std::string::npos) {
        result = QuadScalar(parse_rat(text));
    } else {
        std::size_t close = text.find(')', pos);
        if (close == std::string::npos || close + 1 != text.size())
            throw validation_error("malformed scalar literal: '" + text + "'");
        std::string ptext = text.substr(pos + 6, close - pos - 6);
        if (f.mode != FieldMode::PAdic)
            throw validation_error("invalid scalar: sqrt(p) component outside p-adic mode");
        if (ptext != std::to_string(f.p))
            throw validation_error("scalar literal radicand '" + ptext + "' does not match the field prime");
        std::string head = text.substr(0, pos);
        if (head.empty()) throw validation_error("malformed scalar literal: '" + text + "'");
        std::size_t split = std::string::npos;
        for (std::size_t i = 1; i < head.size(); ++i)
            if (head[i] == '+' || head[i] == '-') split = i;
        if (split == std::string::npos) {
            result = QuadScalar(Rat(0), parse_rat(head));
        } else {
            Rat u = parse_rat(head.substr(0, split));
            std::string vtext = head.substr(split + 1);
            if (vtext.empty() || vtext[0] == '+' || vtext[0] == '-')
                throw validation_error("malformed scalar literal: '" + text + "'");
            Rat v = parse_rat(vtext);
            if (head[split] == '-') v = -v;
            result = QuadScalar(u, v);
        }
    }
    check_scalar(result, f);
    return result;
}

} // namespace ultraspec
