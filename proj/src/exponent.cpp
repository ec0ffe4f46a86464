#include "ultraspec/exponent.hpp"

#include <cctype>
#include <cstddef>

namespace ultraspec {

namespace {

// Validates the character shape of a rational literal before handing it to
// GMP, which is lenient about things (whitespace, bases) we must reject.
bool rat_shape_ok(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
    if (digits == 0) return false;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    ++i;
    digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
    return digits > 0 && i == s.size();
}

} // namespace

Rat parse_rat(const std::string& text) {
    if (!rat_shape_ok(text)) throw validation_error("malformed rational literal: '" + text + "'");
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw validation_error("malformed rational literal: '" + text + "'");
    if (q.get_den() == 0) throw validation_error("rational with zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

int quad2_sign(const Rat& a, const Rat& b) {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Mixed signs: |a| vs |b|*sqrt(2), i.e. a^2 vs 2*b^2; equality is
    // impossible with a, b both nonzero because sqrt(2) is irrational.
    int c = cmp(Rat(a * a), Rat(2 * b * b));
    if (sa > 0) return c > 0 ? 1 : -1; // a > 0 > b*sqrt2
    return c > 0 ? -1 : 1;             // b*sqrt2 > 0 > a
}

int cmp(const Exponent& x, const Exponent& y) {
    if (x.infinite && y.infinite) return 0;
    if (x.infinite) return 1;
    if (y.infinite) return -1;
    return quad2_sign(Rat(x.a - y.a), Rat(x.b - y.b));
}

Exponent operator+(const Exponent& x, const Exponent& y) {
    if (x.infinite || y.infinite) return Exponent::inf();
    return Exponent(Rat(x.a + y.a), Rat(x.b + y.b));
}

Exponent operator-(const Exponent& x, const Exponent& y) {
    if (y.infinite) throw validation_error("cannot subtract an infinite exponent");
    if (x.infinite) return Exponent::inf();
    return Exponent(Rat(x.a - y.a), Rat(x.b - y.b));
}

Exponent operator-(const Exponent& x) {
    if (x.infinite) throw validation_error("cannot negate an infinite exponent");
    return Exponent(Rat(-x.a), Rat(-x.b));
}

Exponent operator*(const Exponent& x, const Rat& k) {
    if (x.infinite) {
        if (k <= 0) throw validation_error("cannot scale an infinite exponent by a nonpositive factor");
        return Exponent::inf();
    }
    return Exponent(Rat(x.a * k), Rat(x.b * k));
}

Exponent operator/(const Exponent& x, long k) {
    if (k == 0) throw validation_error("division of exponent by zero");
    if (x.infinite) throw validation_error("cannot divide an infinite exponent");
    return Exponent(Rat(x.a / k), Rat(x.b / k));
}

Exponent min(const Exponent& x, const Exponent& y) { return cmp(x, y) <= 0 ? x : y; }
Exponent max(const Exponent& x, const Exponent& y) { return cmp(x, y) >= 0 ? x : y; }

std::string format_exponent(const Exponent& e) {
    if (e.infinite) return "inf";
    if (e.b == 0) return format_rat(e.a);
    std::string bs = format_rat(Rat(abs(e.b))) + "*sqrt2";
    if (e.a == 0) return (e.b < 0 ? "-" : "") + bs;
    return format_rat(e.a) + (e.b < 0 ? "-" : "+") + bs;
}

Exponent parse_exponent(const std::string& text) {
    if (text == "inf") return Exponent::inf();
    const std::string suffix = "*sqrt2";
    std::size_t pos = text.rfind(suffix);
    if (pos == std::string::npos || pos + suffix.size() != text.size()) {
        return Exponent(parse_rat(text));
    }
    std::string head = text.substr(0, pos);
    if (head.empty()) throw validation_error("malformed exponent literal: '" + text + "'");
    // Split head into "a+b" / "a-b" / "b"; scan for the sign separating the
    // two terms (not a leading sign, not a sign inside a fraction).
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < head.size(); ++i) {
        if (head[i] == '+' || head[i] == '-') split = i;
    }
    if (split == std::string::npos) {
        return Exponent(Rat(0), parse_rat(head));
    }
    Rat a = parse_rat(head.substr(0, split));
    std::string btext = head.substr(split + 1);
    if (btext.empty() || btext[0] == '+' || btext[0] == '-')
        throw validation_error("malformed exponent literal: '" + text + "'");
    Rat b = parse_rat(btext);
    if (head[split] == '-') b = -b;
    return Exponent(a, b);
}

} // namespace ultraspec
