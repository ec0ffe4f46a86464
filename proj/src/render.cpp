#include <algorithm>
#include <sstream>

#include "ultraspec/io.hpp"

namespace ultraspec {

namespace {

std::string disk_line(const Disk& d, const FieldSpec& f) {
    std::ostringstream out;
    out << (d.kind == DiskKind::Closed ? "[ " : "( ");
    out << "c=" << format_scalar(d.center, f) << " rexp=" << format_exponent(d.radius_exp);
    out << (d.kind == DiskKind::Closed ? " closed ]" : " closure-open ]");
    return out.str();
}

/**
 * sqrt(2) resolved through a fixed continued-fraction convergent so pixel
 * geometry is exact rational arithmetic end to end (error < 1e-11, far below
 * one pixel at any scale used here).
 */
Rat exponent_approx(const Exponent& e) {
    return e.a + e.b * make_rat(665857, 470832);
}

long round_rat(const Rat& x) {
    Rat shifted = x + make_rat(1, 2);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    return q.get_si();
}

/** Affine log-radius scale: radius exponent e -> pixel radius, clamped. */
long pixel_radius(const Exponent& e, long mid, long lo, long hi) {
    if (e.infinite) return lo;
    return std::clamp(mid - round_rat(exponent_approx(e) * Rat(16)), lo, hi);
}

}  // namespace

std::string render_dendrogram(const Spectrum& s, const FieldSpec& f) {
    std::ostringstream out;
    if (s.disks.empty()) {
        out << "(empty spectrum)\n";
        return out.str();
    }
    for (const auto& comp : s.components) {
        if (comp.size() > 1) {
            out << "component: " << comp.size() << " disks, shared boundary\n";
            for (int idx : comp) out << "  " << disk_line(s.disks[idx], f) << "\n";
        } else {
            out << disk_line(s.disks[comp.front()], f) << "\n";
        }
    }
    return out.str();
}

std::string render_dendrogram(const std::vector<SegmentSample>& samples, const FieldSpec& f) {
    std::ostringstream out;
    for (const SegmentSample& s : samples) {
        out << "rho=" << format_exponent(s.rho) << " type=(" << s.type_tag << ")\n";
        std::istringstream tree(render_dendrogram(s.spectrum, f));
        std::string line;
        while (std::getline(tree, line)) out << "  " << line << "\n";
    }
    return out.str();
}

std::string render_svg(const Spectrum& s, const FieldSpec& f) {
    struct Circle {
        long cx, cy, r;
        bool closed;
        std::string title;
    };
    std::vector<Circle> circles;
    long x = 16;
    long max_r = 8;
    for (const Disk& d : s.disks) max_r = std::max(max_r, pixel_radius(d.radius_exp, 64, 8, 256));
    for (const Disk& d : s.disks) {
        long r = pixel_radius(d.radius_exp, 64, 8, 256);
        circles.push_back({x + r, max_r + 16, r, d.kind == DiskKind::Closed,
                           "c=" + format_scalar(d.center, f) +
                               " rexp=" + format_exponent(d.radius_exp)});
        x += 2 * r + 16;
    }
    long width = std::max(x, 48L);
    long height = 2 * max_r + 32;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    for (const Circle& c : circles) {
        out << "  <circle cx=\"" << c.cx << "\" cy=\"" << c.cy << "\" r=\"" << c.r
            << "\" fill=\"none\" stroke=\"black\"";
        if (!c.closed) out << " stroke-dasharray=\"4 2\"";
        out << "><title>" << c.title << "</title></circle>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_svg(const std::vector<SegmentSample>& samples, const FieldSpec& f) {
    const long chart = 160;
    long width = 16 + 24 * static_cast<long>(samples.size()) + 8;
    long height = chart + 16;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << std::max(width, 48L)
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << std::max(width, 48L) << " "
        << height << "\">\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        long h = pixel_radius(enclosing_radius(samples[i].spectrum, f), 80, 4, chart);
        out << "  <rect x=\"" << 16 + 24 * static_cast<long>(i) << "\" y=\"" << 8 + chart - h
            << "\" width=\"16\" height=\"" << h << "\" fill=\"black\"><title>rho="
            << format_exponent(samples[i].rho) << "</title></rect>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace ultraspec
