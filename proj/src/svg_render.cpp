#include "coniclines/svg_render.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace coniclines {

namespace {

bool at_infinity(const ProjectiveLine& l) {
    return sgn(l.coeffs()[0]) == 0 && sgn(l.coeffs()[1]) == 0;
}

struct AffinePoint {
    Rational x, y;
};

// Some finite point of a finite line a x + b y + c = 0.
AffinePoint sample_point(const ProjectiveLine& l) {
    const Triple& c = l.coeffs();
    if (sgn(c[1]) != 0)
        return {Rational(0), make_rational(-c[2], c[1])};
    return {make_rational(-c[2], c[0]), Rational(0)};
}

// Decimal with 12 significant digits, deterministic.
std::string decimal(const Rational& q) {
    if (sgn(q) == 0)
        return "0";
    Int num = abs(q.get_num());
    Int den = q.get_den();
    // Scale so that the integer division keeps 12 significant digits.
    int digits = 0;
    Int mag = num / den;
    for (Int t = mag; t > 0; t /= 10)
        ++digits;
    int shift = digits >= 12 ? 0 : 12 - digits;
    Int pow10 = 1;
    for (int i = 0; i < shift; ++i)
        pow10 *= 10;
    Int scaled = (num * pow10 * 2 + den) / (den * 2); // round half up
    std::string s = scaled.get_str();
    std::string out;
    if (shift == 0) {
        out = s;
    } else if (static_cast<int>(s.size()) <= shift) {
        out = "0." + std::string(shift - s.size(), '0') + s;
    } else {
        out = s.substr(0, s.size() - shift) + "." + s.substr(s.size() - shift);
    }
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0')
            out.pop_back();
        if (out.back() == '.')
            out.pop_back();
    }
    return (sgn(q) < 0 ? "-" : "") + out;
}

struct Segment {
    AffinePoint a, b;
};

// Exact clip of a line against the viewport rectangle.
std::optional<Segment> clip_line(const ProjectiveLine& l, const Viewport& vp) {
    const Triple& c = l.coeffs();
    Rational a(c[0]), b(c[1]), cc(c[2]);
    std::vector<AffinePoint> hits;
    auto push = [&](const Rational& x, const Rational& y) {
        if (x < vp.xmin || x > vp.xmax || y < vp.ymin || y > vp.ymax)
            return;
        for (const auto& h : hits)
            if (h.x == x && h.y == y)
                return;
        hits.push_back({x, y});
    };
    if (sgn(b) != 0) {
        push(vp.xmin, (-cc - a * vp.xmin) / b);
        push(vp.xmax, (-cc - a * vp.xmax) / b);
    }
    if (sgn(a) != 0) {
        push((-cc - b * vp.ymin) / a, vp.ymin);
        push((-cc - b * vp.ymax) / a, vp.ymax);
    }
    if (hits.size() < 2)
        return std::nullopt;
    // Take the two extreme hits along the dominant direction.
    auto key = [&](const AffinePoint& p) { return sgn(b) != 0 ? p.x : p.y; };
    auto [mn, mx] = std::minmax_element(hits.begin(), hits.end(), [&](const auto& p, const auto& q) {
        return key(p) < key(q);
    });
    if (key(*mn) == key(*mx))
        return std::nullopt;
    return Segment{*mn, *mx};
}

} // namespace

std::string render_svg(const LineConfig& r, std::optional<Viewport> viewport) {
    if (r.empty())
        fail(ErrorCode::empty_config, "render_svg on an empty configuration");

    std::vector<std::pair<ProjectiveLine, Mult>> finite, infinite;
    for (const auto& [line, mult] : r.entries())
        (at_infinity(line) ? infinite : finite).emplace_back(line, mult);

    Viewport vp{Rational(-10), Rational(-10), Rational(10), Rational(10)};
    if (viewport) {
        vp = *viewport;
        if (vp.xmin >= vp.xmax || vp.ymin >= vp.ymax)
            fail(ErrorCode::invalid_argument, "viewport must be nondegenerate");
    } else if (!finite.empty()) {
        // Cover all finite pairwise intersections plus one point per line,
        // so every finite line crosses the interior.
        std::vector<AffinePoint> anchors;
        for (size_t i = 0; i < finite.size(); ++i) {
            anchors.push_back(sample_point(finite[i].first));
            for (size_t j = i + 1; j < finite.size(); ++j) {
                ProjectivePoint p = intersect_lines(finite[i].first, finite[j].first);
                const Triple& t = p.coords();
                if (sgn(t[2]) != 0)
                    anchors.push_back({make_rational(t[0], t[2]), make_rational(t[1], t[2])});
            }
        }
        vp.xmin = vp.xmax = anchors.front().x;
        vp.ymin = vp.ymax = anchors.front().y;
        for (const auto& pt : anchors) {
            vp.xmin = std::min(vp.xmin, pt.x);
            vp.xmax = std::max(vp.xmax, pt.x);
            vp.ymin = std::min(vp.ymin, pt.y);
            vp.ymax = std::max(vp.ymax, pt.y);
        }
        Rational spread = (vp.xmax - vp.xmin + vp.ymax - vp.ymin) / 10;
        Rational margin = std::max(Rational(1), spread);
        vp.xmin -= margin;
        vp.xmax += margin;
        vp.ymin -= margin;
        vp.ymax += margin;
    }

    Mult max_mult = 1;
    for (const auto& [line, mult] : r.entries())
        max_mult = std::max(max_mult, mult);

    std::ostringstream svg;
    Rational w = vp.xmax - vp.xmin, h = vp.ymax - vp.ymin;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
        << decimal(vp.xmin) << " " << decimal(vp.ymin) << " " << decimal(w) << " " << decimal(h)
        << "\">\n";
    Rational stroke_unit = std::max(w, h) / 400;
    for (const auto& [line, mult] : finite) {
        auto seg = clip_line(line, vp);
        if (!seg)
            continue;
        Rational width = stroke_unit * Rational(1 + 2 * (mult - 1));
        svg << "  <path d=\"M " << decimal(seg->a.x) << " " << decimal(seg->a.y) << " L "
            << decimal(seg->b.x) << " " << decimal(seg->b.y) << "\" stroke=\"black\" stroke-width=\""
            << decimal(width) << "\" fill=\"none\"><title>line " << line.str() << " x" << mult
            << "</title></path>\n";
    }
    if (!infinite.empty()) {
        svg << "  <text x=\"" << decimal(vp.xmin) << "\" y=\"" << decimal(vp.ymin)
            << "\" font-size=\"" << decimal(stroke_unit * 10) << "\">";
        for (const auto& [line, mult] : infinite)
            svg << "line at infinity x" << mult << "; ";
        svg << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace coniclines
