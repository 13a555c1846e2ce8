#include "riddlesmith/icon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace rsm {

namespace {

constexpr int kLattice = 64;
constexpr double kPi = 3.14159265358979323846;

double quant(double v) {
    double q = std::round(std::clamp(v, 0.0, 1.0) * kLattice) / kLattice;
    return q;
}

Vec2 quantize(Vec2 p) { return {quant(p.x), quant(p.y)}; }

void quantize_stroke(Stroke& s) {
    for (auto& p : s.points) p = quantize(p);
    // collapse consecutive duplicates introduced by quantization
    auto last = std::unique(s.points.begin(), s.points.end());
    s.points.erase(last, s.points.end());
    if (s.closed && s.points.size() > 1 && s.points.front() == s.points.back())
        s.points.pop_back();
}

Stroke polyline(std::vector<Vec2> pts, bool closed, bool chord = false) {
    Stroke s{std::move(pts), closed, chord};
    quantize_stroke(s);
    return s;
}

int qx(double v) { return static_cast<int>(std::lround(v * kLattice)); }

// --------------------------------------------------------------- primitives

std::vector<Vec2> regular_ring(int n, double r0, double r1, double jitter, RngStream* rng,
                               bool mirror_exact) {
    // Vertices around (0.5, 0.5); alternating radii when r1 != r0 (stars).
    // mirror_exact builds the right half as the exact lattice mirror of the
    // left so the axial class survives quantization.
    std::vector<Vec2> pts(static_cast<size_t>(n));
    for (int k = 0; k <= n / 2; ++k) {
        double ang = -kPi / 2 + 2 * kPi * k / n;
        double r = (k % 2 == 0) ? r0 : r1;
        if (rng && jitter > 0) r += (rng->unit() - 0.5) * 2 * jitter;
        pts[static_cast<size_t>(k)] = quantize({0.5 + r * std::cos(ang), 0.5 + r * std::sin(ang)});
    }
    for (int k = n / 2 + 1; k < n; ++k) {
        if (mirror_exact) {
            Vec2 m = pts[static_cast<size_t>(n - k)];
            pts[static_cast<size_t>(k)] = {1.0 - m.x, m.y};
        } else {
            double ang = -kPi / 2 + 2 * kPi * k / n;
            double r = (k % 2 == 0) ? r0 : r1;
            if (rng && jitter > 0) r += (rng->unit() - 0.5) * 2 * jitter;
            pts[static_cast<size_t>(k)] =
                quantize({0.5 + r * std::cos(ang), 0.5 + r * std::sin(ang)});
        }
    }
    return pts;
}

// Closed Catmull-Rom loop through control points, flattened to a polyline.
std::vector<Vec2> smooth_loop(const std::vector<Vec2>& ctrl, bool closed) {
    std::vector<Vec2> out;
    const int n = static_cast<int>(ctrl.size());
    const int steps = 6;
    const int segs = closed ? n : n - 1;
    for (int i = 0; i < segs; ++i) {
        auto at = [&](int k) {
            if (closed) return ctrl[static_cast<size_t>(((k % n) + n) % n)];
            return ctrl[static_cast<size_t>(std::clamp(k, 0, n - 1))];
        };
        Vec2 p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
        for (int t = 0; t < steps; ++t) {
            double u = static_cast<double>(t) / steps;
            double u2 = u * u, u3 = u2 * u;
            out.push_back({0.5 * ((2 * p1.x) + (-p0.x + p2.x) * u +
                                  (2 * p0.x - 5 * p1.x + 4 * p2.x - p3.x) * u2 +
                                  (-p0.x + 3 * p1.x - 3 * p2.x + p3.x) * u3),
                           0.5 * ((2 * p1.y) + (-p0.y + p2.y) * u +
                                  (2 * p0.y - 5 * p1.y + 4 * p2.y - p3.y) * u2 +
                                  (-p0.y + 3 * p1.y - 3 * p2.y + p3.y) * u3)});
        }
    }
    if (!closed) out.push_back(ctrl.back());
    return out;
}

// ------------------------------------------------------- icon constructors

Icon make_polygon(RngStream& rng, bool symmetric) {
    Icon icon;
    icon.family = ShapeFamily::polygon;
    int n = static_cast<int>(rng.range(3, 9));
    double r = 0.30 + rng.unit() * 0.12;
    icon.strokes.push_back(
        polyline(regular_ring(n, r, r, symmetric ? 0.0 : 0.10, &rng, symmetric), true));
    return icon;
}

Icon make_star(RngStream& rng, bool symmetric) {
    Icon icon;
    icon.family = ShapeFamily::star;
    int spikes = static_cast<int>(rng.range(4, 8));
    double r0 = 0.34 + rng.unit() * 0.08;
    double r1 = r0 * (0.38 + rng.unit() * 0.2);
    icon.strokes.push_back(polyline(
        regular_ring(2 * spikes, r0, r1, symmetric ? 0.0 : 0.06, &rng, symmetric), true));
    return icon;
}

Icon make_arrow(RngStream& rng, bool symmetric) {
    Icon icon;
    icon.family = ShapeFamily::arrow;
    double hw = 0.10 + rng.unit() * 0.08;   // shaft half-width
    double head = 0.22 + rng.unit() * 0.10; // head half-width
    double hy = 0.34 + rng.unit() * 0.14;   // head base y
    double skew = symmetric ? 0.0 : (rng.unit() - 0.5) * 0.18;
    std::vector<Vec2> pts = {{0.5 + skew, 0.10}, {0.5 + head, hy},    {0.5 + hw, hy},
                             {0.5 + hw, 0.90},   {0.5 - hw, 0.90},    {0.5 - hw, hy},
                             {0.5 - head, hy}};
    if (symmetric) {
        // rebuild right side as exact mirror of left
        pts[1] = {1.0 - pts[6].x, pts[6].y};
        pts[2] = {1.0 - pts[5].x, pts[5].y};
        pts[3] = {1.0 - pts[4].x, pts[4].y};
    }
    icon.strokes.push_back(polyline(pts, true));
    return icon;
}

Icon make_blob(RngStream& rng, bool closed) {
    Icon icon;
    icon.family = ShapeFamily::curve_blob;
    int n = static_cast<int>(rng.range(4, 7));
    std::vector<Vec2> ctrl;
    for (int k = 0; k < n; ++k) {
        double ang = 2 * kPi * k / n + (rng.unit() - 0.5) * 0.5;
        double r = 0.18 + rng.unit() * 0.22;
        ctrl.push_back({0.5 + r * std::cos(ang), 0.5 + r * std::sin(ang)});
    }
    icon.strokes.push_back(polyline(smooth_loop(ctrl, closed), closed));
    return icon;
}

// Point-symmetric polygon: half contour plus its exact lattice point
// reflection about the center.
Icon make_pinwheel(RngStream& rng) {
    Icon icon;
    icon.family = ShapeFamily::polygon;
    int half = static_cast<int>(rng.range(3, 5));
    std::vector<Vec2> pts;
    for (int k = 0; k < half; ++k) {
        double ang = kPi * k / half + rng.unit() * (kPi / half) * 0.55;
        double r = 0.22 + rng.unit() * 0.2;
        pts.push_back(quantize({0.5 + r * std::cos(ang), 0.5 + r * std::sin(ang)}));
    }
    size_t n = pts.size();
    for (size_t k = 0; k < n; ++k) pts.push_back({1.0 - pts[k].x, 1.0 - pts[k].y});
    icon.strokes.push_back(polyline(pts, true));
    return icon;
}

// Regular host polygon with a fan of non-crossing chords from vertex 0.
Icon make_chorded(RngStream& rng, int chords) {
    Icon icon;
    icon.family = ShapeFamily::composite;
    int n = static_cast<int>(rng.range(std::max(5, chords + 3), 9));
    double r = 0.34 + rng.unit() * 0.10;
    auto ring = regular_ring(n, r, r, 0.06, &rng, false);
    Stroke host = polyline(ring, true);
    icon.strokes.push_back(host);
    for (int c = 0; c < chords; ++c) {
        icon.strokes.push_back(
            Stroke{{host.points[0], host.points[static_cast<size_t>(2 + c)]}, false, true});
    }
    return icon;
}

// Host polygon plus small detached closed satellites in the corners.
Icon make_satellites(RngStream& rng, int count) {
    Icon icon;
    icon.family = ShapeFamily::composite;
    double r = 0.20 + rng.unit() * 0.06;
    icon.strokes.push_back(
        polyline(regular_ring(static_cast<int>(rng.range(3, 6)), r, r, 0.04, &rng, false), true));
    static constexpr double corners[4][2] = {{0.14, 0.14}, {0.86, 0.14}, {0.86, 0.86}, {0.14, 0.86}};
    for (int k = 0; k < count; ++k) {
        double cx = corners[k][0], cy = corners[k][1];
        double s = 0.05 + rng.unit() * 0.03;
        icon.strokes.push_back(polyline(
            {{cx - s, cy - s}, {cx + s, cy - s}, {cx + s, cy + s}, {cx - s, cy + s}}, true));
    }
    return icon;
}

// Host polygon plus short open tick marks in the corners.
Icon make_marks(RngStream& rng, int count) {
    Icon icon;
    icon.family = ShapeFamily::composite;
    double r = 0.20 + rng.unit() * 0.06;
    icon.strokes.push_back(
        polyline(regular_ring(static_cast<int>(rng.range(3, 7)), r, r, 0.05, &rng, false), true));
    static constexpr double corners[4][2] = {{0.13, 0.13}, {0.87, 0.13}, {0.87, 0.87}, {0.13, 0.87}};
    for (int k = 0; k < count; ++k) {
        double cx = corners[k][0], cy = corners[k][1];
        double dx = (rng.unit() - 0.5) * 0.04, s = 0.06 + rng.unit() * 0.03;
        icon.strokes.push_back(polyline({{cx - s + dx, cy + s}, {cx + dx, cy - s}, {cx + s + dx, cy + s}},
                                        false));
    }
    return icon;
}

// Mirror-symmetric open chevron: V shape with exact lattice mirror.
Icon make_open_axial(RngStream& rng) {
    Icon icon;
    icon.family = ShapeFamily::curve_blob;
    double top = 0.14 + rng.unit() * 0.2;
    double bot = 0.62 + rng.unit() * 0.24;
    double w = 0.18 + rng.unit() * 0.18;
    Vec2 left = quantize({0.5 - w, top});
    icon.strokes.push_back(Stroke{{left, quantize({0.5, bot}), {1.0 - left.x, left.y}}, false});
    if (rng.below(2)) {
        double y = top + 0.1;
        Vec2 l2 = quantize({0.5 - w * 0.6, y});
        icon.strokes.push_back(Stroke{{l2, {1.0 - l2.x, l2.y}}, false});
    }
    return icon;
}

// Point-symmetric open polyline: path plus its reversed point reflection.
Icon make_open_central(RngStream& rng) {
    Icon icon;
    icon.family = ShapeFamily::curve_blob;
    std::vector<Vec2> half;
    const int n = static_cast<int>(rng.range(2, 3));
    for (int k = 0; k <= n; ++k)
        half.push_back(quantize({0.14 + 0.36 * k / n + (rng.unit() - 0.5) * 0.08,
                                 0.3 + rng.unit() * 0.4}));
    std::vector<Vec2> pts = half;
    for (auto it = half.rbegin(); it != half.rend(); ++it)
        pts.push_back({1.0 - it->x, 1.0 - it->y});
    icon.strokes.push_back(Stroke{std::move(pts), false});
    return icon;
}

// Open zigzag strokes stacked in horizontal bands; zero closed regions.
Icon make_multiopen(RngStream& rng, int count) {
    Icon icon;
    icon.family = ShapeFamily::curve_blob;
    for (int k = 0; k < count; ++k) {
        double y0 = 0.14 + 0.72 * k / count;
        double y1 = y0 + 0.5 / count;
        std::vector<Vec2> pts;
        int segs = static_cast<int>(rng.range(3, 5));
        for (int i = 0; i <= segs; ++i) {
            pts.push_back({0.14 + 0.72 * i / segs + (rng.unit() - 0.5) * 0.05,
                           (i % 2 == 0 ? y0 : y1)});
        }
        icon.strokes.push_back(polyline(pts, false));
    }
    return icon;
}

// -------------------------------------------------------- bucket scheduling

using Maker = Icon (*)(RngStream&);

struct Bucket {
    const char* tag;
    Icon (*make)(RngStream&);
};

Icon b_poly_sym(RngStream& r) { return make_polygon(r, true); }
Icon b_poly_jit(RngStream& r) { return make_polygon(r, false); }
Icon b_star_sym(RngStream& r) { return make_star(r, true); }
Icon b_star_jit(RngStream& r) { return make_star(r, false); }
Icon b_arrow_sym(RngStream& r) { return make_arrow(r, true); }
Icon b_arrow_jit(RngStream& r) { return make_arrow(r, false); }
Icon b_blob_closed(RngStream& r) { return make_blob(r, true); }
Icon b_blob_open(RngStream& r) { return make_blob(r, false); }
Icon b_pinwheel(RngStream& r) { return make_pinwheel(r); }
Icon b_chord1(RngStream& r) { return make_chorded(r, 1); }
Icon b_chord2(RngStream& r) { return make_chorded(r, 2); }
Icon b_chord3(RngStream& r) { return make_chorded(r, 3); }
Icon b_chord4(RngStream& r) { return make_chorded(r, 4); }
Icon b_sat1(RngStream& r) { return make_satellites(r, 1); }
Icon b_sat2(RngStream& r) { return make_satellites(r, 2); }
Icon b_sat3(RngStream& r) { return make_satellites(r, 3); }
Icon b_sat4(RngStream& r) { return make_satellites(r, 4); }
Icon b_mark1(RngStream& r) { return make_marks(r, 1); }
Icon b_mark2(RngStream& r) { return make_marks(r, 2); }
Icon b_mark3(RngStream& r) { return make_marks(r, 3); }
Icon b_mark4(RngStream& r) { return make_marks(r, 4); }
Icon b_open2(RngStream& r) { return make_multiopen(r, 2); }
Icon b_open3(RngStream& r) { return make_multiopen(r, 3); }
Icon b_open4(RngStream& r) { return make_multiopen(r, 4); }
Icon b_open5(RngStream& r) { return make_multiopen(r, 5); }
Icon b_open_axial(RngStream& r) { return make_open_axial(r); }
Icon b_open_central(RngStream& r) { return make_open_central(r); }

constexpr Bucket kSchedule[] = {
    {"poly_sym", b_poly_sym},   {"poly_jit", b_poly_jit},   {"star_sym", b_star_sym},
    {"star_jit", b_star_jit},   {"arrow_sym", b_arrow_sym}, {"arrow_jit", b_arrow_jit},
    {"blob_closed", b_blob_closed}, {"blob_open", b_blob_open}, {"pinwheel", b_pinwheel},
    {"chord1", b_chord1},       {"chord2", b_chord2},       {"chord3", b_chord3},
    {"chord4", b_chord4},       {"sat1", b_sat1},           {"sat2", b_sat2},
    {"sat3", b_sat3},           {"sat4", b_sat4},           {"mark1", b_mark1},
    {"mark2", b_mark2},         {"mark3", b_mark3},         {"mark4", b_mark4},
    {"open2", b_open2},         {"open3", b_open3},         {"open4", b_open4},
    {"open5", b_open5},         {"open_axial", b_open_axial}, {"open_central", b_open_central},
};
constexpr size_t kScheduleSize = sizeof(kSchedule) / sizeof(kSchedule[0]);

}  // namespace

// ------------------------------------------------------------------ analysis

int analyze_stroke_count(const Icon& icon) { return static_cast<int>(icon.strokes.size()); }

namespace {

bool on_boundary(const Vec2& p, const Stroke& host) {
    return std::find(host.points.begin(), host.points.end(), p) != host.points.end();
}

// Proper intersection of open segments (shared endpoints excluded).
bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
        double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
        return (v > 1e-12) - (v < -1e-12);
    };
    if (a == c || a == d || b == c || b == d) return false;
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

int analyze_closed_regions(const Icon& icon) {
    int regions = 0;
    std::vector<const Stroke*> chords;
    std::vector<const Stroke*> closed;
    for (const Stroke& s : icon.strokes) {
        if (s.closed) {
            ++regions;
            closed.push_back(&s);
        } else if (s.chord) {
            chords.push_back(&s);
        }
    }
    // A chord splits a region iff both endpoints sit on a closed boundary and
    // it crosses no other chord.
    for (size_t i = 0; i < chords.size(); ++i) {
        const Stroke& ch = *chords[i];
        if (ch.points.size() != 2) continue;
        bool anchored = false;
        for (const Stroke* host : closed)
            if (on_boundary(ch.points[0], *host) && on_boundary(ch.points[1], *host)) anchored = true;
        if (!anchored) continue;
        bool crosses = false;
        for (size_t j = 0; j < chords.size(); ++j) {
            if (j == i || chords[j]->points.size() != 2) continue;
            if (segments_cross(ch.points[0], ch.points[1], chords[j]->points[0],
                               chords[j]->points[1]))
                crosses = true;
        }
        if (!crosses) ++regions;
    }
    return regions;
}

Symmetry analyze_symmetry(const Icon& icon) {
    std::vector<std::pair<int, int>> pts;
    for (const Stroke& s : icon.strokes)
        for (const Vec2& p : s.points) pts.emplace_back(qx(p.x), qx(p.y));
    if (pts.empty()) return Symmetry::none;
    std::sort(pts.begin(), pts.end());
    int minx = pts[0].first, maxx = pts[0].first, miny = pts[0].second, maxy = pts[0].second;
    for (auto& [x, y] : pts) {
        minx = std::min(minx, x); maxx = std::max(maxx, x);
        miny = std::min(miny, y); maxy = std::max(maxy, y);
    }
    const int X = minx + maxx, Y = miny + maxy;
    auto same = [&](auto&& map) {
        std::vector<std::pair<int, int>> t;
        t.reserve(pts.size());
        for (auto& p : pts) t.push_back(map(p));
        std::sort(t.begin(), t.end());
        return t == pts;
    };
    using P = std::pair<int, int>;
    bool axial = same([&](P p) { return P{X - p.first, p.second}; }) ||
                 same([&](P p) { return P{p.first, Y - p.second}; });
    if (!axial && (maxx - minx) == (maxy - miny)) {
        axial = same([&](P p) { return P{minx + (p.second - miny), miny + (p.first - minx)}; }) ||
                same([&](P p) { return P{minx + (maxy - p.second), miny + (maxx - p.first)}; });
    }
    if (axial) return Symmetry::axial;
    if (same([&](P p) { return P{X - p.first, Y - p.second}; })) return Symmetry::central;
    return Symmetry::none;
}

uint64_t icon_signature(const Icon& icon) {
    uint64_t h = 0x9E3779B97F4A7C15ull ^ static_cast<uint64_t>(icon.family);
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h = splitmix64_mix(h);
    };
    for (const Stroke& s : icon.strokes) {
        mix(0xABCDull ^ (s.closed ? 1 : 0) ^ (s.chord ? 2 : 0));
        mix(s.points.size());
        for (const Vec2& p : s.points) {
            mix(static_cast<uint64_t>(qx(p.x)));
            mix(static_cast<uint64_t>(qx(p.y)));
        }
    }
    return h;
}

// ---------------------------------------------------------------- generation

std::vector<Icon> build_icon_library(int count, RngStream stream) {
    if (count < 1) throw std::invalid_argument("icon count must be >= 1");
    std::vector<Icon> icons;
    icons.reserve(static_cast<size_t>(count));
    std::set<uint64_t> seen;
    long attempts = 0;
    const long budget = 10L * count;
    size_t bucket = 0;
    while (static_cast<int>(icons.size()) < count) {
        if (++attempts > budget)
            throw std::runtime_error(
                "icon library: could not reach " + std::to_string(count) +
                " unique signatures in " + std::to_string(budget) + " attempts");
        Icon icon = kSchedule[bucket % kScheduleSize].make(stream);
        icon.stroke_count = analyze_stroke_count(icon);
        icon.closed_regions = analyze_closed_regions(icon);
        icon.symmetry = analyze_symmetry(icon);
        icon.signature = icon_signature(icon);
        if (!seen.insert(icon.signature).second) continue;  // collision: redraw same bucket
        char buf[24];
        std::snprintf(buf, sizeof(buf), "icon_%05zu", icons.size());
        icon.id = buf;
        icons.push_back(std::move(icon));
        ++bucket;
    }
    return icons;
}

// ------------------------------------------------------------ builtin glyphs

namespace {

Icon finish_builtin(Icon icon, std::string id, ShapeFamily family) {
    icon.id = std::move(id);
    icon.family = family;
    icon.stroke_count = analyze_stroke_count(icon);
    icon.closed_regions = analyze_closed_regions(icon);
    icon.symmetry = analyze_symmetry(icon);
    icon.signature = icon_signature(icon);
    return icon;
}

Icon make_square_glyph(const std::string& id, double margin) {
    Icon icon;
    icon.strokes.push_back(polyline(
        {{margin, margin}, {1 - margin, margin}, {1 - margin, 1 - margin}, {margin, 1 - margin}},
        true));
    return finish_builtin(std::move(icon), id, ShapeFamily::polygon);
}

// Seven-segment digit strokes in a 0..1 box.
Icon make_digit_glyph(int digit) {
    static constexpr const char* seg_map[10] = {
        "abcdef", "bc", "abged", "abgcd", "fgbc", "afgcd", "afgedc", "abc", "abcdefg", "abcfgd"};
    const double L = 0.24, R = 0.76, T = 0.08, M = 0.5, B = 0.92;
    auto seg = [&](char s) -> Stroke {
        switch (s) {
            case 'a': return polyline({{L, T}, {R, T}}, false);
            case 'b': return polyline({{R, T}, {R, M}}, false);
            case 'c': return polyline({{R, M}, {R, B}}, false);
            case 'd': return polyline({{L, B}, {R, B}}, false);
            case 'e': return polyline({{L, M}, {L, B}}, false);
            case 'f': return polyline({{L, T}, {L, M}}, false);
            default: return polyline({{L, M}, {R, M}}, false);
        }
    };
    Icon icon;
    for (const char* p = seg_map[digit]; *p; ++p) icon.strokes.push_back(seg(*p));
    return finish_builtin(std::move(icon), "#digit/" + std::to_string(digit),
                          ShapeFamily::composite);
}

Icon make_cube_glyph() {
    // Isometric unit cube: three rhombus faces.
    Icon icon;
    const Vec2 top{0.5, 0.08}, left{0.08, 0.30}, right{0.92, 0.30}, mid{0.5, 0.52};
    const Vec2 lb{0.08, 0.74}, rb{0.92, 0.74}, bot{0.5, 0.96};
    icon.strokes.push_back(polyline({top, right, mid, left}, true));
    icon.strokes.push_back(polyline({left, mid, bot, lb}, true));
    icon.strokes.push_back(polyline({mid, right, rb, bot}, true));
    return finish_builtin(std::move(icon), "#cube", ShapeFamily::composite);
}

Icon make_face_glyph(int k) {
    Icon icon;
    switch (k) {
        case 0:  // dot
            icon.strokes.push_back(
                polyline({{0.4, 0.4}, {0.6, 0.4}, {0.6, 0.6}, {0.4, 0.6}}, true));
            break;
        case 1:  // ring: two concentric squares
            icon.strokes.push_back(
                polyline({{0.2, 0.2}, {0.8, 0.2}, {0.8, 0.8}, {0.2, 0.8}}, true));
            icon.strokes.push_back(
                polyline({{0.38, 0.38}, {0.62, 0.38}, {0.62, 0.62}, {0.38, 0.62}}, true));
            break;
        case 2:  // cross
            icon.strokes.push_back(polyline({{0.2, 0.2}, {0.8, 0.8}}, false));
            icon.strokes.push_back(polyline({{0.8, 0.2}, {0.2, 0.8}}, false));
            break;
        case 3:  // triple bar
            for (int i = 0; i < 3; ++i) {
                const double y = 0.3 + 0.2 * i;
                icon.strokes.push_back(polyline({{0.2, y}, {0.8, y}}, false));
            }
            break;
        case 4:  // chevron
            icon.strokes.push_back(polyline({{0.2, 0.3}, {0.5, 0.74}, {0.8, 0.3}}, false));
            break;
        default:  // boxed cross
            icon.strokes.push_back(
                polyline({{0.2, 0.2}, {0.8, 0.2}, {0.8, 0.8}, {0.2, 0.8}}, true));
            icon.strokes.push_back(polyline({{0.3, 0.3}, {0.7, 0.7}}, false));
            icon.strokes.push_back(polyline({{0.7, 0.3}, {0.3, 0.7}}, false));
            break;
    }
    // the six marks carry pairwise-distinct (stroke, region) signatures so the
    // attribute projection separates them
    return finish_builtin(std::move(icon), "#face/" + std::to_string(k), ShapeFamily::composite);
}

Icon make_qmark_glyph() {
    Icon icon;
    icon.strokes.push_back(polyline({{0.26, 0.30},
                                     {0.30, 0.16},
                                     {0.44, 0.08},
                                     {0.60, 0.10},
                                     {0.70, 0.22},
                                     {0.68, 0.36},
                                     {0.54, 0.46},
                                     {0.50, 0.56},
                                     {0.50, 0.66}},
                                    false));
    icon.strokes.push_back(
        polyline({{0.46, 0.80}, {0.54, 0.80}, {0.54, 0.88}, {0.46, 0.88}}, true));
    return finish_builtin(std::move(icon), "#qmark", ShapeFamily::composite);
}

Icon make_letter_glyph(char letter) {
    Icon icon;
    switch (letter) {
        case 'A':
            icon.strokes.push_back(polyline({{0.18, 0.9}, {0.5, 0.1}, {0.82, 0.9}}, false));
            icon.strokes.push_back(polyline({{0.32, 0.62}, {0.68, 0.62}}, false));
            break;
        case 'B':
            icon.strokes.push_back(polyline(
                {{0.22, 0.1}, {0.62, 0.1}, {0.72, 0.2}, {0.72, 0.4}, {0.62, 0.5}, {0.22, 0.5}},
                true));
            icon.strokes.push_back(polyline(
                {{0.22, 0.5}, {0.66, 0.5}, {0.78, 0.62}, {0.78, 0.8}, {0.66, 0.9}, {0.22, 0.9}},
                true));
            break;
        case 'C':
            icon.strokes.push_back(polyline({{0.78, 0.22},
                                             {0.62, 0.1},
                                             {0.36, 0.1},
                                             {0.2, 0.28},
                                             {0.2, 0.72},
                                             {0.36, 0.9},
                                             {0.62, 0.9},
                                             {0.78, 0.78}},
                                            false));
            break;
        default:  // 'D'
            icon.strokes.push_back(polyline(
                {{0.22, 0.1}, {0.56, 0.1}, {0.78, 0.32}, {0.78, 0.68}, {0.56, 0.9}, {0.22, 0.9}},
                true));
            break;
    }
    return finish_builtin(std::move(icon), std::string("#label/") + letter,
                          ShapeFamily::composite);
}

// k evenly spaced vertical lines; the canonical k-stroke figure.
Icon make_strokes_glyph(int k) {
    Icon icon;
    for (int i = 0; i < k; ++i) {
        const double x = (k == 1) ? 0.5 : 0.2 + 0.6 * i / (k - 1);
        icon.strokes.push_back(polyline({{x, 0.15}, {x, 0.85}}, false));
    }
    return finish_builtin(std::move(icon), "#strokes/" + std::to_string(k),
                          ShapeFamily::composite);
}

// k disjoint small squares; the canonical k-region figure (0 = open zigzag).
Icon make_regions_glyph(int k) {
    Icon icon;
    if (k == 0) {
        icon.strokes.push_back(polyline({{0.15, 0.6}, {0.4, 0.3}, {0.6, 0.65}, {0.85, 0.35}},
                                        false));
    } else {
        for (int i = 0; i < k; ++i) {
            const int row = i / 3, col = i % 3;
            const double cx = 0.22 + 0.28 * col, cy = 0.3 + 0.34 * row, s = 0.1;
            icon.strokes.push_back(polyline(
                {{cx - s, cy - s}, {cx + s, cy - s}, {cx + s, cy + s}, {cx - s, cy + s}}, true));
        }
    }
    return finish_builtin(std::move(icon), "#regions/" + std::to_string(k),
                          ShapeFamily::composite);
}

Icon make_sym_glyph(const std::string& cls) {
    Icon icon;
    if (cls == "axial") {
        icon.strokes.push_back(polyline({{0.5, 0.12}, {0.85, 0.84}, {0.15, 0.84}}, true));
    } else if (cls == "central") {
        icon.strokes.push_back(polyline(
            {{0.2, 0.32}, {0.68, 0.2}, {0.8, 0.68}, {0.32, 0.8}}, true));
    } else {
        icon.strokes.push_back(polyline({{0.16, 0.2}, {0.88, 0.46}, {0.34, 0.8}}, true));
    }
    return finish_builtin(std::move(icon), "#sym/" + cls, ShapeFamily::polygon);
}

Icon make_class_glyph(bool closed) {
    Icon icon;
    if (closed)
        icon.strokes.push_back(polyline(
            {{0.5, 0.14}, {0.82, 0.32}, {0.82, 0.68}, {0.5, 0.86}, {0.18, 0.68}, {0.18, 0.32}},
            true));
    else
        icon.strokes.push_back(
            polyline({{0.18, 0.7}, {0.38, 0.26}, {0.62, 0.6}, {0.84, 0.22}}, false));
    return finish_builtin(std::move(icon), closed ? "#class/closed" : "#class/open",
                          ShapeFamily::polygon);
}

std::map<std::string, Icon> build_builtins() {
    std::map<std::string, Icon> m;
    auto put = [&m](Icon icon) { m[icon.id] = std::move(icon); };
    put(make_square_glyph("#tile", 0.04));
    put(make_square_glyph("#pcell", 0.06));
    put(make_cube_glyph());
    put(make_qmark_glyph());
    for (int d = 1; d <= 9; ++d) put(make_digit_glyph(d));
    for (int k = 0; k < 6; ++k) put(make_face_glyph(k));
    for (char c : {'A', 'B', 'C', 'D'}) put(make_letter_glyph(c));
    for (int d = 1; d <= 8; ++d) {
        Icon digit = make_digit_glyph(d);
        digit.id = "#label/" + std::to_string(d);
        put(std::move(digit));
    }
    for (int k = 1; k <= 5; ++k) put(make_strokes_glyph(k));
    for (int k = 0; k <= 5; ++k) put(make_regions_glyph(k));
    for (const char* cls : {"axial", "central", "none"}) put(make_sym_glyph(cls));
    put(make_class_glyph(true));
    put(make_class_glyph(false));
    return m;
}

}  // namespace

const Icon& builtin_icon(const std::string& id) {
    static const std::map<std::string, Icon> builtins = build_builtins();
    auto it = builtins.find(id);
    if (it == builtins.end()) throw std::out_of_range("unknown builtin icon: " + id);
    return it->second;
}

bool is_builtin_icon_id(const std::string& id) { return !id.empty() && id[0] == '#'; }

// -------------------------------------------------------------------- pools

std::vector<int> category_pool_indices(RuleCategory category, int library_size, int pool_size,
                                       uint64_t master_seed) {
    std::vector<int> indices(static_cast<size_t>(library_size));
    for (int i = 0; i < library_size; ++i) indices[static_cast<size_t>(i)] = i;
    RngStream rng(master_seed,
                  splitmix64_mix(0x504F4F4Cull ^ static_cast<uint64_t>(category_ordinal(category))));
    rng.shuffle(indices);
    if (pool_size < library_size) indices.resize(static_cast<size_t>(pool_size));
    std::sort(indices.begin(), indices.end());
    return indices;
}

IconLibrary::IconLibrary(std::vector<Icon> icons) : icons_(std::move(icons)) {
    for (size_t i = 0; i < icons_.size(); ++i) index_[icons_[i].id] = i;
}

const Icon& IconLibrary::by_id(const std::string& id) const {
    if (is_builtin_icon_id(id)) return builtin_icon(id);
    auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("unknown icon id: " + id);
    return icons_[it->second];
}

}  // namespace rsm
