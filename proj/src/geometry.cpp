#include "ifcr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace ifcr::geometry {

Direction::Direction(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) raise(errc::nonfinite, "direction components");
    if (a < 0.0 || b < 0.0) raise(errc::bad_value, "direction components must be >= 0");
    const double s = a + b;
    if (s <= 0.0) raise(errc::bad_value, "direction must be nonzero");
    w1 = a / s;
    w2 = b / s;
}

std::vector<Direction> direction_grid(int nDirections) {
    if (nDirections < 3) raise(errc::bad_value, "need at least 3 directions");
    std::vector<Direction> out;
    out.reserve(nDirections);
    for (int k = 0; k < nDirections; ++k) {
        const double theta = (std::numbers::pi / 2.0) * k / (nDirections - 1);
        out.emplace_back(std::cos(theta), std::sin(theta));
    }
    return out;
}

std::vector<RatePoint> pentagon_corners(const Pentagon& p) {
    validate(p);
    const double a = p.r1Max, b = p.r2Max, c = p.effective_sum();
    std::vector<RatePoint> pts;
    pts.push_back({0.0, 0.0});
    pts.push_back({std::min(a, c), 0.0});
    pts.push_back({0.0, std::min(b, c)});
    // Upper corners: walk in from each axis corner until a constraint binds.
    {
        const double x = std::min(a, c);
        pts.push_back({x, std::min(b, c - x)});
    }
    {
        const double y = std::min(b, c);
        pts.push_back({std::min(a, c - y), y});
    }
    std::sort(pts.begin(), pts.end(), [](const RatePoint& u, const RatePoint& v) {
        return u.r1 != v.r1 ? u.r1 < v.r1 : u.r2 < v.r2;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double support(std::span<const Pentagon> pentagons, const Direction& d) {
    if (pentagons.empty()) raise(errc::empty_family, "support of an empty pentagon family");
    double best = 0.0;
    for (const auto& p : pentagons)
        for (const auto& v : pentagon_corners(p))
            best = std::max(best, d.w1 * v.r1 + d.w2 * v.r2);
    return best;
}

namespace {

std::vector<RatePoint> all_corners(std::span<const Pentagon> pentagons, const char* what) {
    if (pentagons.empty()) raise(errc::empty_family, what);
    std::vector<RatePoint> pts;
    for (const auto& p : pentagons)
        for (const auto& v : pentagon_corners(p)) pts.push_back(v);
    return pts;
}

double support_of(const std::vector<RatePoint>& corners, const Direction& d) {
    double best = 0.0;
    for (const auto& v : corners) best = std::max(best, d.w1 * v.r1 + d.w2 * v.r2);
    return best;
}

}  // namespace

IncludesReport includes(std::span<const Pentagon> inner, std::span<const Pentagon> outer,
                        int nDirections, double tol) {
    const auto in = all_corners(inner, "includes: empty inner family");
    const auto out = all_corners(outer, "includes: empty outer family");
    IncludesReport rep;
    rep.worstGap = -std::numeric_limits<double>::infinity();
    for (const auto& d : direction_grid(nDirections)) {
        const double gap = support_of(in, d) - support_of(out, d);
        if (gap > rep.worstGap) {
            rep.worstGap = gap;
            rep.worstDirection = d;
        }
    }
    rep.contained = rep.worstGap <= tol;
    return rep;
}

namespace {

double cross(const RatePoint& o, const RatePoint& a, const RatePoint& b) {
    return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

}  // namespace

Frontier frontier(std::span<const Pentagon> pentagons, int nDirections) {
    (void)nDirections;  // hull is exact from corners
    if (pentagons.empty()) raise(errc::empty_family, "frontier of an empty pentagon family");
    std::vector<RatePoint> pts;
    for (const auto& p : pentagons)
        for (const auto& v : pentagon_corners(p)) pts.push_back(v);
    pts.push_back({0.0, 0.0});
    // Lexicographic order with ties broken by (R1, R2).
    std::sort(pts.begin(), pts.end(), [](const RatePoint& u, const RatePoint& v) {
        return u.r1 != v.r1 ? u.r1 < v.r1 : u.r2 < v.r2;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // Upper hull from (0, r2*) down to (r1*, 0): take the monotone chain over
    // points sorted by increasing R1, keeping right turns only. Starting the
    // chain at the highest point with R1 = 0 drops the lower-left edge.
    std::vector<RatePoint> upper;
    std::size_t start = 0;
    for (std::size_t i = 1; i < pts.size() && pts[i].r1 == pts[0].r1; ++i) start = i;
    for (std::size_t i = start; i < pts.size(); ++i) {
        while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), pts[i]) >= 0.0)
            upper.pop_back();
        upper.push_back(pts[i]);
    }
    // The last point is the max-R1 point with the largest R2 among equals;
    // append the (r1*, 0) endpoint if the hull has a vertical right edge.
    if (!upper.empty() && upper.back().r2 > 0.0) upper.push_back({upper.back().r1, 0.0});

    Frontier f;
    f.vertices.assign(upper.rbegin(), upper.rend());
    return f;
}

std::string to_csv(const Frontier& f) {
    std::string out = "R1,R2\n";
    char buf[80];
    for (const auto& v : f.vertices) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", v.r1, v.r2);
        out += buf;
    }
    return out;
}

}  // namespace ifcr::geometry
