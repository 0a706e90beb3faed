#pragma once

#include <span>
#include <string>
#include <vector>

#include "ifcr/model.hpp"

namespace ifcr::geometry {

/// Rate-weighting direction, normalized so w1 + w2 = 1.
struct Direction {
    double w1 = 0.5, w2 = 0.5;

    Direction() = default;
    Direction(double a, double b);
};

/// nDirections directions uniform in angle over the quarter circle [0, 90 deg].
std::vector<Direction> direction_grid(int nDirections);

struct RatePoint {
    double r1 = 0.0, r2 = 0.0;
    bool operator==(const RatePoint&) const = default;
};

/// Extreme points of a pentagon: origin, the two axis corners and, when the
/// sum constraint is active, the corners of the sum face. Duplicates removed.
std::vector<RatePoint> pentagon_corners(const Pentagon& p);

/// Support function of the convex hull of the union: max over every corner of
/// every pentagon of w1*R1 + w2*R2.
double support(std::span<const Pentagon> pentagons, const Direction& d);

struct IncludesReport {
    bool contained = false;
    Direction worstDirection;
    double worstGap = 0.0;  // max over the grid of support(inner) - support(outer)
};

/// Tests hull(union(inner)) subseteq hull(union(outer)) by comparing support
/// functions on a direction grid; exact for pentagon families up to tol.
IncludesReport includes(std::span<const Pentagon> inner, std::span<const Pentagon> outer,
                        int nDirections = 181, double tol = 1e-9);

/// Upper-right boundary of the convex hull of a pentagon union, ordered from
/// the (r1*, 0) end to the (0, r2*) end. Exact (computed from corner points);
/// nDirections is accepted for interface symmetry with includes() and does not
/// affect the result.
struct Frontier {
    std::vector<RatePoint> vertices;
};

Frontier frontier(std::span<const Pentagon> pentagons, int nDirections = 181);

/// CSV rows "R1,R2" with a header, '.' decimal, 12 significant digits.
std::string to_csv(const Frontier& f);

}  // namespace ifcr::geometry
