#pragma once

// High-precision floating oracles, independent of the exact Z[zeta] / Q(sqrt5)
// machinery. They evaluate coordinates with 200-bit binary floats straight
// from cos/sin of multiples of 72 degrees, so agreement with the exact
// predicates is a meaningful cross-check.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "pentagrow/exact.hpp"
#include "pentagrow/growth.hpp"

namespace pentagrow::oracle {

/// Sign of (p + q sqrt5) / d evaluated in 200-bit floating point.
int sign_hp(std::int64_t p, std::int64_t q, std::int64_t d);

/// (p + q sqrt5) / d as a decimal string with `digits` significant digits.
std::string value_hp(std::int64_t p, std::int64_t q, std::int64_t d, int digits = 40);

/// Area of the intersection of two unit-circumradius pentagons, computed by
/// convex clipping in 200-bit floating point and rounded to double.
double overlap_area(const CycPoint& c1, Orientation o1, const CycPoint& c2, Orientation o2);

enum class Verdict { Overlap, Disjoint, Marginal };

/// Overlap if the clipped area exceeds 1e-20, Disjoint below 1e-40,
/// Marginal in between.
Verdict overlap_verdict(const CycPoint& c1, Orientation o1, const CycPoint& c2, Orientation o2);

struct SubdivisionCounts {
    std::size_t V = 0;
    std::size_t E = 0;
};

/// V and E of the planar graph by brute force: all pairwise side
/// intersections, clustering of points within 1e-30, and splitting of sides
/// at every clustered point on them. Quadratic; intended for n <= 50.
SubdivisionCounts subdivision_counts(std::span<const Pentagon> pentagons);

}  // namespace pentagrow::oracle
