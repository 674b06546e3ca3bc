#include "pentagrow/oracle.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace pentagrow::oracle {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>>;

struct Pt {
    Real x, y;
};

const std::array<Pt, 5>& unit_roots() {
    static const std::array<Pt, 5> roots = [] {
        std::array<Pt, 5> r;
        const Real two_pi = 2 * boost::math::constants::pi<Real>();
        for (int j = 0; j < 5; ++j) {
            r[static_cast<std::size_t>(j)] = {cos(two_pi * j / 5), sin(two_pi * j / 5)};
        }
        return r;
    }();
    return roots;
}

Pt to_hp(const CycPoint& p) {
    const auto& z = unit_roots();
    Pt out{0, 0};
    for (std::size_t i = 0; i < 4; ++i) {
        out.x += Real(p.a[i]) * z[i].x;
        out.y += Real(p.a[i]) * z[i].y;
    }
    return out;
}

std::vector<Pt> polygon(const CycPoint& c, Orientation o) {
    const Pt center = to_hp(c);
    const Real s = o == Orientation::Up ? 1 : -1;
    std::vector<Pt> poly;
    for (const Pt& z : unit_roots()) poly.push_back({center.x + s * z.x, center.y + s * z.y});
    return poly;  // counterclockwise for both orientations
}

Real cross(const Pt& o, const Pt& a, const Pt& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

// Sutherland-Hodgman: clip subject by the left half-plane of every edge of
// the convex counterclockwise polygon clip.
std::vector<Pt> clip(std::vector<Pt> subject, const std::vector<Pt>& clipper) {
    for (std::size_t i = 0; i < clipper.size() && !subject.empty(); ++i) {
        const Pt& a = clipper[i];
        const Pt& b = clipper[(i + 1) % clipper.size()];
        std::vector<Pt> out;
        for (std::size_t j = 0; j < subject.size(); ++j) {
            const Pt& p = subject[j];
            const Pt& q = subject[(j + 1) % subject.size()];
            const Real cp = cross(a, b, p), cq = cross(a, b, q);
            if (cp >= 0) out.push_back(p);
            if ((cp >= 0) != (cq >= 0)) {
                const Real t = cp / (cp - cq);
                out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
            }
        }
        subject = std::move(out);
    }
    return subject;
}

Real area(const std::vector<Pt>& poly) {
    Real s = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Pt& p = poly[i];
        const Pt& q = poly[(i + 1) % poly.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return s / 2;
}

Real abs_hp(const Real& v) { return v < 0 ? Real(-v) : v; }

}  // namespace

int sign_hp(std::int64_t p, std::int64_t q, std::int64_t d) {
    const Real v = (Real(p) + Real(q) * sqrt(Real(5))) / Real(d);
    return (v > 0) - (v < 0);
}

std::string value_hp(std::int64_t p, std::int64_t q, std::int64_t d, int digits) {
    const Real v = (Real(p) + Real(q) * sqrt(Real(5))) / Real(d);
    return v.str(digits);
}

double overlap_area(const CycPoint& c1, Orientation o1, const CycPoint& c2, Orientation o2) {
    const Real a = area(clip(polygon(c1, o1), polygon(c2, o2)));
    return static_cast<double>(a);
}

Verdict overlap_verdict(const CycPoint& c1, Orientation o1, const CycPoint& c2, Orientation o2) {
    const Real a = abs_hp(area(clip(polygon(c1, o1), polygon(c2, o2))));
    if (a > Real(1e-20)) return Verdict::Overlap;
    if (a < Real(1e-40)) return Verdict::Disjoint;
    return Verdict::Marginal;
}

SubdivisionCounts subdivision_counts(std::span<const Pentagon> pentagons) {
    const Real tol("1e-30");
    struct Seg {
        Pt a, b;
    };
    std::vector<Seg> sides;
    std::vector<Pt> points;
    for (const Pentagon& p : pentagons) {
        const auto poly = polygon(p.center, p.orientation);
        for (std::size_t k = 0; k < 5; ++k) {
            sides.push_back({poly[k], poly[(k + 1) % 5]});
            points.push_back(poly[k]);
        }
    }

    auto on_segment = [&](const Pt& p, const Seg& s) {
        const Real dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
        const Real len2 = dx * dx + dy * dy;
        const Real c = cross(s.a, s.b, p);
        if (c * c > tol * tol * len2) return false;
        const Real t = ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / len2;
        return t > -tol && t < 1 + tol;
    };

    // Pairwise intersections: crossing points and collinear overlap endpoints.
    for (std::size_t i = 0; i < sides.size(); ++i) {
        for (std::size_t j = i + 1; j < sides.size(); ++j) {
            const Seg& s = sides[i];
            const Seg& r = sides[j];
            const Real d1x = s.b.x - s.a.x, d1y = s.b.y - s.a.y;
            const Real d2x = r.b.x - r.a.x, d2y = r.b.y - r.a.y;
            const Real den = d1x * d2y - d1y * d2x;
            if (abs_hp(den) > tol) {
                const Real t = ((r.a.x - s.a.x) * d2y - (r.a.y - s.a.y) * d2x) / den;
                const Real u = ((r.a.x - s.a.x) * d1y - (r.a.y - s.a.y) * d1x) / den;
                if (t > -tol && t < 1 + tol && u > -tol && u < 1 + tol)
                    points.push_back({s.a.x + t * d1x, s.a.y + t * d1y});
            } else {
                for (const Pt& p : {r.a, r.b})
                    if (on_segment(p, s)) points.push_back(p);
                for (const Pt& p : {s.a, s.b})
                    if (on_segment(p, r)) points.push_back(p);
            }
        }
    }

    // Cluster.
    std::vector<Pt> reps;
    for (const Pt& p : points) {
        bool found = false;
        for (const Pt& q : reps) {
            if (abs_hp(p.x - q.x) < tol && abs_hp(p.y - q.y) < tol) {
                found = true;
                break;
            }
        }
        if (!found) reps.push_back(p);
    }

    auto rep_index = [&](const Pt& p) {
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (abs_hp(p.x - reps[i].x) < tol && abs_hp(p.y - reps[i].y) < tol) return i;
        return reps.size();
    };

    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const Seg& s : sides) {
        const Real dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
        const Real len2 = dx * dx + dy * dy;
        std::vector<std::pair<Real, std::size_t>> along;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (!on_segment(reps[i], s)) continue;
            along.emplace_back(((reps[i].x - s.a.x) * dx + (reps[i].y - s.a.y) * dy) / len2, i);
        }
        std::sort(along.begin(), along.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        (void)rep_index;
        for (std::size_t i = 0; i + 1 < along.size(); ++i) {
            const auto a = along[i].second, b = along[i + 1].second;
            edges.emplace(std::min(a, b), std::max(a, b));
        }
    }
    return {reps.size(), edges.size()};
}

}  // namespace pentagrow::oracle
