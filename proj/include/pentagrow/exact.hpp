#pragma once

// Exact arithmetic for the pentagon growth model.
//
// Every vertex and center of every pentagon lives in the ring of cyclotomic
// integers Z[zeta], zeta = exp(2*pi*i/5). Points are stored over the basis
// (1, zeta, zeta^2, zeta^3). Real-valued quantities derived from points
// (coordinates, cross products, projections) live in Q(sqrt5), and every
// predicate reduces to the sign of a number p + q*sqrt5 decided with integer
// comparisons only.
//
// Embedding: X = Re(z), Y = Im(z) / sin(36 deg). Dividing by the positive
// constant sin(36 deg) keeps Y in Q(sqrt5) and never changes a sign.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>

#include "pentagrow/errors.hpp"

namespace pentagrow {

namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t sub(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
std::int64_t neg(std::int64_t a);
}  // namespace checked

/// p + q*sqrt5 with integer p and q. Used for scaled numerators on hot paths
/// where a common positive denominator is carried implicitly.
struct ZRoot5 {
    std::int64_t p = 0;
    std::int64_t q = 0;

    friend bool operator==(const ZRoot5&, const ZRoot5&) = default;
    friend ZRoot5 operator+(ZRoot5 a, ZRoot5 b) { return {checked::add(a.p, b.p), checked::add(a.q, b.q)}; }
    friend ZRoot5 operator-(ZRoot5 a, ZRoot5 b) { return {checked::sub(a.p, b.p), checked::sub(a.q, b.q)}; }
    friend ZRoot5 operator-(ZRoot5 a) { return {checked::neg(a.p), checked::neg(a.q)}; }
    friend ZRoot5 operator*(ZRoot5 a, ZRoot5 b);
    friend ZRoot5 operator*(std::int64_t k, ZRoot5 a) { return {checked::mul(k, a.p), checked::mul(k, a.q)}; }
    ZRoot5& operator+=(ZRoot5 o) { return *this = *this + o; }
    ZRoot5& operator-=(ZRoot5 o) { return *this = *this - o; }

    double to_double() const;
};

/// Sign of p + q*sqrt5 in {-1, 0, +1}, decided without floating point.
int sign(ZRoot5 v);

/// (p + q*sqrt5) / d, kept normalized: d > 0 and gcd(p, q, d) = 1.
class QSqrt5 {
public:
    QSqrt5() = default;
    QSqrt5(std::int64_t p, std::int64_t q = 0, std::int64_t d = 1);
    QSqrt5(ZRoot5 num, std::int64_t d = 1) : QSqrt5(num.p, num.q, d) {}

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    std::int64_t d() const { return d_; }

    bool is_zero() const { return p_ == 0 && q_ == 0; }
    bool is_rational() const { return q_ == 0; }
    bool is_integer() const { return q_ == 0 && d_ == 1; }

    double to_double() const;
    std::string to_string() const;

    friend bool operator==(const QSqrt5&, const QSqrt5&) = default;
    friend QSqrt5 operator+(const QSqrt5& a, const QSqrt5& b);
    friend QSqrt5 operator-(const QSqrt5& a, const QSqrt5& b);
    friend QSqrt5 operator-(const QSqrt5& a);
    friend QSqrt5 operator*(const QSqrt5& a, const QSqrt5& b);
    /// Throws std::domain_error when b is zero.
    friend QSqrt5 operator/(const QSqrt5& a, const QSqrt5& b);
    QSqrt5& operator+=(const QSqrt5& o) { return *this = *this + o; }
    QSqrt5& operator-=(const QSqrt5& o) { return *this = *this - o; }

    friend int sign(const QSqrt5& v) { return sign(ZRoot5{v.p_, v.q_}); }
    friend std::ostream& operator<<(std::ostream& os, const QSqrt5& v);

private:
    std::int64_t p_ = 0;
    std::int64_t q_ = 0;
    std::int64_t d_ = 1;
};

int compare(const QSqrt5& a, const QSqrt5& b);

/// phi = 2 cos(72 deg) = (sqrt5 - 1) / 2.
QSqrt5 phi();
/// Squared side length of the unit-circumradius pentagon, (5 - sqrt5) / 2.
QSqrt5 side_length_squared();

/// A point of Z[zeta] over the basis (1, zeta, zeta^2, zeta^3).
struct CycPoint {
    std::array<std::int64_t, 4> a{};

    /// zeta^k for any integer k, reduced with zeta^4 = -1 - zeta - zeta^2 - zeta^3.
    static CycPoint zeta_pow(int k);

    friend bool operator==(const CycPoint&, const CycPoint&) = default;
    friend auto operator<=>(const CycPoint&, const CycPoint&) = default;
    friend CycPoint operator+(const CycPoint& x, const CycPoint& y);
    friend CycPoint operator-(const CycPoint& x, const CycPoint& y);
    friend CycPoint operator-(const CycPoint& x);
    friend CycPoint operator*(const CycPoint& x, const CycPoint& y);
    CycPoint& operator+=(const CycPoint& o) { return *this = *this + o; }
    CycPoint& operator-=(const CycPoint& o) { return *this = *this - o; }

    bool is_zero() const { return a == std::array<std::int64_t, 4>{}; }
    std::string to_string() const;
};

struct CycPointHash {
    std::size_t operator()(const CycPoint& p) const noexcept;
};

/// Exact (X, Y) embedding; Y is Im / sin(36 deg).
struct XYProjection {
    QSqrt5 x;
    QSqrt5 y;
    friend bool operator==(const XYProjection&, const XYProjection&) = default;
};

XYProjection project(const CycPoint& p);

/// Integer-only numerators of the projection: x4 = 4X and y2 = 2Y.
struct ScaledXY {
    ZRoot5 x4;
    ZRoot5 y2;
};

ScaledXY project_scaled(const CycPoint& p);

/// Floating plane coordinates (true Re, Im). Only for bucketing and rendering.
std::pair<double, double> to_plane(const CycPoint& p);

/// Sign of (b - a) x (c - a): +1 counterclockwise, 0 collinear, -1 clockwise.
int orient(const CycPoint& a, const CycPoint& b, const CycPoint& c);

/// One of the ten directions at multiples of 36 deg. Class 0 is the direction
/// of the seed pentagon's edge from zeta^0 to zeta^1; class k is rotated
/// counterclockwise by 36*k degrees from it.
struct DirectionClass {
    int k = 0;
    friend bool operator==(const DirectionClass&, const DirectionClass&) = default;
    friend auto operator<=>(const DirectionClass&, const DirectionClass&) = default;
    DirectionClass opposite() const { return {(k + 5) % 10}; }
};

/// Unit-side vector of class k: (zeta - 1) rotated by 36*k degrees.
const CycPoint& reference_direction(int k);

/// Throws NotAGridDirection if v is zero or not parallel to a grid direction.
DirectionClass direction_class(const CycPoint& v);

/// v = lambda * reference_direction(class) with lambda > 0; returns lambda,
/// i.e. the length of v in side-length units. Throws NotAGridDirection.
QSqrt5 length_in_sides(const CycPoint& v);

enum class Orientation : std::uint8_t { Up = 0, Down = 1 };

inline Orientation flip(Orientation o) { return o == Orientation::Up ? Orientation::Down : Orientation::Up; }
inline char to_char(Orientation o) { return o == Orientation::Up ? 'U' : 'D'; }

/// Vertex j (mod 5) of a unit-circumradius pentagon: c + zeta^j when Up, c - zeta^j when Down.
CycPoint pentagon_vertex(const CycPoint& center, Orientation o, int j);

/// True iff the open interiors of the two pentagons intersect. Touching along
/// an edge or at a vertex is not an overlap.
bool interiors_overlap(const CycPoint& c1, Orientation o1, const CycPoint& c2, Orientation o2);

/// w_k = zeta^k + zeta^(k+1): the offset from an Up pentagon's center to the
/// center of the pentagon glued on its side k.
CycPoint center_offset(int k);

struct BasisRelationReport {
    /// labeling[i] = index k such that u_(i+1) = w_k.
    std::array<int, 5> labeling{};
    bool sum_is_zero = false;
    /// u3 = -u1 + phi u2, u4 = -phi u1 - phi u2, u5 = phi u1 - u2.
    std::array<bool, 3> relation_holds{};

    bool passed() const { return sum_is_zero && relation_holds[0] && relation_holds[1] && relation_holds[2]; }
};

/// Evaluates the three center-basis relations for a fixed labeling of w.
std::array<bool, 3> check_basis_relations(std::span<const CycPoint, 5> w, const std::array<int, 5>& labeling);

/// Searches the labelings of w for one satisfying all three relations.
/// Throws NoLabelingFound when none exists.
BasisRelationReport verify_center_basis_relations(std::span<const CycPoint, 5> w);
BasisRelationReport verify_center_basis_relations();

}  // namespace pentagrow
