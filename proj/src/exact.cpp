#include "pentagrow/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

namespace pentagrow {

using i128 = __int128;

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
    return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in subtraction");
    return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
    return r;
}

std::int64_t neg(std::int64_t a) { return sub(0, a); }

}  // namespace checked

namespace {

std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("QSqrt5 component exceeds int64");
    return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

QSqrt5 make_normalized(i128 p, i128 q, i128 d) {
    if (d == 0) throw std::domain_error("QSqrt5 with zero denominator");
    if (d < 0) {
        p = -p;
        q = -q;
        d = -d;
    }
    i128 g = gcd128(gcd128(p, q), d);
    if (g > 1) {
        p /= g;
        q /= g;
        d /= g;
    }
    return QSqrt5(narrow(p), narrow(q), narrow(d));
}

}  // namespace

ZRoot5 operator*(ZRoot5 a, ZRoot5 b) {
    const std::int64_t p = checked::add(checked::mul(a.p, b.p), checked::mul(5, checked::mul(a.q, b.q)));
    const std::int64_t q = checked::add(checked::mul(a.p, b.q), checked::mul(a.q, b.p));
    return {p, q};
}

double ZRoot5::to_double() const { return static_cast<double>(p) + static_cast<double>(q) * std::sqrt(5.0); }

int sign(ZRoot5 v) {
    const int sp = (v.p > 0) - (v.p < 0);
    const int sq = (v.q > 0) - (v.q < 0);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    // Opposite signs: the term with the larger square dominates.
    const i128 p2 = static_cast<i128>(v.p) * v.p;
    const i128 q2 = static_cast<i128>(v.q) * v.q * 5;
    if (p2 > q2) return sp;
    if (p2 < q2) return sq;
    return 0;  // unreachable for integers, sqrt5 is irrational
}

QSqrt5::QSqrt5(std::int64_t p, std::int64_t q, std::int64_t d) : p_(p), q_(q), d_(d) {
    if (d == 0) throw std::domain_error("QSqrt5 with zero denominator");
    const std::int64_t g = std::gcd(std::gcd(p, q), d);
    if (d < 0 || g > 1) *this = make_normalized(p, q, d);
}

double QSqrt5::to_double() const { return ZRoot5{p_, q_}.to_double() / static_cast<double>(d_); }

std::string QSqrt5::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QSqrt5& v) {
    if (v.q_ == 0) {
        os << v.p_;
    } else if (v.p_ == 0) {
        os << v.q_ << "*sqrt5";
    } else {
        os << '(' << v.p_ << (v.q_ < 0 ? "-" : "+") << (v.q_ < 0 ? -v.q_ : v.q_) << "*sqrt5)";
    }
    if (v.d_ != 1) os << '/' << v.d_;
    return os;
}

QSqrt5 operator+(const QSqrt5& a, const QSqrt5& b) {
    if (a.d_ == b.d_) return make_normalized(static_cast<i128>(a.p_) + b.p_, static_cast<i128>(a.q_) + b.q_, a.d_);
    return make_normalized(static_cast<i128>(a.p_) * b.d_ + static_cast<i128>(b.p_) * a.d_,
                           static_cast<i128>(a.q_) * b.d_ + static_cast<i128>(b.q_) * a.d_,
                           static_cast<i128>(a.d_) * b.d_);
}

QSqrt5 operator-(const QSqrt5& a) { return make_normalized(-static_cast<i128>(a.p_), -static_cast<i128>(a.q_), a.d_); }

QSqrt5 operator-(const QSqrt5& a, const QSqrt5& b) { return a + (-b); }

QSqrt5 operator*(const QSqrt5& a, const QSqrt5& b) {
    const i128 p = static_cast<i128>(a.p_) * b.p_ + static_cast<i128>(a.q_) * b.q_ * 5;
    const i128 q = static_cast<i128>(a.p_) * b.q_ + static_cast<i128>(a.q_) * b.p_;
    return make_normalized(p, q, static_cast<i128>(a.d_) * b.d_);
}

QSqrt5 operator/(const QSqrt5& a, const QSqrt5& b) {
    if (b.is_zero()) throw std::domain_error("QSqrt5 division by zero");
    // 1/b = d_b (p_b - q_b sqrt5) / (p_b^2 - 5 q_b^2)
    const i128 norm = static_cast<i128>(b.p_) * b.p_ - static_cast<i128>(b.q_) * b.q_ * 5;
    const QSqrt5 conj = make_normalized(b.p_, -static_cast<i128>(b.q_), 1);
    const QSqrt5 num = a * conj;
    return make_normalized(static_cast<i128>(num.p_) * b.d_, static_cast<i128>(num.q_) * b.d_,
                           static_cast<i128>(num.d_) * norm);
}

int compare(const QSqrt5& a, const QSqrt5& b) { return sign(a - b); }

QSqrt5 phi() { return QSqrt5(-1, 1, 2); }

QSqrt5 side_length_squared() { return QSqrt5(5, -1, 2); }

// ---------------------------------------------------------------------------
// CycPoint

CycPoint CycPoint::zeta_pow(int k) {
    const int m = ((k % 5) + 5) % 5;
    CycPoint r;
    if (m == 4) {
        r.a = {-1, -1, -1, -1};
    } else {
        r.a[static_cast<std::size_t>(m)] = 1;
    }
    return r;
}

CycPoint operator+(const CycPoint& x, const CycPoint& y) {
    CycPoint r;
    for (std::size_t i = 0; i < 4; ++i) r.a[i] = checked::add(x.a[i], y.a[i]);
    return r;
}

CycPoint operator-(const CycPoint& x, const CycPoint& y) {
    CycPoint r;
    for (std::size_t i = 0; i < 4; ++i) r.a[i] = checked::sub(x.a[i], y.a[i]);
    return r;
}

CycPoint operator-(const CycPoint& x) {
    CycPoint r;
    for (std::size_t i = 0; i < 4; ++i) r.a[i] = checked::neg(x.a[i]);
    return r;
}

CycPoint operator*(const CycPoint& x, const CycPoint& y) {
    std::array<std::int64_t, 7> c{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) c[i + j] = checked::add(c[i + j], checked::mul(x.a[i], y.a[j]));
    // zeta^5 = 1, zeta^6 = zeta, zeta^4 = -(1 + zeta + zeta^2 + zeta^3)
    c[0] = checked::add(c[0], c[5]);
    c[1] = checked::add(c[1], c[6]);
    CycPoint r;
    for (std::size_t i = 0; i < 4; ++i) r.a[i] = checked::sub(c[i], c[4]);
    return r;
}

std::string CycPoint::to_string() const {
    std::ostringstream os;
    os << '(' << a[0] << ',' << a[1] << ',' << a[2] << ',' << a[3] << ')';
    return os.str();
}

std::size_t CycPointHash::operator()(const CycPoint& p) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::int64_t v : p.a) {
        std::uint64_t z = static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + h;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        h = z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Projection

// X coefficients of (1, zeta, zeta^2, zeta^3): 1, (sqrt5-1)/4, -(sqrt5+1)/4, -(sqrt5+1)/4
// Y coefficients: 0, (1+sqrt5)/2, 1, -1
ScaledXY project_scaled(const CycPoint& p) {
    const auto& [a0, a1, a2, a3] = p.a;
    const std::int64_t a23 = checked::add(a2, a3);
    ScaledXY s;
    s.x4.p = checked::sub(checked::sub(checked::mul(4, a0), a1), a23);
    s.x4.q = checked::sub(a1, a23);
    s.y2.p = checked::add(a1, checked::mul(2, checked::sub(a2, a3)));
    s.y2.q = a1;
    return s;
}

XYProjection project(const CycPoint& p) {
    const ScaledXY s = project_scaled(p);
    return {QSqrt5(s.x4, 4), QSqrt5(s.y2, 2)};
}

std::pair<double, double> to_plane(const CycPoint& p) {
    static const std::array<double, 4> cs = {1.0, std::cos(2 * std::numbers::pi / 5), std::cos(4 * std::numbers::pi / 5),
                                             std::cos(6 * std::numbers::pi / 5)};
    static const std::array<double, 4> sn = {0.0, std::sin(2 * std::numbers::pi / 5), std::sin(4 * std::numbers::pi / 5),
                                             std::sin(6 * std::numbers::pi / 5)};
    double x = 0.0, y = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        x += static_cast<double>(p.a[i]) * cs[i];
        y += static_cast<double>(p.a[i]) * sn[i];
    }
    return {x, y};
}

namespace {

int cross_sign(const ScaledXY& u, const ScaledXY& v) { return sign(u.x4 * v.y2 - v.x4 * u.y2); }

struct ReferenceTable {
    std::array<CycPoint, 10> dir;
    std::array<ScaledXY, 10> xy;

    ReferenceTable() {
        // Rotation by +36 deg is multiplication by -zeta^3.
        const CycPoint rot = -CycPoint::zeta_pow(3);
        dir[0] = CycPoint::zeta_pow(1) - CycPoint::zeta_pow(0);
        for (std::size_t k = 1; k < 10; ++k) dir[k] = dir[k - 1] * rot;
        for (std::size_t k = 0; k < 10; ++k) xy[k] = project_scaled(dir[k]);
    }
};

const ReferenceTable& references() {
    static const ReferenceTable table;
    return table;
}

}  // namespace

int orient(const CycPoint& a, const CycPoint& b, const CycPoint& c) {
    return cross_sign(project_scaled(b - a), project_scaled(c - a));
}

const CycPoint& reference_direction(int k) { return references().dir[static_cast<std::size_t>(((k % 10) + 10) % 10)]; }

DirectionClass direction_class(const CycPoint& v) {
    if (v.is_zero()) throw NotAGridDirection("zero vector has no direction class");
    const ScaledXY s = project_scaled(v);
    const auto& refs = references();
    for (int k = 0; k < 10; ++k) {
        const ScaledXY& r = refs.xy[static_cast<std::size_t>(k)];
        if (cross_sign(s, r) != 0) continue;
        if (sign(s.x4) == sign(r.x4) && sign(s.y2) == sign(r.y2)) return {k};
    }
    throw NotAGridDirection("vector " + v.to_string() + " is not parallel to any 36-degree grid direction");
}

QSqrt5 length_in_sides(const CycPoint& v) {
    const DirectionClass c = direction_class(v);
    const ScaledXY s = project_scaled(v);
    const ScaledXY& r = references().xy[static_cast<std::size_t>(c.k)];
    if (sign(r.x4) != 0) return QSqrt5(s.x4) / QSqrt5(r.x4);
    return QSqrt5(s.y2) / QSqrt5(r.y2);
}

CycPoint pentagon_vertex(const CycPoint& center, Orientation o, int j) {
    const CycPoint z = CycPoint::zeta_pow(j);
    return o == Orientation::Up ? center + z : center - z;
}

CycPoint center_offset(int k) { return CycPoint::zeta_pow(k) + CycPoint::zeta_pow(k + 1); }

// ---------------------------------------------------------------------------
// Separating-axis overlap test.
//
// Axes are the five apothem directions n_k = zeta^k + zeta^(k+1), shared by
// both orientations. Projections are scaled by 4: T_k(z) = 4 Re(z conj n_k),
// which is an element of Z[sqrt5] for z in Z[zeta]. With |n_k| = (1+sqrt5)/2
// the vertex extents of a pentagon centered at the origin become
//   Up:   [-(2+2 sqrt5), 3+sqrt5]
//   Down: [-(3+sqrt5),   2+2 sqrt5]

namespace {

struct AxisTable {
    // coef[k][j]: contribution of basis element zeta^j to T_k.
    std::array<std::array<ZRoot5, 4>, 5> coef;

    static ZRoot5 four_cos72(int t) {
        const int m = ((t % 5) + 5) % 5;
        if (m == 0) return {4, 0};
        if (m == 1 || m == 4) return {-1, 1};
        return {-1, -1};
    }

    AxisTable() {
        for (int k = 0; k < 5; ++k)
            for (int j = 0; j < 4; ++j)
                coef[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
                    four_cos72(j - k) + four_cos72(j - k - 1);
    }
};

const AxisTable& axes() {
    static const AxisTable table;
    return table;
}

constexpr ZRoot5 kUpLo{-2, -2}, kUpHi{3, 1}, kDownLo{-3, -1}, kDownHi{2, 2};

}  // namespace

bool interiors_overlap(const CycPoint& c1, Orientation o1, const CycPoint& c2, Orientation o2) {
    const CycPoint d = c2 - c1;
    const ZRoot5 lo1 = o1 == Orientation::Up ? kUpLo : kDownLo;
    const ZRoot5 hi1 = o1 == Orientation::Up ? kUpHi : kDownHi;
    const ZRoot5 lo2 = o2 == Orientation::Up ? kUpLo : kDownLo;
    const ZRoot5 hi2 = o2 == Orientation::Up ? kUpHi : kDownHi;
    const ZRoot5 above = hi1 - lo2;  // second interval starts at or after the first ends
    const ZRoot5 below = lo1 - hi2;  // second interval ends at or before the first starts

    const auto& table = axes();
    for (const auto& row : table.coef) {
        ZRoot5 t;
        for (std::size_t j = 0; j < 4; ++j) t += d.a[j] * row[j];
        if (sign(t - above) >= 0 || sign(below - t) >= 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Center-basis relations.

std::array<bool, 3> check_basis_relations(std::span<const CycPoint, 5> w, const std::array<int, 5>& labeling) {
    std::array<XYProjection, 5> u;
    for (std::size_t i = 0; i < 5; ++i) u[i] = project(w[static_cast<std::size_t>(labeling[i])]);
    const QSqrt5 f = phi();
    auto lin = [](const QSqrt5& s, const XYProjection& a, const QSqrt5& t, const XYProjection& b) {
        return XYProjection{s * a.x + t * b.x, s * a.y + t * b.y};
    };
    return {
        u[2] == lin(QSqrt5(-1), u[0], f, u[1]),
        u[3] == lin(-f, u[0], -f, u[1]),
        u[4] == lin(f, u[0], QSqrt5(-1), u[1]),
    };
}

BasisRelationReport verify_center_basis_relations(std::span<const CycPoint, 5> w) {
    BasisRelationReport report;
    CycPoint sum;
    for (const auto& v : w) sum += v;
    report.sum_is_zero = sum.is_zero();

    std::array<int, 5> perm = {0, 1, 2, 3, 4};
    do {
        const auto holds = check_basis_relations(w, perm);
        if (holds[0] && holds[1] && holds[2]) {
            report.labeling = perm;
            report.relation_holds = holds;
            return report;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw NoLabelingFound("no labeling of the five center offsets satisfies the basis relations");
}

BasisRelationReport verify_center_basis_relations() {
    std::array<CycPoint, 5> w;
    for (int k = 0; k < 5; ++k) w[static_cast<std::size_t>(k)] = center_offset(k);
    return verify_center_basis_relations(std::span<const CycPoint, 5>(w));
}

}  // namespace pentagrow
