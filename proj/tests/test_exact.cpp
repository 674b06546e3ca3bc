#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pentagrow/exact.hpp"
#include "pentagrow/oracle.hpp"

using namespace pentagrow;

namespace {

CycPoint random_point(std::mt19937_64& gen, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return CycPoint{{d(gen), d(gen), d(gen), d(gen)}};
}

double sin36() { return std::sin(std::numbers::pi / 5); }

}  // namespace

TEST_CASE("sign of p + q sqrt5 agrees with the 200-bit oracle") {
    std::mt19937_64 gen(20240611);
    std::uniform_int_distribution<std::int64_t> d(-1'000'000'000, 1'000'000'000);
    for (int i = 0; i < 100'000; ++i) {
        const std::int64_t p = d(gen), q = d(gen);
        REQUIRE(sign(ZRoot5{p, q}) == oracle::sign_hp(p, q, 1));
    }
}

TEST_CASE("sign near zero: L_n - F_n sqrt5 = 2 psi^n") {
    std::int64_t f0 = 0, f1 = 1, l0 = 2, l1 = 1;
    for (int n = 1; n <= 88; ++n) {
        // now f1 = F_n, l1 = L_n
        const int expect = n % 2 == 0 ? 1 : -1;
        CHECK(sign(ZRoot5{l1, -f1}) == expect);
        CHECK(sign(ZRoot5{-l1, f1}) == -expect);
        CHECK(oracle::sign_hp(l1, -f1, 1) == expect);
        const std::int64_t f2 = f0 + f1, l2 = l0 + l1;
        f0 = f1, f1 = f2, l0 = l1, l1 = l2;
    }
}

TEST_CASE("QSqrt5 arithmetic and constants") {
    const QSqrt5 p = phi();
    CHECK(p == QSqrt5(-1, 1, 2));
    CHECK(p * p + p == QSqrt5(1));
    CHECK(std::abs(p.to_double() - 2 * std::cos(2 * std::numbers::pi / 5)) < 1e-15);
    CHECK(side_length_squared() == QSqrt5(5, -1, 2));
    CHECK(std::abs(side_length_squared().to_double() - 4 * sin36() * sin36()) < 1e-14);
    CHECK(QSqrt5(4, 2, 6) == QSqrt5(2, 1, 3));
    CHECK(QSqrt5(1, 0, -2) == QSqrt5(-1, 0, 2));
    CHECK(QSqrt5(6, 0, 3).is_integer());
    CHECK(compare(QSqrt5(0, 1), QSqrt5(9, 0, 4)) < 0);
    CHECK(compare(QSqrt5(0, 1), QSqrt5(11, 0, 5)) > 0);
    CHECK((QSqrt5(3, 1) / QSqrt5(3, 1)) == QSqrt5(1));
    CHECK_THROWS_AS(QSqrt5(1) / QSqrt5(0), std::domain_error);
    CHECK_THROWS_AS(QSqrt5(1, 0, 0), std::domain_error);
}

TEST_CASE("checked arithmetic throws on overflow") {
    const std::int64_t big = INT64_MAX;
    CHECK_THROWS_AS(checked::add(big, 1), OverflowError);
    CHECK_THROWS_AS(checked::sub(INT64_MIN, 1), OverflowError);
    CHECK_THROWS_AS(checked::mul(big, 2), OverflowError);
    CHECK_THROWS_AS(checked::neg(INT64_MIN), OverflowError);
    const CycPoint huge{{big, 0, 0, 0}};
    CHECK_THROWS_AS(huge + huge, OverflowError);
    CHECK_THROWS_AS((huge * CycPoint{{3, 0, 0, 0}}), OverflowError);
}

TEST_CASE("zeta powers reduce with the cyclotomic relation") {
    CHECK(CycPoint::zeta_pow(0) == CycPoint{{1, 0, 0, 0}});
    CHECK(CycPoint::zeta_pow(4) == CycPoint{{-1, -1, -1, -1}});
    CHECK(CycPoint::zeta_pow(5) == CycPoint::zeta_pow(0));
    CHECK(CycPoint::zeta_pow(-1) == CycPoint::zeta_pow(4));
    CycPoint sum;
    for (int k = 0; k < 5; ++k) sum += CycPoint::zeta_pow(k);
    CHECK(sum.is_zero());
    for (int j = -7; j < 7; ++j)
        for (int k = -7; k < 7; ++k) CHECK(CycPoint::zeta_pow(j) * CycPoint::zeta_pow(k) == CycPoint::zeta_pow(j + k));
}

TEST_CASE("projection matches cos and sin and is additive") {
    for (int k = 0; k < 5; ++k) {
        const XYProjection xy = project(CycPoint::zeta_pow(k));
        const double ang = 2 * std::numbers::pi * k / 5;
        CHECK(std::abs(xy.x.to_double() - std::cos(ang)) < 1e-14);
        CHECK(std::abs(xy.y.to_double() - std::sin(ang) / sin36()) < 1e-14);
        const auto [x, y] = to_plane(CycPoint::zeta_pow(k));
        CHECK(std::abs(x - std::cos(ang)) < 1e-14);
        CHECK(std::abs(y - std::sin(ang)) < 1e-14);
    }
    std::mt19937_64 gen(7);
    for (int i = 0; i < 2000; ++i) {
        const CycPoint a = random_point(gen, -1000, 1000), b = random_point(gen, -1000, 1000);
        const XYProjection pa = project(a), pb = project(b), pab = project(a + b);
        CHECK(pab.x == pa.x + pb.x);
        CHECK(pab.y == pa.y + pb.y);
        const ScaledXY s = project_scaled(a);
        CHECK(QSqrt5(s.x4, 4) == pa.x);
        CHECK(QSqrt5(s.y2, 2) == pa.y);
    }
}

TEST_CASE("orient agrees with the floating cross product away from degeneracy") {
    std::mt19937_64 gen(11);
    int decided = 0;
    for (int i = 0; i < 5000; ++i) {
        const CycPoint a = random_point(gen, -20, 20), b = random_point(gen, -20, 20), c = random_point(gen, -20, 20);
        const auto [ax, ay] = to_plane(a);
        const auto [bx, by] = to_plane(b);
        const auto [cx, cy] = to_plane(c);
        const double cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
        if (std::abs(cross) < 1e-6) continue;
        ++decided;
        CHECK(orient(a, b, c) == (cross > 0 ? 1 : -1));
    }
    CHECK(decided > 4000);
    CHECK(orient(CycPoint{}, CycPoint::zeta_pow(0), CycPoint::zeta_pow(0) + CycPoint::zeta_pow(0)) == 0);
}

TEST_CASE("direction classes") {
    CHECK(reference_direction(0) == CycPoint::zeta_pow(1) - CycPoint::zeta_pow(0));
    for (int k = 0; k < 10; ++k) {
        CHECK(direction_class(reference_direction(k)).k == k);
        CHECK(direction_class(reference_direction(k)).opposite().k == (k + 5) % 10);
        CHECK(reference_direction((k + 5) % 10) == -reference_direction(k));
        CHECK(length_in_sides(reference_direction(k)) == QSqrt5(1));
        const auto [x, y] = to_plane(reference_direction(k));
        const double want = std::numbers::pi * (0.7 + 0.2 * k);
        CHECK(std::abs(std::remainder(std::atan2(y, x) - want, 2 * std::numbers::pi)) < 1e-12);
    }
    // every pentagon side lies on a grid direction
    for (int j = 0; j < 5; ++j)
        for (Orientation o : {Orientation::Up, Orientation::Down}) {
            const CycPoint s = pentagon_vertex(CycPoint{}, o, j + 1) - pentagon_vertex(CycPoint{}, o, j);
            CHECK(length_in_sides(s) == QSqrt5(1));
        }
    // a diagonal is phi^-1 = (1 + sqrt5) / 2 sides long
    const CycPoint diag = CycPoint::zeta_pow(2) - CycPoint::zeta_pow(0);
    CHECK(length_in_sides(diag) == QSqrt5(1, 1, 2));
    CHECK(length_in_sides(diag + diag) == QSqrt5(1, 1));
    CHECK_THROWS_AS(direction_class(CycPoint::zeta_pow(0)), NotAGridDirection);
    CHECK_THROWS_AS(direction_class(CycPoint{}), NotAGridDirection);
    CHECK_THROWS_AS((length_in_sides(CycPoint{{1, 1, 0, 0}} + CycPoint{{1, 0, 0, 0}})), NotAGridDirection);
}

TEST_CASE("center offsets and the basis relations") {
    for (int k = 0; k < 5; ++k) {
        CHECK(center_offset(k) == CycPoint::zeta_pow(k) + CycPoint::zeta_pow(k + 1));
        const auto [x, y] = to_plane(center_offset(k));
        CHECK(std::abs(std::hypot(x, y) - 2 * std::cos(std::numbers::pi / 5)) < 1e-14);
    }
    const BasisRelationReport rep = verify_center_basis_relations();
    CHECK(rep.passed());
    std::array<CycPoint, 5> w;
    for (int k = 0; k < 5; ++k) w[k] = center_offset(k);
    CHECK(check_basis_relations(w, rep.labeling) == std::array<bool, 3>{true, true, true});

    std::array<CycPoint, 5> bad = w;
    bad[2] = bad[2] + CycPoint{{1, 0, 0, 0}};
    CHECK_THROWS_AS(verify_center_basis_relations(bad), NoLabelingFound);
    std::swap(bad, w);
    std::swap(bad[0], bad[1]);
    CHECK_FALSE(check_basis_relations(bad, rep.labeling) == std::array<bool, 3>{true, true, true});
}

TEST_CASE("interior overlap agrees with the clipping oracle") {
    std::mt19937_64 gen(99);
    int overlaps = 0, disjoint = 0;
    for (int i = 0; i < 10'000; ++i) {
        const CycPoint c1 = random_point(gen, -5, 5), c2 = random_point(gen, -5, 5);
        const Orientation o1 = gen() & 1 ? Orientation::Up : Orientation::Down;
        const Orientation o2 = gen() & 1 ? Orientation::Up : Orientation::Down;
        const auto v = oracle::overlap_verdict(c1, o1, c2, o2);
        REQUIRE(v != oracle::Verdict::Marginal);
        const bool exact = interiors_overlap(c1, o1, c2, o2);
        REQUIRE(exact == (v == oracle::Verdict::Overlap));
        (exact ? overlaps : disjoint)++;
    }
    CHECK(overlaps > 100);
    CHECK(disjoint > 100);
}

TEST_CASE("overlap edge cases") {
    const CycPoint o{};
    for (int k = 0; k < 5; ++k) {
        // glued neighbours share a side and do not overlap
        CHECK_FALSE(interiors_overlap(o, Orientation::Up, center_offset(k), Orientation::Down));
        CHECK_FALSE(interiors_overlap(o, Orientation::Down, -center_offset(k), Orientation::Up));
        // vertex-to-vertex contact
        CHECK_FALSE(interiors_overlap(o, Orientation::Up, CycPoint::zeta_pow(k) * CycPoint{{2, 0, 0, 0}},
                                      Orientation::Up));
        CHECK(interiors_overlap(o, Orientation::Up, CycPoint::zeta_pow(k), Orientation::Up));
    }
    CHECK(interiors_overlap(o, Orientation::Up, o, Orientation::Up));
    CHECK(interiors_overlap(o, Orientation::Up, o, Orientation::Down));
    CHECK_FALSE(interiors_overlap(o, Orientation::Up, CycPoint{{100, 0, 0, 0}}, Orientation::Down));
    CHECK(oracle::overlap_area(o, Orientation::Up, o, Orientation::Up) ==
          doctest::Approx(2.5 * std::sin(2 * std::numbers::pi / 5)).epsilon(1e-12));
}
