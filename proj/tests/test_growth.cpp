#include <doctest.h>

#include <cmath>
#include <set>

#include "pentagrow/growth.hpp"
#include "support.hpp"

using namespace pentagrow;

namespace {

// Independent rescan: a side is free iff its ghost overlaps no pentagon.
bool free_by_brute_force(const GrowthState& s, PentagonId owner, int side) {
    const Placement g = ghost_placement(s.pentagon(owner), side);
    for (const Pentagon& p : s.pentagons())
        if (interiors_overlap(g.center, g.orientation, p.center, p.orientation)) return false;
    return true;
}

int depth(const GrowthState& s, PentagonId id) {
    int d = 0;
    while (s.pentagon(id).parent) id = *s.pentagon(id).parent, ++d;
    return d;
}

}  // namespace

TEST_CASE("seed structure") {
    const GrowthState s = GrowthState::seed_structure(3);
    REQUIRE(s.size() == 1);
    const Pentagon& p = s.pentagon(0);
    CHECK(p.center.is_zero());
    CHECK(p.orientation == Orientation::Up);
    CHECK_FALSE(p.parent);
    CHECK(s.free_edge_count() == 5);
    std::set<int> sides;
    for (const FreeEdge& e : s.free_edges()) {
        CHECK(e.owner == 0);
        CHECK(e.ghost_center == center_offset(e.side));
        CHECK(e.endpoints == p.side(e.side));
        sides.insert(e.side);
    }
    CHECK(sides.size() == 5);
}

TEST_CASE("ghost placement") {
    const Placement g = ghost_placement(CycPoint{{1, 1, 0, 0}}, Orientation::Down, 3);
    CHECK(g.center == CycPoint{{2, 2, 1, 0}});
    CHECK(g.orientation == Orientation::Up);
    for (int k = 0; k < 5; ++k)
        for (Orientation o : {Orientation::Up, Orientation::Down}) {
            const CycPoint c{{3, -1, 2, 0}};
            const Placement h = ghost_placement(c, o, k);
            CHECK(h.orientation == flip(o));
            CHECK(ghost_placement(h.center, h.orientation, k) == Placement{c, o});
            // the glued side is shared with reversed direction
            CHECK(pentagon_vertex(h.center, h.orientation, k) == pentagon_vertex(c, o, k + 1));
            CHECK(pentagon_vertex(h.center, h.orientation, k + 1) == pentagon_vertex(c, o, k));
        }
}

TEST_CASE("every first move leaves eight free edges") {
    for (int k = 0; k < 5; ++k) {
        GrowthState s = GrowthState::seed_structure(0);
        const PentagonId id = s.attach_at(0, k);
        CHECK(id == 1);
        CHECK(s.free_edge_count() == 8);
        CHECK(s.pentagon(1).orientation == Orientation::Down);
        CHECK(s.pentagon(1).center == center_offset(k));
        CHECK_FALSE(s.in_ledger(0, k));
        CHECK_FALSE(s.in_ledger(1, k));
        CHECK_THROWS_AS(s.attach_at(0, k), std::invalid_argument);
    }
}

TEST_CASE("ledger equals an independent rescan after every step") {
    for (std::uint64_t seed : {0u, 1u, 2u}) {
        GrowthState s = GrowthState::seed_structure(seed);
        while (s.size() < 500) {
            s.attach();
            if (s.size() % 25 != 0 && s.size() > 60) continue;
            std::size_t count = 0;
            for (const Pentagon& p : s.pentagons())
                for (int k = 0; k < 5; ++k) {
                    const bool want = free_by_brute_force(s, p.id, k);
                    REQUIRE(s.in_ledger(p.id, k) == want);
                    REQUIRE(s.is_free(p.id, k) == want);
                    count += want;
                }
            REQUIRE(s.free_edge_count() == count);
        }
    }
}

TEST_CASE("pentagons never overlap and stages follow ids") {
    const GrowthState s = grow(2000, 4);
    for (const Pentagon& p : s.pentagons()) {
        CHECK(p.stage == p.id);
        if (p.id == 0) continue;
        REQUIRE(p.parent);
        CHECK(*p.parent < p.id);
        CHECK(ghost_placement(s.pentagon(*p.parent), *p.parent_side).center == p.center);
        CHECK(p.orientation == (depth(s, p.id) % 2 == 0 ? Orientation::Up : Orientation::Down));
        const auto [x, y] = s.plane_center(p.id);
        s.for_each_near(x, y, 2.1, [&](PentagonId j) {
            if (j != p.id) CHECK_FALSE(interiors_overlap(p.center, p.orientation, s.pentagon(j).center,
                                                         s.pentagon(j).orientation));
        });
    }
}

TEST_CASE("growth is deterministic in the seed") {
    const GrowthState a = grow(3000, 42), b = grow(3000, 42), c = grow(3000, 43);
    CHECK(a.pentagons() == b.pentagons());
    CHECK(a.rng() == b.rng());
    CHECK_FALSE(a.pentagons() == c.pentagons());

    GrowthState d = grow(1000, 42);
    grow_to(d, 3000);
    CHECK(d.pentagons() == a.pentagons());
}

TEST_CASE("scripted attachment reproduces random attachment") {
    const GrowthState a = grow(400, 8);
    GrowthState b = GrowthState::seed_structure(8);
    for (std::size_t i = 1; i < a.size(); ++i) b.attach_at(*a.pentagon(i).parent, *a.pentagon(i).parent_side);
    CHECK(a.pentagons() == b.pentagons());
}

TEST_CASE("rng stream") {
    Rng r(5489);
    std::uint64_t v = 0;
    for (int i = 0; i < 10'000; ++i) v = r.next();
    CHECK(v == 9981545732273789042ULL);

    Rng u(1);
    constexpr int kBins = 7, kDraws = 140'000;
    std::array<int, kBins> hist{};
    for (int i = 0; i < kDraws; ++i) {
        const auto x = u.below(kBins);
        REQUIRE(x < kBins);
        ++hist[x];
    }
    const double mean = double(kDraws) / kBins, sd = std::sqrt(kDraws * (1.0 / kBins) * (1 - 1.0 / kBins));
    for (int h : hist) CHECK(std::abs(h - mean) < 5 * sd);
    CHECK(Rng(3).below(1) == 0);
}

TEST_CASE("spatial hash returns a superset of near centers") {
    const GrowthState s = grow(800, 5);
    const auto [x0, y0] = s.plane_center(400);
    std::set<PentagonId> near;
    s.for_each_near(x0, y0, 3.0, [&](PentagonId id) { near.insert(id); });
    for (const Pentagon& p : s.pentagons()) {
        const auto [x, y] = s.plane_center(p.id);
        if (std::hypot(x - x0, y - y0) < 3.0 - 1e-9) CHECK(near.count(p.id) == 1);
    }
}

TEST_CASE("diamond script attaches cleanly") {
    const GrowthState s = testing::scripted(testing::kDiamondScript);
    CHECK(s.size() == 12);
}
