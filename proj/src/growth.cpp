#include "pentagrow/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pentagrow {

namespace {

// Two unit-circumradius pentagons can only overlap when their centers are
// closer than 2.
constexpr double kBlockRadius = 2.0;
// Distance from a pentagon center to a ghost center on one of its sides: |1 + zeta|.
constexpr double kGhostOffset = 1.6180339887498949;

}  // namespace

Placement ghost_placement(const CycPoint& center, Orientation o, int side) {
    const CycPoint w = center_offset(side);
    if (o == Orientation::Up) return {center + w, Orientation::Down};
    return {center - w, Orientation::Up};
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below requires n > 0");
    // Accept r only from the largest multiple of n that fits in 2^64.
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = engine_();
        if (r >= threshold) return r % n;
    }
}

std::int64_t SpatialHash::cell(double v) { return static_cast<std::int64_t>(std::floor(v / kCellSize)); }

std::uint64_t SpatialHash::key(std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
}

void SpatialHash::insert(PentagonId id, double x, double y) { cells_[key(cell(x), cell(y))].push_back(id); }

GrowthState GrowthState::seed_structure(std::uint64_t seed) {
    GrowthState s;
    s.seed_ = seed;
    s.rng_ = Rng(seed);
    s.add_pentagon({CycPoint{}, Orientation::Up}, std::nullopt, std::nullopt);
    for (int k = 0; k < 5; ++k) s.push_ledger(0, k, ghost_placement(s.pentagons_[0], k));
    return s;
}

PentagonId GrowthState::add_pentagon(const Placement& place, std::optional<PentagonId> parent,
                                     std::optional<std::uint8_t> side) {
    const auto id = static_cast<PentagonId>(pentagons_.size());
    pentagons_.push_back({id, place.center, place.orientation, id, parent, side});
    const auto xy = to_plane(place.center);
    plane_.push_back(xy);
    slot_.insert(slot_.end(), 5, -1);
    grid_.insert(id, xy.first, xy.second);
    return id;
}

void GrowthState::push_ledger(PentagonId owner, int side, const Placement& ghost) {
    slot_[5 * owner + static_cast<std::size_t>(side)] = static_cast<std::int32_t>(ledger_.size());
    ledger_.push_back({owner, static_cast<std::uint8_t>(side), pentagons_[owner].side(side), ghost.center});
}

void GrowthState::remove_ledger(std::size_t index) {
    const FreeEdge& gone = ledger_[index];
    slot_[5 * gone.owner + gone.side] = -1;
    if (index + 1 != ledger_.size()) {
        ledger_[index] = ledger_.back();
        slot_[5 * ledger_[index].owner + ledger_[index].side] = static_cast<std::int32_t>(index);
    }
    ledger_.pop_back();
}

bool GrowthState::in_ledger(PentagonId owner, int side) const {
    return slot_.at(5 * owner + static_cast<std::size_t>(side)) >= 0;
}

bool GrowthState::is_free(PentagonId owner, int side) const {
    const Placement ghost = ghost_placement(pentagons_.at(owner), side);
    const auto [gx, gy] = to_plane(ghost.center);
    bool blocked = false;
    for_each_near(gx, gy, kBlockRadius, [&](PentagonId id) {
        if (blocked) return;
        const Pentagon& p = pentagons_[id];
        if (interiors_overlap(ghost.center, ghost.orientation, p.center, p.orientation)) blocked = true;
    });
    return !blocked;
}

std::size_t GrowthState::pick_free_edge() {
    if (ledger_.empty()) throw std::logic_error("free-edge ledger is empty");
    return static_cast<std::size_t>(rng_.below(ledger_.size()));
}

PentagonId GrowthState::attach() { return attach_ledger_entry(pick_free_edge()); }

PentagonId GrowthState::attach_at(PentagonId owner, int side) {
    if (owner >= pentagons_.size() || side < 0 || side > 4)
        throw std::invalid_argument("attach_at: no such pentagon side");
    const std::int32_t index = slot_[5 * owner + static_cast<std::size_t>(side)];
    if (index < 0)
        throw std::invalid_argument("attach_at: side " + std::to_string(side) + " of pentagon " +
                                    std::to_string(owner) + " is not free");
    return attach_ledger_entry(static_cast<std::size_t>(index));
}

PentagonId GrowthState::attach_ledger_entry(std::size_t index) {
    if (index >= ledger_.size()) throw std::out_of_range("ledger index out of range");
    const FreeEdge edge = ledger_[index];
    remove_ledger(index);

    const Placement place = ghost_placement(pentagons_[edge.owner], edge.side);
    const PentagonId id = add_pentagon(place, edge.owner, edge.side);
    const auto [nx, ny] = plane_[id];

    // Ledger entries whose ghost lies within the blocking radius of the new
    // center are the only ones the new pentagon can invalidate.
    std::vector<std::size_t> blocked;
    for_each_near(nx, ny, kBlockRadius + kGhostOffset, [&](PentagonId owner) {
        for (std::size_t k = 0; k < 5; ++k) {
            const std::int32_t slot = slot_[5 * owner + k];
            if (slot < 0) continue;
            const FreeEdge& e = ledger_[static_cast<std::size_t>(slot)];
            const auto [gx, gy] = to_plane(e.ghost_center);
            const double dx = gx - nx, dy = gy - ny;
            if (dx * dx + dy * dy >= kBlockRadius * kBlockRadius + 1e-9) continue;
            const Orientation ghost_o = flip(pentagons_[owner].orientation);
            if (interiors_overlap(e.ghost_center, ghost_o, place.center, place.orientation))
                blocked.push_back(static_cast<std::size_t>(slot));
        }
    });
    std::sort(blocked.begin(), blocked.end(), std::greater<>());
    for (std::size_t slot : blocked) remove_ledger(slot);

    for (int k = 0; k < 5; ++k) {
        if (k == edge.side) continue;
        if (is_free(id, k)) push_ledger(id, k, ghost_placement(pentagons_[id], k));
    }
    return id;
}

GrowthState grow(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("grow requires n >= 1");
    GrowthState state = GrowthState::seed_structure(seed);
    grow_to(state, n);
    return state;
}

void grow_to(GrowthState& state, std::size_t n) {
    while (state.size() < n) state.attach();
}

}  // namespace pentagrow
