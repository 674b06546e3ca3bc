#pragma once

// The random growth process: start from one pentagon at the origin and
// repeatedly glue a new pentagon to a uniformly chosen free edge.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pentagrow/exact.hpp"

namespace pentagrow {

using PentagonId = std::uint32_t;

struct Pentagon {
    PentagonId id = 0;
    CycPoint center;
    Orientation orientation = Orientation::Up;
    std::uint32_t stage = 0;
    std::optional<PentagonId> parent;
    std::optional<std::uint8_t> parent_side;

    CycPoint vertex(int j) const { return pentagon_vertex(center, orientation, j); }
    /// Side k runs from vertex k to vertex k+1 (counterclockwise for both orientations).
    std::pair<CycPoint, CycPoint> side(int k) const { return {vertex(k), vertex(k + 1)}; }

    friend bool operator==(const Pentagon&, const Pentagon&) = default;
};

struct Placement {
    CycPoint center;
    Orientation orientation = Orientation::Up;
    friend bool operator==(const Placement&, const Placement&) = default;
};

/// Reflection of a pentagon across its side `side`. The result shares that
/// side's endpoints and uses the same side index for it.
Placement ghost_placement(const CycPoint& center, Orientation o, int side);
inline Placement ghost_placement(const Pentagon& p, int side) { return ghost_placement(p.center, p.orientation, side); }

struct FreeEdge {
    PentagonId owner = 0;
    std::uint8_t side = 0;
    std::pair<CycPoint, CycPoint> endpoints;
    CycPoint ghost_center;
};

/// mt19937_64 with rejection-sampled bounded integers (no modulo bias).
/// Both pieces are fully specified, so streams are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). Requires n > 0.
    std::uint64_t below(std::uint64_t n);

    friend bool operator==(const Rng&, const Rng&) = default;

private:
    std::mt19937_64 engine_;
};

/// Bucket grid over floating center positions. Buckets only over-approximate
/// neighborhoods; every decision is made by the exact predicates.
class SpatialHash {
public:
    static constexpr double kCellSize = 2.0;

    void insert(PentagonId id, double x, double y);

    /// Calls fn(id) for every id whose cell intersects the square of
    /// half-width `radius` around (x, y).
    template <class Fn>
    void for_each_near(double x, double y, double radius, Fn&& fn) const {
        const std::int64_t x0 = cell(x - radius), x1 = cell(x + radius);
        const std::int64_t y0 = cell(y - radius), y1 = cell(y + radius);
        for (std::int64_t cx = x0; cx <= x1; ++cx)
            for (std::int64_t cy = y0; cy <= y1; ++cy) {
                auto it = cells_.find(key(cx, cy));
                if (it == cells_.end()) continue;
                for (PentagonId id : it->second) fn(id);
            }
    }

    std::size_t cell_count() const { return cells_.size(); }

private:
    static std::int64_t cell(double v);
    static std::uint64_t key(std::int64_t cx, std::int64_t cy);

    std::unordered_map<std::uint64_t, std::vector<PentagonId>> cells_;
};

/// The evolving simulation: pentagons, the free-edge ledger, the spatial hash
/// and the random stream. Single owner, mutated sequentially.
///
/// Ledger policy (part of the reproducibility contract): entries are appended
/// in creation order; removals swap the removed entry with the last one. An
/// attach step (1) draws an index with Rng::below, (2) removes that entry,
/// (3) evicts ledger entries blocked by the new pentagon in decreasing index
/// order, then (4) appends the new pentagon's free non-gluing sides in
/// increasing side order.
class GrowthState {
public:
    static GrowthState seed_structure(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }
    std::size_t size() const { return pentagons_.size(); }
    const std::vector<Pentagon>& pentagons() const { return pentagons_; }
    const Pentagon& pentagon(PentagonId id) const { return pentagons_.at(id); }
    const std::vector<FreeEdge>& free_edges() const { return ledger_; }
    std::size_t free_edge_count() const { return ledger_.size(); }
    const Rng& rng() const { return rng_; }
    Rng& rng() { return rng_; }
    const SpatialHash& grid() const { return grid_; }
    std::pair<double, double> plane_center(PentagonId id) const { return plane_.at(id); }

    /// True iff the pentagon glued on (owner, side) would not overlap any
    /// existing pentagon's interior.
    bool is_free(PentagonId owner, int side) const;
    bool in_ledger(PentagonId owner, int side) const;

    /// Draws the ledger index of the next attachment (one RNG draw).
    std::size_t pick_free_edge();

    /// One random growth step. Returns the new pentagon's id.
    PentagonId attach();
    /// Glue on the ledger entry at `index`.
    PentagonId attach_ledger_entry(std::size_t index);
    /// Scripted growth: glue on (owner, side). Throws std::invalid_argument
    /// if that edge is not currently free.
    PentagonId attach_at(PentagonId owner, int side);

    /// Ids of pentagons whose centers are within `radius` of (x, y), as a
    /// conservative superset.
    template <class Fn>
    void for_each_near(double x, double y, double radius, Fn&& fn) const {
        const double r2 = radius * radius + 1e-9;
        grid_.for_each_near(x, y, radius, [&](PentagonId id) {
            const auto [px, py] = plane_[id];
            const double dx = px - x, dy = py - y;
            if (dx * dx + dy * dy < r2) fn(id);
        });
    }

private:
    GrowthState() = default;

    PentagonId add_pentagon(const Placement& place, std::optional<PentagonId> parent, std::optional<std::uint8_t> side);
    void push_ledger(PentagonId owner, int side, const Placement& ghost);
    void remove_ledger(std::size_t index);

    std::uint64_t seed_ = 0;
    std::vector<Pentagon> pentagons_;
    std::vector<std::pair<double, double>> plane_;
    std::vector<FreeEdge> ledger_;
    // slot_[5*id + side] is the ledger index of that edge, or -1.
    std::vector<std::int32_t> slot_;
    SpatialHash grid_;
    Rng rng_;
};

inline GrowthState seed_structure(std::uint64_t seed) { return GrowthState::seed_structure(seed); }

/// seed_structure(seed) followed by n - 1 random attachments. Requires n >= 1.
GrowthState grow(std::size_t n, std::uint64_t seed);

/// Continues `state` with random attachments until it holds n pentagons.
void grow_to(GrowthState& state, std::size_t n);

}  // namespace pentagrow
