#pragma once

// Planar subdivision induced by the pentagon edges. A side that has another
// pentagon's vertex in its interior is split there, so the graph is a proper
// plane graph whose bounded faces are pentagon interiors and holes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pentagrow/exact.hpp"
#include "pentagrow/growth.hpp"

namespace pentagrow {

using VertexId = std::uint32_t;
using HalfEdgeId = std::uint32_t;

/// Half-edges come in pairs: edge e owns 2e (first -> second endpoint) and
/// 2e + 1 (reverse).
class SubdivisionGraph {
public:
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t half_edge_count() const { return 2 * edges_.size(); }

    const std::vector<CycPoint>& vertices() const { return vertices_; }
    const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }

    static HalfEdgeId twin(HalfEdgeId h) { return h ^ 1U; }
    VertexId origin(HalfEdgeId h) const { return (h & 1U) ? edges_[h >> 1].second : edges_[h >> 1].first; }
    VertexId target(HalfEdgeId h) const { return origin(twin(h)); }
    DirectionClass direction(HalfEdgeId h) const {
        const DirectionClass d = edge_dir_[h >> 1];
        return (h & 1U) ? d.opposite() : d;
    }

    /// Outgoing half-edges of v sorted counterclockwise by direction class.
    std::span<const HalfEdgeId> outgoing(VertexId v) const {
        return {rot_.data() + rot_offset_[v], rot_.data() + rot_offset_[v + 1]};
    }
    std::optional<HalfEdgeId> outgoing(VertexId v, DirectionClass d) const;

    /// The half-edge following h on the face to its left.
    HalfEdgeId next_in_face(HalfEdgeId h) const;

    std::optional<VertexId> find_vertex(const CycPoint& p) const;

    /// Length of edge e in side-length units.
    QSqrt5 edge_length(std::size_t e) const;

private:
    friend SubdivisionGraph build_subdivision(std::span<const Pentagon> pentagons);

    std::vector<CycPoint> vertices_;
    std::unordered_map<CycPoint, VertexId, CycPointHash> index_;
    std::vector<std::pair<VertexId, VertexId>> edges_;
    std::vector<DirectionClass> edge_dir_;
    std::vector<std::uint32_t> rot_offset_;
    std::vector<HalfEdgeId> rot_;
    std::vector<std::uint32_t> rot_pos_;  // index of each half-edge within outgoing(origin)
};

/// Throws NotAGridDirection if an edge is off the 36-degree grid.
SubdivisionGraph build_subdivision(std::span<const Pentagon> pentagons);

struct VertexEdgeCount {
    std::size_t V = 0;
    std::size_t E = 0;
};

inline VertexEdgeCount count_V_E(const SubdivisionGraph& g) { return {g.vertex_count(), g.edge_count()}; }

enum class FaceKind : std::uint8_t { PentagonInterior, Hole, Outer };

struct Face {
    std::vector<HalfEdgeId> boundary;
    FaceKind kind = FaceKind::Hole;
    std::optional<PentagonId> pentagon;
    /// Signed area divided by sin(36 deg); negative only for the outer face.
    QSqrt5 area;
};

struct FaceSet {
    std::vector<Face> faces;
    std::vector<std::uint32_t> face_of;  // per half-edge
    std::size_t outer = 0;

    std::vector<std::size_t> holes() const;
    std::size_t hole_count() const;
};

/// Traces every face cycle and classifies it. Throws ClassificationMismatch
/// when pentagon faces do not biject with pentagons or the outer face is not unique.
FaceSet extract_faces(const SubdivisionGraph& g, std::span<const Pentagon> pentagons);

/// H = 1 - V + E - n.
std::int64_t euler_holes(std::int64_t V, std::int64_t E, std::int64_t n);

/// Area of one unit-circumradius pentagon divided by sin(36 deg): 5(1+sqrt5)/4.
QSqrt5 pentagon_area_factor();

struct Perimeter {
    /// Length of the outer face boundary, in side-length units.
    QSqrt5 outer;
    /// Length of every edge that borders a hole or the outer face, counted once.
    QSqrt5 total_boundary;
};

Perimeter perimeter(const SubdivisionGraph& g, const FaceSet& faces);

struct StructureMetrics {
    std::size_t n = 0;
    std::size_t V = 0;
    std::size_t E = 0;
    std::int64_t H_euler = 0;
    std::size_t H_faces = 0;
    Perimeter perimeter;
};

/// Builds the subdivision and faces and collects the headline metrics.
StructureMetrics measure(std::span<const Pentagon> pentagons);

}  // namespace pentagrow
