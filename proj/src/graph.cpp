#include "pentagrow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

namespace pentagrow {

namespace {

// Grid over floating vertex positions used only to find candidate vertices
// near a side; membership is decided exactly.
class VertexGrid {
public:
    explicit VertexGrid(double cell) : cell_(cell) {}

    void insert(VertexId v, double x, double y) { cells_[key(idx(x), idx(y))].push_back(v); }

    template <class Fn>
    void for_each_in_box(double x0, double y0, double x1, double y1, Fn&& fn) const {
        for (std::int64_t cx = idx(x0); cx <= idx(x1); ++cx)
            for (std::int64_t cy = idx(y0); cy <= idx(y1); ++cy) {
                auto it = cells_.find(key(cx, cy));
                if (it == cells_.end()) continue;
                for (VertexId v : it->second) fn(v);
            }
    }

private:
    std::int64_t idx(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
    static std::uint64_t key(std::int64_t cx, std::int64_t cy) {
        return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
    }

    double cell_;
    std::unordered_map<std::uint64_t, std::vector<VertexId>> cells_;
};

// Position of p along the line through a with direction dir, compared
// exactly. Uses the X coordinate unless the line is vertical.
struct LineOrder {
    bool use_x;
    int dir_sign;

    LineOrder(const ScaledXY& dir) {
        use_x = sign(dir.x4) != 0;
        dir_sign = use_x ? sign(dir.x4) : sign(dir.y2);
    }

    // sign of the parameter of vector v along the line
    int param_sign(const CycPoint& v) const {
        const ScaledXY s = project_scaled(v);
        return (use_x ? sign(s.x4) : sign(s.y2)) * dir_sign;
    }
};

struct PairHash {
    std::size_t operator()(std::uint64_t k) const noexcept {
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return static_cast<std::size_t>(k);
    }
};

}  // namespace

std::optional<VertexId> SubdivisionGraph::find_vertex(const CycPoint& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<HalfEdgeId> SubdivisionGraph::outgoing(VertexId v, DirectionClass d) const {
    for (HalfEdgeId h : outgoing(v))
        if (direction(h) == d) return h;
    return std::nullopt;
}

HalfEdgeId SubdivisionGraph::next_in_face(HalfEdgeId h) const {
    const HalfEdgeId t = twin(h);
    const VertexId v = origin(t);
    const std::uint32_t deg = rot_offset_[v + 1] - rot_offset_[v];
    const std::uint32_t pos = rot_pos_[t];
    // clockwise neighbor of the twin around v
    return rot_[rot_offset_[v] + (pos + deg - 1) % deg];
}

QSqrt5 SubdivisionGraph::edge_length(std::size_t e) const {
    return length_in_sides(vertices_[edges_[e].second] - vertices_[edges_[e].first]);
}

SubdivisionGraph build_subdivision(std::span<const Pentagon> pentagons) {
    SubdivisionGraph g;
    std::vector<VertexId> corner(5 * pentagons.size());
    std::vector<std::pair<double, double>> plane;
    g.index_.reserve(4 * pentagons.size());

    for (std::size_t i = 0; i < pentagons.size(); ++i) {
        for (int j = 0; j < 5; ++j) {
            const CycPoint p = pentagons[i].vertex(j);
            auto [it, inserted] = g.index_.try_emplace(p, static_cast<VertexId>(g.vertices_.size()));
            if (inserted) {
                g.vertices_.push_back(p);
                plane.push_back(to_plane(p));
            }
            corner[5 * i + static_cast<std::size_t>(j)] = it->second;
        }
    }

    VertexGrid grid(1.0);
    for (VertexId v = 0; v < g.vertices_.size(); ++v) grid.insert(v, plane[v].first, plane[v].second);

    std::unordered_map<std::uint64_t, std::uint32_t, PairHash> edge_index;
    edge_index.reserve(6 * pentagons.size());
    auto add_segment = [&](VertexId a, VertexId b) {
        const std::uint64_t k = (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
        if (edge_index.try_emplace(k, static_cast<std::uint32_t>(g.edges_.size())).second) {
            g.edges_.emplace_back(a, b);
            g.edge_dir_.push_back(direction_class(g.vertices_[b] - g.vertices_[a]));
        }
    };

    constexpr double kPad = 1e-6;
    std::vector<VertexId> inner;
    for (std::size_t i = 0; i < pentagons.size(); ++i) {
        for (std::size_t k = 0; k < 5; ++k) {
            const VertexId a = corner[5 * i + k];
            const VertexId b = corner[5 * i + (k + 1) % 5];
            const CycPoint& pa = g.vertices_[a];
            const CycPoint& pb = g.vertices_[b];
            const LineOrder order(project_scaled(pb - pa));

            inner.clear();
            const auto [ax, ay] = plane[a];
            const auto [bx, by] = plane[b];
            grid.for_each_in_box(std::min(ax, bx) - kPad, std::min(ay, by) - kPad, std::max(ax, bx) + kPad,
                                 std::max(ay, by) + kPad, [&](VertexId v) {
                                     if (v == a || v == b) return;
                                     const CycPoint& pv = g.vertices_[v];
                                     if (orient(pa, pb, pv) != 0) return;
                                     if (order.param_sign(pv - pa) > 0 && order.param_sign(pb - pv) > 0)
                                         inner.push_back(v);
                                 });
            std::sort(inner.begin(), inner.end(), [&](VertexId u, VertexId v) {
                return order.param_sign(g.vertices_[v] - g.vertices_[u]) > 0;
            });

            VertexId prev = a;
            for (VertexId v : inner) {
                add_segment(prev, v);
                prev = v;
            }
            add_segment(prev, b);
        }
    }

    // Rotation system.
    const std::size_t nv = g.vertices_.size();
    g.rot_offset_.assign(nv + 1, 0);
    for (const auto& [a, b] : g.edges_) {
        ++g.rot_offset_[a + 1];
        ++g.rot_offset_[b + 1];
    }
    for (std::size_t v = 0; v < nv; ++v) g.rot_offset_[v + 1] += g.rot_offset_[v];
    g.rot_.resize(2 * g.edges_.size());
    std::vector<std::uint32_t> fill(g.rot_offset_.begin(), g.rot_offset_.end() - 1);
    for (HalfEdgeId h = 0; h < g.rot_.size(); ++h) g.rot_[fill[g.origin(h)]++] = h;
    g.rot_pos_.resize(g.rot_.size());
    for (std::size_t v = 0; v < nv; ++v) {
        auto first = g.rot_.begin() + g.rot_offset_[v];
        auto last = g.rot_.begin() + g.rot_offset_[v + 1];
        std::sort(first, last, [&](HalfEdgeId x, HalfEdgeId y) { return g.direction(x).k < g.direction(y).k; });
        for (auto it = first; it != last; ++it)
            g.rot_pos_[*it] = static_cast<std::uint32_t>(it - first);
    }
    return g;
}

std::vector<std::size_t> FaceSet::holes() const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (faces[f].kind == FaceKind::Hole) out.push_back(f);
    return out;
}

std::size_t FaceSet::hole_count() const {
    return static_cast<std::size_t>(
        std::count_if(faces.begin(), faces.end(), [](const Face& f) { return f.kind == FaceKind::Hole; }));
}

QSqrt5 pentagon_area_factor() { return QSqrt5(5, 5, 4); }

FaceSet extract_faces(const SubdivisionGraph& g, std::span<const Pentagon> pentagons) {
    constexpr std::uint32_t kUnset = UINT32_MAX;
    FaceSet fs;
    fs.face_of.assign(g.half_edge_count(), kUnset);

    for (HalfEdgeId start = 0; start < g.half_edge_count(); ++start) {
        if (fs.face_of[start] != kUnset) continue;
        const auto fid = static_cast<std::uint32_t>(fs.faces.size());
        Face face;
        // Shoelace relative to the first vertex keeps the numbers small.
        const CycPoint base = g.vertices()[g.origin(start)];
        ZRoot5 twice_area16;  // 16 * (area / sin 36)
        HalfEdgeId h = start;
        do {
            fs.face_of[h] = fid;
            face.boundary.push_back(h);
            const ScaledXY p = project_scaled(g.vertices()[g.origin(h)] - base);
            const ScaledXY q = project_scaled(g.vertices()[g.target(h)] - base);
            twice_area16 += p.x4 * q.y2 - q.x4 * p.y2;
            h = g.next_in_face(h);
        } while (h != start);
        face.area = QSqrt5(twice_area16, 16);
        fs.faces.push_back(std::move(face));
    }

    std::size_t outer_count = 0;
    for (std::size_t f = 0; f < fs.faces.size(); ++f) {
        const int s = sign(fs.faces[f].area);
        if (s < 0) {
            fs.faces[f].kind = FaceKind::Outer;
            fs.outer = f;
            ++outer_count;
        } else if (s == 0) {
            throw ClassificationMismatch("degenerate face with zero area");
        }
    }
    if (outer_count != 1)
        throw ClassificationMismatch("expected exactly one outer face, found " + std::to_string(outer_count));

    for (const Pentagon& p : pentagons) {
        const auto v0 = g.find_vertex(p.vertex(0));
        const DirectionClass side0 = p.orientation == Orientation::Up ? DirectionClass{0} : DirectionClass{5};
        const auto h = v0 ? g.outgoing(*v0, side0) : std::nullopt;
        if (!h) throw ClassificationMismatch("pentagon " + std::to_string(p.id) + " side 0 missing from the graph");
        Face& face = fs.faces[fs.face_of[*h]];
        if (face.kind != FaceKind::Hole || face.pentagon)
            throw ClassificationMismatch("pentagon " + std::to_string(p.id) + " does not own a distinct bounded face");
        face.kind = FaceKind::PentagonInterior;
        face.pentagon = p.id;
    }
    return fs;
}

std::int64_t euler_holes(std::int64_t V, std::int64_t E, std::int64_t n) { return 1 - V + E - n; }

Perimeter perimeter(const SubdivisionGraph& g, const FaceSet& faces) {
    Perimeter out;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Face& left = faces.faces[faces.face_of[2 * e]];
        const Face& right = faces.faces[faces.face_of[2 * e + 1]];
        const bool on_outer = left.kind == FaceKind::Outer || right.kind == FaceKind::Outer;
        const bool on_boundary = left.kind != FaceKind::PentagonInterior || right.kind != FaceKind::PentagonInterior;
        if (!on_boundary) continue;
        const QSqrt5 len = g.edge_length(e);
        out.total_boundary += len;
        if (on_outer) out.outer += len;
    }
    return out;
}

StructureMetrics measure(std::span<const Pentagon> pentagons) {
    const SubdivisionGraph g = build_subdivision(pentagons);
    const FaceSet faces = extract_faces(g, pentagons);
    StructureMetrics m;
    m.n = pentagons.size();
    m.V = g.vertex_count();
    m.E = g.edge_count();
    m.H_euler = euler_holes(static_cast<std::int64_t>(m.V), static_cast<std::int64_t>(m.E),
                            static_cast<std::int64_t>(m.n));
    m.H_faces = faces.hole_count();
    m.perimeter = perimeter(g, faces);
    return m;
}

}  // namespace pentagrow
