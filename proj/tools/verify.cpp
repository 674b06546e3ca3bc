#include "verify.hpp"

#include <unordered_map>

#include "pentagrow/errors.hpp"
#include "pentagrow/graph.hpp"
#include "pentagrow/holes.hpp"
#include "pentagrow/oracle.hpp"

namespace pentagrow::cli {

namespace {

constexpr std::size_t kMaxProblems = 20;
constexpr std::size_t kDeepLimit = 50;

void note(CheckResult& r, std::string msg) {
    r.status = CheckResult::Status::Failed;
    if (r.problems.size() < kMaxProblems) r.problems.push_back(std::move(msg));
}

CheckResult skipped(std::string name, std::string why) {
    CheckResult r(std::move(name));
    r.status = CheckResult::Status::Skipped;
    r.problems.push_back(std::move(why));
    return r;
}

CheckResult check_tree(const std::vector<Pentagon>& ps) {
    CheckResult r("tree");
    std::vector<int> depth(ps.size(), 0);
    for (const Pentagon& p : ps) {
        const std::string who = "pentagon " + std::to_string(p.id);
        if (p.stage != p.id) note(r, who + ": stage " + std::to_string(p.stage) + " != id");
        if (!p.parent) {
            if (p.id != 0) note(r, who + ": only the seed may lack a parent");
            else if (!(p.center.is_zero() && p.orientation == Orientation::Up))
                note(r, "seed must be the Up pentagon at the origin");
            continue;
        }
        if (*p.parent >= p.id) {
            note(r, who + ": parent " + std::to_string(*p.parent) + " is not earlier");
            continue;
        }
        const Pentagon& q = ps[*p.parent];
        depth[p.id] = depth[q.id] + 1;
        const Placement want = ghost_placement(q, *p.parent_side);
        if (want.center != p.center) note(r, who + ": center is not the reflection of its parent's side");
        const Orientation parity = depth[p.id] % 2 == 0 ? Orientation::Up : Orientation::Down;
        if (p.orientation != parity) note(r, who + ": orientation breaks tree-depth parity");
    }
    return r;
}

CheckResult check_disjoint(const std::vector<Pentagon>& ps) {
    CheckResult r("disjoint");
    SpatialHash grid;
    std::vector<std::pair<double, double>> xy;
    for (const Pentagon& p : ps) {
        xy.push_back(to_plane(p.center));
        grid.insert(p.id, xy.back().first, xy.back().second);
    }
    for (const Pentagon& p : ps) {
        grid.for_each_near(xy[p.id].first, xy[p.id].second, 2.1, [&](PentagonId j) {
            if (j <= p.id) return;
            if (interiors_overlap(p.center, p.orientation, ps[j].center, ps[j].orientation))
                note(r, "pentagons " + std::to_string(p.id) + " and " + std::to_string(j) + " overlap");
        });
    }
    return r;
}

CheckResult check_ledger(const StructureDocument& doc) {
    CheckResult r("ledger");
    GrowthState s = GrowthState::seed_structure(doc.seed);
    for (std::size_t i = 1; i < doc.pentagons.size(); ++i) {
        const Pentagon& p = doc.pentagons[i];
        if (!s.in_ledger(*p.parent, *p.parent_side)) {
            note(r, "pentagon " + std::to_string(p.id) + " was glued on an edge that was not free");
            return r;
        }
        s.attach_at(*p.parent, *p.parent_side);
    }
    // the final ledger must hold exactly the free edges
    for (const Pentagon& p : s.pentagons())
        for (int k = 0; k < 5; ++k)
            if (s.in_ledger(p.id, k) != s.is_free(p.id, k))
                note(r, "ledger disagrees with a rescan at pentagon " + std::to_string(p.id) + " side " +
                            std::to_string(k));
    return r;
}

}  // namespace

bool VerifyReport::passed() const {
    for (const CheckResult& c : checks)
        if (c.status == CheckResult::Status::Failed) return false;
    return true;
}

VerifyReport verify_document(const StructureDocument& doc, bool deep) {
    VerifyReport rep;
    const auto& ps = doc.pentagons;

    rep.checks.push_back(check_tree(ps));
    const bool tree_ok = rep.checks.back().status == CheckResult::Status::Ok;
    rep.checks.push_back(check_disjoint(ps));
    const bool disjoint_ok = rep.checks.back().status == CheckResult::Status::Ok;

    if (tree_ok)
        rep.checks.push_back(check_ledger(doc));
    else
        rep.checks.push_back(skipped("ledger", "tree check failed"));

    if (!disjoint_ok) {
        for (const char* name : {"directions", "euler", "angle_sum"})
            rep.checks.push_back(skipped(name, "pentagons overlap"));
    } else {
        CheckResult dirs("directions"), euler("euler"), angles("angle_sum");
        try {
            const SubdivisionGraph g = build_subdivision(ps);
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                const auto [a, b] = g.edges()[e];
                if (direction_class(g.vertices()[b] - g.vertices()[a]) != g.direction(static_cast<HalfEdgeId>(2 * e)))
                    note(dirs, "edge " + std::to_string(e) + " has an inconsistent direction class");
            }
            const FaceSet faces = extract_faces(g, ps);
            const auto n = static_cast<std::int64_t>(ps.size());
            const std::int64_t h_euler =
                euler_holes(static_cast<std::int64_t>(g.vertex_count()), static_cast<std::int64_t>(g.edge_count()), n);
            if (h_euler != static_cast<std::int64_t>(faces.hole_count()))
                note(euler, "V - E + n + H != 1: Euler gives " + std::to_string(h_euler) + " holes, faces give " +
                                std::to_string(faces.hole_count()));
            for (std::size_t f : faces.holes()) {
                try {
                    const auto a = angle_sequence(g, faces.faces[f]);
                    if (!verify_angle_sum(a))
                        note(angles, "hole face " + std::to_string(f) + " with " + std::to_string(a.size()) +
                                         " sides breaks the angle sum");
                } catch (const NonMultipleAngle& e) {
                    note(angles, std::string("hole face ") + std::to_string(f) + ": " + e.what());
                }
            }
        } catch (const NotAGridDirection& e) {
            note(dirs, e.what());
        } catch (const ClassificationMismatch& e) {
            note(euler, e.what());
        }
        rep.checks.push_back(std::move(dirs));
        rep.checks.push_back(std::move(euler));
        rep.checks.push_back(std::move(angles));
    }

    if (deep) {
        if (ps.size() > kDeepLimit) {
            rep.checks.push_back(skipped("oracle", "n > " + std::to_string(kDeepLimit)));
        } else {
            CheckResult r("oracle");
            for (std::size_t i = 0; i < ps.size(); ++i)
                for (std::size_t j = i + 1; j < ps.size(); ++j) {
                    const auto v = oracle::overlap_verdict(ps[i].center, ps[i].orientation, ps[j].center,
                                                           ps[j].orientation);
                    if (v == oracle::Verdict::Marginal) continue;
                    const bool exact = interiors_overlap(ps[i].center, ps[i].orientation, ps[j].center,
                                                         ps[j].orientation);
                    if (exact != (v == oracle::Verdict::Overlap))
                        note(r, "overlap verdict for pentagons " + std::to_string(i) + ", " + std::to_string(j) +
                                    " differs from the oracle");
                }
            if (disjoint_ok) {
                const auto counts = oracle::subdivision_counts(ps);
                const SubdivisionGraph g = build_subdivision(ps);
                if (counts.V != g.vertex_count() || counts.E != g.edge_count())
                    note(r, "oracle V=" + std::to_string(counts.V) + " E=" + std::to_string(counts.E) + ", exact V=" +
                                std::to_string(g.vertex_count()) + " E=" + std::to_string(g.edge_count()));
            }
            rep.checks.push_back(std::move(r));
        }
    }
    return rep;
}

}  // namespace pentagrow::cli
