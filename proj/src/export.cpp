#include "pentagrow/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "pentagrow/errors.hpp"
#include "pentagrow/graph.hpp"

namespace pentagrow {

namespace {

constexpr const char* kMagic = "pentagrow-structure";

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read of " + path.string() + " failed");
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write to " + path.string() + " failed");
}

std::int64_t parse_int(const std::string& tok, std::size_t lineno) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used == 0 || used != tok.size())
        throw MalformedFile("line " + std::to_string(lineno) + ": expected an integer, got '" + tok + "'");
    return v;
}

std::string mm(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    std::string s = buf;
    if (s == "-0.000000000") s = "0.000000000";
    return s;
}

}  // namespace

std::string serialize_structure(std::uint64_t seed, std::span<const Pentagon> pentagons) {
    std::ostringstream out;
    out << kMagic << ' ' << kStructureFormatVersion << '\n';
    out << "seed " << seed << '\n';
    out << "n " << pentagons.size() << '\n';
    for (const Pentagon& p : pentagons) {
        out << p.id;
        for (std::int64_t c : p.center.a) out << ' ' << c;
        out << ' ' << to_char(p.orientation) << ' ' << p.stage << ' '
            << (p.parent ? static_cast<std::int64_t>(*p.parent) : -1) << ' '
            << (p.parent_side ? static_cast<int>(*p.parent_side) : -1) << '\n';
    }
    return out.str();
}

void save_structure(const GrowthState& s, const std::filesystem::path& path) {
    write_file(path, serialize_structure(s));
}

void save_structure(const StructureDocument& doc, const std::filesystem::path& path) {
    write_file(path, serialize_structure(doc.seed, doc.pentagons));
}

StructureDocument parse_structure(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    auto next_line = [&](const char* what) {
        if (!std::getline(in, line)) throw MalformedFile("missing " + std::string(what));
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        return toks;
    };

    auto header = next_line("header");
    if (header.size() != 2 || header[0] != kMagic) throw MalformedFile("not a pentagrow structure file");
    const std::int64_t version = parse_int(header[1], lineno);
    if (version != kStructureFormatVersion)
        throw VersionMismatch("structure format version " + header[1] + ", this build reads version " +
                              std::to_string(kStructureFormatVersion));

    StructureDocument doc;
    auto seed_line = next_line("seed line");
    if (seed_line.size() != 2 || seed_line[0] != "seed") throw MalformedFile("line 2: expected 'seed <S>'");
    try {
        std::size_t used = 0;
        doc.seed = std::stoull(seed_line[1], &used);
        if (used != seed_line[1].size() || seed_line[1].front() == '-') throw std::invalid_argument("seed");
    } catch (const std::logic_error&) {
        throw MalformedFile("line 2: bad seed '" + seed_line[1] + "'");
    }

    auto n_line = next_line("count line");
    if (n_line.size() != 2 || n_line[0] != "n") throw MalformedFile("line 3: expected 'n <N>'");
    const std::int64_t n = parse_int(n_line[1], lineno);
    if (n < 1) throw MalformedFile("line 3: n must be at least 1");

    for (std::int64_t i = 0; i < n; ++i) {
        auto t = next_line("pentagon line");
        if (t.size() != 9)
            throw MalformedFile("line " + std::to_string(lineno) + ": expected 9 fields, got " +
                                std::to_string(t.size()));
        Pentagon p;
        const std::int64_t id = parse_int(t[0], lineno);
        if (id != i) throw MalformedFile("line " + std::to_string(lineno) + ": expected id " + std::to_string(i));
        p.id = static_cast<PentagonId>(id);
        for (std::size_t k = 0; k < 4; ++k) p.center.a[k] = parse_int(t[1 + k], lineno);
        if (t[5] == "U")
            p.orientation = Orientation::Up;
        else if (t[5] == "D")
            p.orientation = Orientation::Down;
        else
            throw MalformedFile("line " + std::to_string(lineno) + ": orientation must be U or D");
        const std::int64_t stage = parse_int(t[6], lineno);
        const std::int64_t parent = parse_int(t[7], lineno);
        const std::int64_t side = parse_int(t[8], lineno);
        if (stage < 0 || stage > std::numeric_limits<std::uint32_t>::max())
            throw MalformedFile("line " + std::to_string(lineno) + ": stage out of range");
        p.stage = static_cast<std::uint32_t>(stage);
        if ((parent < 0) != (side < 0))
            throw MalformedFile("line " + std::to_string(lineno) + ": parent and side must both be -1 or both set");
        if (parent >= 0) {
            if (parent > std::numeric_limits<std::uint32_t>::max() || side > 4)
                throw MalformedFile("line " + std::to_string(lineno) + ": parent or side out of range");
            p.parent = static_cast<PentagonId>(parent);
            p.parent_side = static_cast<std::uint8_t>(side);
        } else if (parent != -1 || side != -1) {
            throw MalformedFile("line " + std::to_string(lineno) + ": parent and side must be -1 or non-negative");
        }
        doc.pentagons.push_back(p);
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            throw MalformedFile("line " + std::to_string(lineno) + ": trailing content after " + std::to_string(n) +
                                " pentagons");
    }
    return doc;
}

StructureDocument read_structure(const std::filesystem::path& path) {
    try {
        return parse_structure(read_file(path));
    } catch (const MalformedFile& e) {
        throw MalformedFile(path.string() + ": " + e.what());
    } catch (const VersionMismatch& e) {
        throw VersionMismatch(path.string() + ": " + e.what());
    }
}

GrowthState rebuild(const StructureDocument& doc) {
    if (doc.pentagons.empty()) throw InvariantViolation("structure has no pentagons");
    GrowthState s = GrowthState::seed_structure(doc.seed);
    auto check_same = [&](const Pentagon& want, const Pentagon& got) {
        const std::string who = "pentagon " + std::to_string(want.id);
        if (want.center != got.center) throw InvariantViolation(who + ": center does not match its gluing");
        if (want.orientation != got.orientation)
            throw InvariantViolation(who + ": orientation breaks the Up/Down parity of the tree");
        if (want.stage != got.stage) throw InvariantViolation(who + ": stage differs from attachment order");
    };
    const Pentagon& first = doc.pentagons.front();
    if (first.parent) throw InvariantViolation("pentagon 0 must be the seed");
    check_same(first, s.pentagon(0));
    for (std::size_t i = 1; i < doc.pentagons.size(); ++i) {
        const Pentagon& p = doc.pentagons[i];
        const std::string who = "pentagon " + std::to_string(p.id);
        if (!p.parent) throw InvariantViolation(who + ": only the seed may lack a parent");
        if (*p.parent >= p.id) throw InvariantViolation(who + ": parent must be attached earlier");
        if (!s.is_free(*p.parent, *p.parent_side)) {
            const Placement ghost = ghost_placement(s.pentagon(*p.parent), *p.parent_side);
            for (const Pentagon& q : s.pentagons())
                if (interiors_overlap(ghost.center, ghost.orientation, q.center, q.orientation))
                    throw InvariantViolation(who + " overlaps pentagon " + std::to_string(q.id));
            throw InvariantViolation(who + ": glued on an edge that was not free");
        }
        s.attach_at(*p.parent, *p.parent_side);
        check_same(p, s.pentagons().back());
    }
    return s;
}

GrowthState load_structure(const std::filesystem::path& path) {
    const StructureDocument doc = read_structure(path);
    try {
        return rebuild(doc);
    } catch (const InvariantViolation& e) {
        throw InvariantViolation(path.string() + ": " + e.what());
    }
}

std::string to_svg(std::span<const Pentagon> pentagons, const SvgOptions& opt) {
    const SubdivisionGraph g = build_subdivision(pentagons);
    const FaceSet faces = extract_faces(g, pentagons);

    // plane unit = circumradius; one side is 2 sin 36 deg of those
    const double scale = opt.mm_per_side / (2.0 * std::sin(std::numbers::pi / 5));
    std::vector<std::pair<double, double>> xy;
    xy.reserve(g.vertex_count());
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (const CycPoint& v : g.vertices()) {
        const auto [px, py] = to_plane(v);
        const double x = px * scale, y = -py * scale;
        xy.emplace_back(x, y);
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    x0 -= opt.margin_mm;
    y0 -= opt.margin_mm;
    x1 += opt.margin_mm;
    y1 += opt.margin_mm;

    auto point = [&](VertexId v) { return mm(xy[v].first) + ' ' + mm(xy[v].second); };
    auto face_path = [&](const Face& f) {
        std::string d;
        for (std::size_t i = 0; i < f.boundary.size(); ++i) {
            d += i == 0 ? "M " : " L ";
            d += point(g.origin(f.boundary[i]));
        }
        return d + " Z";
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << mm(x1 - x0) << "mm\" height=\""
        << mm(y1 - y0) << "mm\" viewBox=\"" << mm(x0) << ' ' << mm(y0) << ' ' << mm(x1 - x0) << ' ' << mm(y1 - y0)
        << "\">\n";

    out << "<g id=\"cut\" fill=\"none\" stroke=\"#ff0000\" stroke-width=\"" << mm(opt.cut_stroke_mm) << "\">\n";
    out << "<path class=\"outer\" d=\"" << face_path(faces.faces[faces.outer]) << "\"/>\n";
    if (opt.holes_as_cut)
        for (std::size_t f : faces.holes()) out << "<path class=\"hole\" d=\"" << face_path(faces.faces[f]) << "\"/>\n";
    out << "</g>\n";

    out << "<g id=\"engrave\">\n";
    if (opt.fills) {
        out << "<g id=\"fills\" stroke=\"none\">\n";
        const double n = static_cast<double>(pentagons.size());
        for (const Pentagon& p : pentagons) {
            std::string fill = "#000000";
            if (p.stage != 0) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "hsl(%.9f,100%%,50%%)", 360.0 * p.stage / n);
                fill = buf;
            }
            out << "<path fill=\"" << fill << "\" d=\"";
            for (int j = 0; j < 5; ++j) {
                const auto [px, py] = to_plane(p.vertex(j));
                out << (j == 0 ? "M " : " L ") << mm(px * scale) << ' ' << mm(-py * scale);
            }
            out << " Z\"/>\n";
        }
        out << "</g>\n";
    }
    out << "<g id=\"edges\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << mm(opt.engrave_stroke_mm) << "\">\n";
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const FaceKind a = faces.faces[faces.face_of[2 * e]].kind;
        const FaceKind b = faces.faces[faces.face_of[2 * e + 1]].kind;
        if (a == FaceKind::Outer || b == FaceKind::Outer) continue;
        if (opt.holes_as_cut && (a == FaceKind::Hole || b == FaceKind::Hole)) continue;
        out << "<path d=\"M " << point(g.edges()[e].first) << " L " << point(g.edges()[e].second) << "\"/>\n";
    }
    out << "</g>\n";
    if (opt.tree) {
        out << "<g id=\"tree\" fill=\"none\" stroke=\"#0000ff\" stroke-width=\"" << mm(opt.engrave_stroke_mm)
            << "\">\n";
        for (const Pentagon& p : pentagons) {
            if (!p.parent || *p.parent >= pentagons.size()) continue;
            const auto [ax, ay] = to_plane(pentagons[*p.parent].center);
            const auto [bx, by] = to_plane(p.center);
            out << "<path d=\"M " << mm(ax * scale) << ' ' << mm(-ay * scale) << " L " << mm(bx * scale) << ' '
                << mm(-by * scale) << "\"/>\n";
        }
        out << "</g>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

void write_svg(std::span<const Pentagon> pentagons, const std::filesystem::path& path, const SvgOptions& options) {
    write_file(path, to_svg(pentagons, options));
}

}  // namespace pentagrow
