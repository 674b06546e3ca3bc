#include "pentagrow/holes.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pentagrow {

namespace {

int mod10(int v) { return ((v % 10) + 10) % 10; }

// Turn from direction a to direction b in units of 36 deg, in [-5, 4].
int turn(int a, int b) { return mod10(b - a + 5) - 5; }

using Classes = std::vector<int>;

Classes to_classes(const StepWord& w) {
    Classes c;
    c.reserve(w.size());
    for (const Step& s : w) c.push_back(s.direction().k);
    return c;
}

StepWord to_word(const Classes& c) {
    StepWord w;
    w.reserve(c.size());
    for (int k : c) w.push_back(Step::from_direction({k}));
    return w;
}

int total_turn(const Classes& c) {
    int t = 0;
    for (std::size_t i = 0; i < c.size(); ++i) t += turn(c[i], c[(i + 1) % c.size()]);
    return t;
}

// reverse the walk: reverse order and negate every step
Classes reversed_walk(const Classes& c) {
    Classes r(c.rbegin(), c.rend());
    for (int& k : r) k = mod10(k + 5);
    return r;
}

// mirror image across the class-0 line, walked so orientation is preserved
Classes mirrored_walk(const Classes& c) {
    Classes m;
    m.reserve(c.size());
    for (int k : c) m.push_back(mod10(-k));
    return reversed_walk(m);
}

Classes rotated(const Classes& c, int r) {
    Classes out(c);
    for (int& k : out) k = mod10(k + r);
    return out;
}

template <class T>
std::vector<T> cyclic(const std::vector<T>& v, std::size_t s) {
    std::vector<T> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(v[(s + i) % v.size()]);
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::istringstream is(s);
    int v;
    while (is >> v) out.push_back(v);
    if (!is.eof()) throw std::invalid_argument("expected integers in '" + s + "'");
    return out;
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v[i]);
    }
    return out;
}

std::string encode_word(const StepWord& w) {
    std::vector<int> v;
    for (const Step& s : w) v.push_back(s.encode());
    return join_ints(v);
}

StepWord decode_word(const std::string& s) {
    StepWord w;
    for (int v : parse_ints(s)) w.push_back(Step::decode(v));
    return w;
}

// Sides of a class sequence that starts at a corner.
void sides_of(const Classes& c, std::vector<int>& dirs, std::vector<std::int64_t>& counts) {
    dirs.clear();
    counts.clear();
    for (int k : c) {
        if (!dirs.empty() && dirs.back() == k) {
            ++counts.back();
        } else {
            dirs.push_back(k);
            counts.push_back(1);
        }
    }
    if (dirs.size() > 1 && dirs.front() == dirs.back()) {
        counts.front() += counts.back();
        dirs.pop_back();
        counts.pop_back();
    }
}

HoleSignature signature_from_sides(const std::vector<int>& angles, const std::vector<QSqrt5>& lengths) {
    using Pair = std::pair<int, QSqrt5>;
    const std::size_t m = angles.size();
    std::vector<Pair> fwd, rev;
    for (std::size_t i = 0; i < m; ++i) fwd.emplace_back(angles[i], lengths[i]);
    // walked backwards, the corner before side j is the one after it
    for (std::size_t j = m; j-- > 0;) rev.emplace_back(angles[(j + 1) % m], lengths[j]);

    auto less = [](const std::vector<Pair>& a, const std::vector<Pair>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].first != b[i].first) return a[i].first < b[i].first;
            const int c = compare(a[i].second, b[i].second);
            if (c != 0) return c < 0;
        }
        return false;
    };
    std::vector<Pair> best = fwd;
    for (const auto* seq : {&fwd, &rev})
        for (std::size_t s = 0; s < m; ++s) {
            auto cand = cyclic(*seq, s);
            if (less(cand, best)) best = std::move(cand);
        }

    HoleSignature sig;
    sig.l = m;
    for (const auto& [a, len] : best) {
        sig.angles.push_back(a);
        sig.side_lengths.push_back(len);
    }
    return sig;
}

QSqrt5 parse_qsqrt5(const std::string& tok) {
    const auto parts = split(tok, ',');
    if (parts.size() != 3) throw std::invalid_argument("expected p,q,d but got '" + tok + "'");
    return QSqrt5(std::stoll(parts[0]), std::stoll(parts[1]), std::stoll(parts[2]));
}

std::string format_qsqrt5(const QSqrt5& v) {
    return std::to_string(v.p()) + "," + std::to_string(v.q()) + "," + std::to_string(v.d());
}

const char* to_string(EntrySource s) { return s == EntrySource::Gallery ? "gallery" : "discovered"; }

const char* to_string(EntryKind k) {
    switch (k) {
        case EntryKind::Closed: return "closed";
        case EntryKind::Path: return "path";
        case EntryKind::Angles: return "angles";
        case EntryKind::Reserved: return "reserved";
        case EntryKind::Irregular: return "irregular";
    }
    return "reserved";
}

EntryKind parse_kind(const std::string& s) {
    if (s == "closed") return EntryKind::Closed;
    if (s == "path") return EntryKind::Path;
    if (s == "angles") return EntryKind::Angles;
    if (s == "reserved") return EntryKind::Reserved;
    if (s == "irregular") return EntryKind::Irregular;
    throw std::invalid_argument("unknown catalog entry kind '" + s + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Steps and words

Step Step::from_direction(DirectionClass d) {
    const int k = mod10(d.k);
    if (k % 2 == 0) return {k / 2, false};
    return {mod10(k - 5) / 2, true};
}

Step Step::decode(int v) {
    if (v == 0 || v < -5 || v > 5) throw std::invalid_argument("step code out of range: " + std::to_string(v));
    return {std::abs(v) - 1, v < 0};
}

StepWord parse_step_word(const std::string& text) {
    StepWord w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        bool neg = false;
        std::size_t i = 0;
        if (tok[i] == '-') {
            neg = true;
            ++i;
        } else if (tok[i] == '+') {
            ++i;
        }
        if (i >= tok.size() || (tok[i] != 'U' && tok[i] != 'u'))
            throw std::invalid_argument("bad step token '" + tok + "'");
        ++i;
        if (i < tok.size() && tok[i] == '_') ++i;
        if (i + 1 != tok.size()) throw std::invalid_argument("bad step token '" + tok + "'");
        // 'o' is accepted as a stand-in for 0
        const char c = tok[i];
        const int k = (c == 'o' || c == 'O') ? 0 : c - '0';
        if (k < 0 || k > 4) throw std::invalid_argument("bad step index in '" + tok + "'");
        w.push_back({k, neg});
    }
    return w;
}

std::string format_step_word(const StepWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        if (w[i].negative) out += '-';
        out += 'U';
        out += std::to_string(w[i].k);
    }
    return out;
}

CycPoint step_vector(Step s) { return reference_direction(s.direction().k); }

CycPoint word_sum(const StepWord& w) {
    CycPoint sum;
    for (const Step& s : w) sum += step_vector(s);
    return sum;
}

StepWord reflect(const StepWord& w) { return to_word(reversed_walk(to_classes(w))); }

StepWord rotate(const StepWord& w, std::size_t j) {
    if (w.empty()) return w;
    return cyclic(w, j % w.size());
}

// ---------------------------------------------------------------------------
// Hole geometry

std::vector<BoundarySide> boundary_sides(const SubdivisionGraph& g, const Face& face) {
    const auto& b = face.boundary;
    const std::size_t m = b.size();
    std::size_t start = m;
    for (std::size_t i = 0; i < m; ++i) {
        if (g.direction(b[i]) != g.direction(b[(i + m - 1) % m])) {
            start = i;
            break;
        }
    }
    if (start == m) throw NonMultipleAngle("face boundary has no corner");

    std::vector<BoundarySide> sides;
    for (std::size_t n = 0; n < m; ++n) {
        const HalfEdgeId h = b[(start + n) % m];
        const DirectionClass d = g.direction(h);
        const QSqrt5 len = g.edge_length(h >> 1);
        if (!sides.empty() && sides.back().direction == d) {
            sides.back().length += len;
        } else {
            sides.push_back({d, len});
        }
    }
    return sides;
}

std::vector<int> corner_angles(const std::vector<BoundarySide>& sides) {
    const std::size_t m = sides.size();
    std::vector<int> angles(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int t = turn(sides[(i + m - 1) % m].direction.k, sides[i].direction.k);
        const int a = 5 - t;
        if (a < 1 || a > 9 || a == 5)
            throw NonMultipleAngle("corner angle " + std::to_string(a) + "*36 deg is not a polygon corner");
        angles[i] = a;
    }
    return angles;
}

std::vector<int> angle_sequence(const SubdivisionGraph& g, const Face& hole) {
    return corner_angles(boundary_sides(g, hole));
}

bool verify_angle_sum(std::span<const int> angles) {
    const long l = static_cast<long>(angles.size());
    return std::accumulate(angles.begin(), angles.end(), 0L) == 5 * (l - 2);
}

std::vector<int> canonical_angle_type(std::span<const int> angles) {
    const std::vector<int> fwd(angles.begin(), angles.end());
    const std::vector<int> rev(angles.rbegin(), angles.rend());
    std::vector<int> best = fwd;
    for (const auto* seq : {&fwd, &rev})
        for (std::size_t s = 0; s < fwd.size(); ++s) best = std::min(best, cyclic(*seq, s));
    return best;
}

std::vector<std::vector<int>> enumerate_angle_types(int l) {
    if (l < 3) throw std::invalid_argument("enumerate_angle_types requires l >= 3");
    const int target = 5 * (l - 2);
    std::set<std::vector<int>> classes;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int left) -> void {
        if (left == 0) {
            if (remaining == 0) classes.insert(canonical_angle_type(cur));
            return;
        }
        for (int a = 1; a <= 9; ++a) {
            if (a == 5) continue;
            // every remaining corner needs at least 1, at most 9
            if (remaining - a < left - 1 || remaining - a > 9 * (left - 1)) continue;
            cur.push_back(a);
            self(self, remaining - a, left - 1);
            cur.pop_back();
        }
    };
    rec(rec, target, l);
    return {classes.begin(), classes.end()};
}

StepWord step_word(const SubdivisionGraph& g, const Face& hole) {
    StepWord w;
    for (const BoundarySide& s : boundary_sides(g, hole)) {
        if (!s.length.is_integer() || s.length.p() < 1)
            throw NonUnitSide("hole side of length " + s.length.to_string() + " is not a whole number of sides");
        const Step step = Step::from_direction(s.direction);
        w.insert(w.end(), static_cast<std::size_t>(s.length.p()), step);
    }
    if (!is_closed(w)) throw Error("hole boundary word does not close");
    return w;
}

// ---------------------------------------------------------------------------
// Signatures

std::string HoleSignature::key() const {
    std::string k;
    if (regular()) {
        k = "W:" + encode_word(canonical_word);
    } else {
        k = "I:";
        for (std::size_t i = 0; i < angles.size(); ++i) {
            if (i) k += ' ';
            k += std::to_string(angles[i]) + "@" + format_qsqrt5(side_lengths[i]);
        }
    }
    return k;
}

HoleSignature canonicalize(const StepWord& w) {
    if (w.empty()) return {};
    Classes c = to_classes(w);
    if (total_turn(c) < 0) c = reversed_walk(c);

    const std::size_t m = c.size();
    std::optional<Classes> best;
    for (const Classes& variant : {c, mirrored_walk(c)}) {
        for (int r = 0; r < 10; ++r) {
            const Classes d = rotated(variant, r);
            bool any_corner = false;
            for (std::size_t s = 0; s < m; ++s) {
                if (d[s] == d[(s + m - 1) % m]) continue;
                any_corner = true;
                Classes cand = cyclic(d, s);
                if (!best || cand < *best) best = std::move(cand);
            }
            if (!any_corner && (!best || d < *best)) best = d;
        }
    }

    HoleSignature sig;
    sig.canonical_word = to_word(*best);
    std::vector<int> dirs;
    std::vector<std::int64_t> counts;
    sides_of(*best, dirs, counts);
    sig.l = dirs.size();
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        sig.angles.push_back(5 - turn(dirs[(i + dirs.size() - 1) % dirs.size()], dirs[i]));
        sig.side_lengths.emplace_back(counts[i]);
    }
    return sig;
}

HoleSignature canonicalize_sides(const std::vector<BoundarySide>& sides) {
    std::vector<QSqrt5> lengths;
    for (const auto& s : sides) lengths.push_back(s.length);
    return signature_from_sides(corner_angles(sides), lengths);
}

HoleSignature hole_signature(const SubdivisionGraph& g, const Face& hole) {
    const auto sides = boundary_sides(g, hole);
    const bool unit = std::all_of(sides.begin(), sides.end(),
                                  [](const BoundarySide& s) { return s.length.is_integer() && s.length.p() >= 1; });
    if (!unit) return canonicalize_sides(sides);
    return canonicalize(step_word(g, hole));
}

bool contains_fragment(const StepWord& word, const StepWord& fragment) {
    const Classes w = to_classes(word);
    const std::size_t m = w.size(), k = fragment.size();
    if (k == 0) return true;
    if (k > m) return false;
    const Classes f = to_classes(fragment);
    for (const Classes& base : {f, reversed_walk(f)}) {
        for (const Classes& variant : {base, mirrored_walk(base)}) {
            for (int r = 0; r < 10; ++r) {
                const Classes d = rotated(variant, r);
                for (std::size_t s = 0; s < m; ++s) {
                    std::size_t i = 0;
                    while (i < k && w[(s + i) % m] == d[i]) ++i;
                    if (i == k) return true;
                }
            }
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Catalog

std::string generated_name(const HoleSignature& sig) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08llx", static_cast<unsigned long long>(fnv1a(sig.key()) & 0xffffffffULL));
    return "hole" + std::to_string(sig.l) + "_" + buf;
}

void Catalog::add(CatalogEntry e) {
    if (find(e.name)) throw std::invalid_argument("duplicate catalog name '" + e.name + "'");
    if (e.signature) {
        const std::string k = e.signature->key();
        if (by_key_.count(k)) throw std::invalid_argument("duplicate catalog signature for '" + e.name + "'");
        by_key_[k] = entries_.size();
    }
    entries_.push_back(std::move(e));
}

const CatalogEntry* Catalog::find(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name) return &e;
    return nullptr;
}

Catalog Catalog::seeded() {
    Catalog c;
    auto closed = [&](const char* name, const char* word) {
        c.add({name, EntrySource::Gallery, EntryKind::Closed, canonicalize(parse_step_word(word)), {}, {}});
    };
    auto path = [&](const char* name, const char* word) {
        c.add({name, EntrySource::Gallery, EntryKind::Path, std::nullopt, parse_step_word(word), {}});
    };
    auto reserved = [&](const char* name) { c.add({name, EntrySource::Gallery, EntryKind::Reserved, {}, {}, {}}); };

    c.add({"triangle", EntrySource::Gallery, EntryKind::Angles, {}, {}, {{1, 2, 2}}});
    reserved("arrow");
    c.add({"parallelogram", EntrySource::Gallery, EntryKind::Angles, {}, {}, {{1, 4, 1, 4}, {2, 3, 2, 3}}});
    // A rombos word ending in +U0 does not close; the sign-corrected -U0 does.
    closed("diamond", "U4 -U2 U0 -U4 U2 -U0");
    closed("ship", "U2 -U0 U3 -U1 U0 -U2 U1 -U3");
    path("three_peaks", "-U0 U3 -U1 U0 -U2 U0 -U4");
    closed("crown", "-U1 U0 -U2 U0 -U4 U2 -U3 U1 -U0 U3 -U0 U4");
    closed("double_ship", "U3 -U1 U3 -U2 U4 -U3 U1 -U3 U2 -U4");
    reserved("pigeon");
    closed("triple_ship", "U3 -U0 U4 -U0 U4 -U1 U0 -U3 U0 -U4 U1 -U4");
    path("claw", "-U2 U4 -U3 U0 -U3 U2 -U4 U2 -U0 U3");
    path("whale", "-U4 U1 -U4 U2 -U4 U3 -U1 U3 -U2 U0 -U1 U4 -U1");
    path("fox", "U3 -U1 U0 -U3 U4 -U1 U4 -U3 U1 -U3 U1 -U0 U1 -U0 U2");
    path("bird", "-U0 U3 -U0 U4 -U2 U4 -U3 U1 -U3");
    reserved("deer");
    path("snake", "-U0 U4 -U2 U0 -U2 U1 -U4 U2");
    return c;
}

Catalog::Match Catalog::classify(const HoleSignature& sig) {
    const std::string k = sig.key();
    if (auto it = by_key_.find(k); it != by_key_.end()) return {entries_[it->second].name, false};

    if (sig.regular()) {
        std::vector<std::size_t> paths;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].kind == EntryKind::Path && !entries_[i].signature) paths.push_back(i);
        std::stable_sort(paths.begin(), paths.end(), [&](std::size_t a, std::size_t b) {
            return entries_[a].fragment.size() > entries_[b].fragment.size();
        });
        for (std::size_t i : paths) {
            if (!contains_fragment(sig.canonical_word, entries_[i].fragment)) continue;
            entries_[i].signature = sig;
            by_key_[k] = i;
            return {entries_[i].name, false};
        }
    }

    const std::vector<int> type = canonical_angle_type(sig.angles);
    for (const auto& e : entries_) {
        if (e.kind != EntryKind::Angles) continue;
        for (const auto& pattern : e.angle_patterns)
            if (canonical_angle_type(pattern) == type) return {e.name, false};
    }

    std::string name = generated_name(sig);
    for (int suffix = 2; find(name); ++suffix) name = generated_name(sig) + "_" + std::to_string(suffix);
    add({name, EntrySource::Discovered, sig.regular() ? EntryKind::Closed : EntryKind::Irregular, sig, {}, {}});
    return {name, true};
}

std::string Catalog::serialize() const {
    std::ostringstream os;
    os << "# pentagrow hole catalog v1\n"
       << "# name ; source ; kind ; word ; angles ; lengths ; fragment\n";
    for (const auto& e : entries_) {
        std::string word, angles, lengths;
        if (e.signature) {
            word = encode_word(e.signature->canonical_word);
            angles = join_ints(e.signature->angles);
            if (!e.signature->regular()) {
                for (std::size_t i = 0; i < e.signature->side_lengths.size(); ++i) {
                    if (i) lengths += ' ';
                    lengths += format_qsqrt5(e.signature->side_lengths[i]);
                }
            }
        } else if (e.kind == EntryKind::Angles) {
            for (std::size_t i = 0; i < e.angle_patterns.size(); ++i) {
                if (i) angles += " | ";
                angles += join_ints(e.angle_patterns[i]);
            }
        }
        os << e.name << " ; " << to_string(e.source) << " ; " << to_string(e.kind) << " ; " << word << " ; "
           << angles << " ; " << lengths << " ; " << encode_word(e.fragment) << '\n';
    }
    return os.str();
}

Catalog Catalog::parse(const std::string& text) {
    Catalog c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        try {
            auto fields = split(t, ';');
            if (fields.size() < 3 || fields.size() > 7) throw std::invalid_argument("expected 3 to 7 fields");
            fields.resize(7);
            for (auto& f : fields) f = trim(f);

            CatalogEntry e;
            e.name = fields[0];
            if (e.name.empty()) throw std::invalid_argument("empty name");
            if (fields[1] == "gallery") {
                e.source = EntrySource::Gallery;
            } else if (fields[1] == "discovered") {
                e.source = EntrySource::Discovered;
            } else {
                throw std::invalid_argument("unknown source '" + fields[1] + "'");
            }
            e.kind = parse_kind(fields[2]);
            e.fragment = decode_word(fields[6]);

            if (e.kind == EntryKind::Angles) {
                for (const auto& pat : split(fields[4], '|')) {
                    auto v = parse_ints(pat);
                    if (!v.empty()) e.angle_patterns.push_back(std::move(v));
                }
            } else if (e.kind == EntryKind::Irregular) {
                const std::vector<int> angles = parse_ints(fields[4]);
                std::vector<QSqrt5> lengths;
                std::istringstream ls(fields[5]);
                std::string tok;
                while (ls >> tok) lengths.push_back(parse_qsqrt5(tok));
                if (angles.size() != lengths.size() || angles.size() < 3)
                    throw std::invalid_argument("irregular entry needs matching angles and lengths");
                e.signature = signature_from_sides(angles, lengths);
            } else if (!fields[3].empty()) {
                const StepWord w = decode_word(fields[3]);
                if (!is_closed(w)) throw std::invalid_argument("word of '" + e.name + "' does not close");
                e.signature = canonicalize(w);
            }
            if (e.kind == EntryKind::Closed && !e.signature)
                throw std::invalid_argument("closed entry '" + e.name + "' has no word");
            c.add(std::move(e));
        } catch (const std::exception& ex) {
            throw MalformedFile("catalog line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return c;
}

Catalog Catalog::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read catalog " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void Catalog::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write catalog " + path.string());
    out << serialize();
    if (!out) throw IoError("failed writing catalog " + path.string());
}

// ---------------------------------------------------------------------------
// Census

CensusResult census(const SubdivisionGraph& g, const FaceSet& faces, Catalog& catalog) {
    CensusResult r;
    for (std::size_t f : faces.holes()) {
        const Face& face = faces.faces[f];
        ++r.holes;
        const auto sides = boundary_sides(g, face);
        if (!verify_angle_sum(corner_angles(sides))) ++r.angle_sum_violations;
        HoleSignature sig = hole_signature(g, face);
        if (!sig.regular()) ++r.irregular;
        const auto match = catalog.classify(sig);
        ++r.histogram[match.name];
        if (match.discovered) r.discovered.push_back(match.name);
        r.signatures.push_back(std::move(sig));
    }
    return r;
}

CensusResult census(std::span<const Pentagon> pentagons, Catalog& catalog) {
    const SubdivisionGraph g = build_subdivision(pentagons);
    const FaceSet faces = extract_faces(g, pentagons);
    return census(g, faces, catalog);
}

}  // namespace pentagrow
