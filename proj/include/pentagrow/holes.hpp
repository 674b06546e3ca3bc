#pragma once

// Hole shapes: angle sequences, unit-step boundary words, canonical
// signatures and the named catalog.
//
// U_k (k = 0..4) is the direction of the seed pentagon's side k, from zeta^k
// to zeta^(k+1); U_k has direction class 2k and -U_k has class 2k+5 (mod 10),
// so the ten signed steps cover all ten grid directions.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pentagrow/exact.hpp"
#include "pentagrow/graph.hpp"

namespace pentagrow {

/// One side-length step along U_k or -U_k.
struct Step {
    int k = 0;
    bool negative = false;

    DirectionClass direction() const { return {negative ? (2 * k + 5) % 10 : 2 * k}; }
    static Step from_direction(DirectionClass d);

    /// File encoding: U_k -> k+1, -U_k -> -(k+1).
    int encode() const { return negative ? -(k + 1) : k + 1; }
    /// Throws std::invalid_argument for values outside [-5, -1] u [1, 5].
    static Step decode(int v);

    friend bool operator==(const Step&, const Step&) = default;
};

using StepWord = std::vector<Step>;

/// Parses "U4 -U2 U0" style text.
StepWord parse_step_word(const std::string& text);
std::string format_step_word(const StepWord& w);

CycPoint step_vector(Step s);
CycPoint word_sum(const StepWord& w);
inline bool is_closed(const StepWord& w) { return word_sum(w).is_zero(); }

/// The same boundary walked the other way round: reverse the order, negate each step.
StepWord reflect(const StepWord& w);
/// Cyclic shift starting at position j.
StepWord rotate(const StepWord& w, std::size_t j);

/// A straight piece of a hole boundary after merging collinear edges.
struct BoundarySide {
    DirectionClass direction;
    QSqrt5 length;  // side-length units
};

/// Geometric sides of a face walked counterclockwise, starting at a corner.
std::vector<BoundarySide> boundary_sides(const SubdivisionGraph& g, const Face& face);

/// Interior angle (in units of 36 deg) at the corner before each side.
/// Throws NonMultipleAngle when consecutive sides fold back onto each other.
std::vector<int> corner_angles(const std::vector<BoundarySide>& sides);

std::vector<int> angle_sequence(const SubdivisionGraph& g, const Face& hole);

/// sum(a) == 5 (l - 2).
bool verify_angle_sum(std::span<const int> angles);

/// All angle tuples of an l-gon on the 36-degree grid (1 <= a_i <= 9,
/// a_i != 5), one lexicographically minimal representative per class under
/// rotation and reflection, sorted. Requires l >= 3.
std::vector<std::vector<int>> enumerate_angle_types(int l);

/// Lexicographically minimal representative of an angle tuple under
/// rotation and reflection.
std::vector<int> canonical_angle_type(std::span<const int> angles);

/// Unit-step word of a hole. Throws NonUnitSide when a side is not a positive
/// integer number of side lengths.
StepWord step_word(const SubdivisionGraph& g, const Face& hole);

struct HoleSignature {
    std::size_t l = 0;
    std::vector<int> angles;
    std::vector<QSqrt5> side_lengths;
    /// Empty for irregular holes (some side not an integer multiple of the unit).
    StepWord canonical_word;

    bool regular() const { return !canonical_word.empty(); }
    /// Stable text key, unique per congruence class.
    std::string key() const;

    friend bool operator==(const HoleSignature&, const HoleSignature&) = default;
};

/// Canonical form under cyclic rotation, traversal reversal, the ten grid
/// rotations and mirror images. The word is returned counterclockwise and
/// starting at a corner; angles and side lengths follow it in lockstep.
HoleSignature canonicalize(const StepWord& w);

/// Signature of an irregular hole from its sides (canonical under cyclic
/// rotation and reversal).
HoleSignature canonicalize_sides(const std::vector<BoundarySide>& sides);

/// Signature of any hole face; regular holes go through their step word.
HoleSignature hole_signature(const SubdivisionGraph& g, const Face& hole);

/// True if some symmetric image of `fragment` occurs as a contiguous cyclic
/// subword of the closed word `word`.
bool contains_fragment(const StepWord& word, const StepWord& fragment);

enum class EntrySource : std::uint8_t { Gallery, Discovered };

enum class EntryKind : std::uint8_t {
    Closed,     // known closed word
    Path,       // open boundary fragment; full signature learned on first sighting
    Angles,     // matched by angle type only, any size
    Reserved,   // named shape without machine-readable data
    Irregular,  // discovered hole with a non-unit side
};

struct CatalogEntry {
    std::string name;
    EntrySource source = EntrySource::Gallery;
    EntryKind kind = EntryKind::Reserved;
    std::optional<HoleSignature> signature;
    StepWord fragment;
    std::vector<std::vector<int>> angle_patterns;
};

/// Hole catalog. Append-only; single writer during a census.
///
/// Text format, one entry per line, fields separated by ';':
///   name ; source ; kind ; word ; angles ; lengths ; fragment
/// word and fragment are space-separated encoded steps (U_k -> k+1,
/// -U_k -> -(k+1)); angles are space-separated integers (alternative
/// patterns of an `angles` entry are separated by '|'); lengths are
/// space-separated p,q,d triples meaning (p + q sqrt5)/d. Lines starting
/// with '#' are comments.
class Catalog {
public:
    /// Entries for the shapes named in the hole gallery, with the boundary
    /// words known for them.
    static Catalog seeded();
    static Catalog load(const std::filesystem::path& path);
    /// Throws MalformedFile naming the first bad line.
    static Catalog parse(const std::string& text);

    std::string serialize() const;
    void save(const std::filesystem::path& path) const;

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* find(const std::string& name) const;

    struct Match {
        std::string name;
        bool discovered = false;
    };

    /// Names a hole: exact signature, then unlearned path fragments (longest
    /// first), then angle patterns; otherwise appends a Discovered entry with
    /// a stable generated name.
    Match classify(const HoleSignature& sig);

private:
    void add(CatalogEntry e);

    std::vector<CatalogEntry> entries_;
    std::map<std::string, std::size_t> by_key_;
};

/// Stable name for an uncatalogued signature.
std::string generated_name(const HoleSignature& sig);

struct CensusResult {
    std::map<std::string, std::size_t> histogram;
    std::size_t holes = 0;
    std::size_t angle_sum_violations = 0;
    std::size_t irregular = 0;
    std::vector<std::string> discovered;
    std::vector<HoleSignature> signatures;  // one per hole, face order
};

CensusResult census(std::span<const Pentagon> pentagons, Catalog& catalog);
CensusResult census(const SubdivisionGraph& g, const FaceSet& faces, Catalog& catalog);

}  // namespace pentagrow
