#pragma once

// Structure files and layered SVG for laser cutting.
//
// Structure file, version 1 (text, integers only):
//
//   pentagrow-structure 1
//   seed <S>
//   n <N>
//   <id> <a0> <a1> <a2> <a3> <U|D> <stage> <parent> <side>
//   ...
//
// one pentagon line per id in increasing order; the seed pentagon has
// parent and side -1. Pentagon lines are the attachment log: replaying them
// in order rebuilds the structure.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pentagrow/growth.hpp"

namespace pentagrow {

inline constexpr int kStructureFormatVersion = 1;

struct StructureDocument {
    std::uint64_t seed = 0;
    std::vector<Pentagon> pentagons;

    friend bool operator==(const StructureDocument&, const StructureDocument&) = default;
};

std::string serialize_structure(std::uint64_t seed, std::span<const Pentagon> pentagons);
inline std::string serialize_structure(const GrowthState& s) { return serialize_structure(s.seed(), s.pentagons()); }

void save_structure(const GrowthState& s, const std::filesystem::path& path);
void save_structure(const StructureDocument& doc, const std::filesystem::path& path);

/// Syntax and version only; no geometric checks. Throws MalformedFile or
/// VersionMismatch.
StructureDocument parse_structure(const std::string& text);
/// parse_structure on a file's contents; IoError if it cannot be read.
StructureDocument read_structure(const std::filesystem::path& path);

/// Replays the attachment log and checks it against the stored pentagons.
/// Throws InvariantViolation when a pentagon breaks the tree (bad parent or
/// side, wrong center, wrong orientation parity, stage != id) or overlaps an
/// earlier one. The random stream restarts from the seed: continuing growth
/// from a rebuilt state is deterministic but differs from the original run.
GrowthState rebuild(const StructureDocument& doc);

/// read_structure followed by rebuild.
GrowthState load_structure(const std::filesystem::path& path);

struct SvgOptions {
    double mm_per_side = 10.0;
    bool holes_as_cut = false;  // hole outlines as extra closed cut paths instead of engraved edges
    bool tree = true;
    bool fills = true;
    double cut_stroke_mm = 0.1;
    double engrave_stroke_mm = 0.2;
    double margin_mm = 5.0;
};

/// SVG 1.1 with groups id="cut" and id="engrave". Coordinates in millimetres
/// with 9 decimals; the y axis points up in structure space.
std::string to_svg(std::span<const Pentagon> pentagons, const SvgOptions& options = {});
void write_svg(std::span<const Pentagon> pentagons, const std::filesystem::path& path, const SvgOptions& options = {});

}  // namespace pentagrow
