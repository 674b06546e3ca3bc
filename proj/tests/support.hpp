#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pentagrow/growth.hpp"

namespace testing {

// Twelve attachments (owner, side) that enclose a diamond hole next to an
// octagonal one.
inline const std::vector<std::pair<int, int>> kDiamondScript = {
    {0, 0}, {0, 4}, {1, 3}, {2, 0}, {4, 2}, {5, 0}, {6, 1}, {7, 3}, {8, 0}, {9, 3}, {10, 0}};

inline pentagrow::GrowthState scripted(const std::vector<std::pair<int, int>>& script, std::uint64_t seed = 0) {
    auto s = pentagrow::GrowthState::seed_structure(seed);
    for (auto [owner, side] : script) s.attach_at(static_cast<pentagrow::PentagonId>(owner), side);
    return s;
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("pentagrow_test_" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testing
