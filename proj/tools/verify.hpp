#pragma once

#include <string>
#include <vector>

#include "pentagrow/export.hpp"

namespace pentagrow::cli {

struct CheckResult {
    explicit CheckResult(std::string n) : name(std::move(n)) {}

    std::string name;
    enum class Status { Ok, Failed, Skipped } status = Status::Ok;
    std::vector<std::string> problems;  // or the reason for skipping
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

/// Invariant suite over a possibly corrupt document: tree, interior
/// disjointness, ledger replay, direction classes, Euler identity both ways
/// and the hole angle sum. With deep set and n <= 50 the exact subdivision
/// and overlap verdicts are compared with the high-precision oracle.
VerifyReport verify_document(const StructureDocument& doc, bool deep);

}  // namespace pentagrow::cli
