#pragma once

// Batches of independent growth runs and estimates of the per-pentagon
// growth rates of V, E, H and perimeter.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace pentagrow {

struct Checkpoint {
    std::size_t n = 0;
    std::size_t V = 0;
    std::size_t E = 0;
    std::size_t H = 0;  // face extraction; equal to the Euler count by construction
    double outer_perimeter = 0;
    double total_boundary = 0;
    std::size_t free_edges = 0;

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct RunRecord {
    std::uint64_t seed = 0;
    std::vector<Checkpoint> checkpoints;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// 10, 20, 50, 100, 200, 500, ... below n_max, then n_max itself.
std::vector<std::size_t> default_schedule(std::size_t n_max);

/// One run measured at each checkpoint. Throws InvariantViolation if the two
/// hole counts ever disagree.
RunRecord run_single(std::uint64_t seed, std::span<const std::size_t> schedule);

/// Runs with seeds base_seed, base_seed + 1, ...; records come back in seed
/// order whatever the worker count. An empty schedule means
/// default_schedule(n_max); workers == 0 means hardware concurrency.
std::vector<RunRecord> run_batch(std::size_t n_max, std::size_t runs, std::uint64_t base_seed,
                                 std::vector<std::size_t> schedule = {}, unsigned workers = 0);

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    double slope_se = 0;
};

/// Ordinary least squares y = slope * x + intercept. Requires two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct RatioStats {
    double mean = 0;
    double se = 0;  // NaN with a single run
};

struct SummaryRow {
    std::size_t n = 0;
    RatioStats V, E, H;
};

struct SlopeEstimate {
    double estimate = 0;
    double ci_low = 0;
    double ci_high = 0;
};

struct BatchSummary {
    std::size_t runs = 0;
    std::vector<SummaryRow> rows;  // one per checkpoint
    // Least-squares slopes of the totals on the last half of the checkpoints,
    // averaged over runs with a normal 95% interval.
    SlopeEstimate slope_V, slope_E, slope_H, slope_outer_perimeter;
    // Coefficient of determination of the pooled fit over all runs and all
    // checkpoints with n >= tail_from.
    std::size_t tail_from = 1000;
    double r2_H = 0;
    double r2_outer_perimeter = 0;
};

/// Per-checkpoint means and standard errors of V/n, E/n, H/n. Throws
/// InsufficientData for no records, std::invalid_argument if the records use
/// different schedules.
std::vector<SummaryRow> ratio_table(std::span<const RunRecord> records);

/// Throws InsufficientData for no records or fewer than two checkpoints,
/// std::invalid_argument if the records use different schedules.
BatchSummary estimate_limits(std::span<const RunRecord> records, std::size_t tail_from = 1000);

/// Header `seed,n,V,E,H,outer_perimeter,total_boundary,free_edges`.
void write_csv(std::span<const RunRecord> records, const std::filesystem::path& path);
/// Header `n,mean_V_over_n,se_V,mean_E_over_n,se_E,mean_H_over_n,se_H`.
void write_csv(std::span<const SummaryRow> rows, const std::filesystem::path& path);
inline void write_csv(const BatchSummary& summary, const std::filesystem::path& path) { write_csv(summary.rows, path); }

/// Inverse of the per-run writer.
std::vector<RunRecord> read_records_csv(const std::filesystem::path& path);

}  // namespace pentagrow
