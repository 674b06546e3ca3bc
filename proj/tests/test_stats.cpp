#include <doctest.h>

#include <cmath>
#include <fstream>

#include "pentagrow/errors.hpp"
#include "pentagrow/graph.hpp"
#include "pentagrow/stats.hpp"
#include "support.hpp"

using namespace pentagrow;

namespace {

RunRecord synthetic(std::uint64_t seed, double jitter) {
    RunRecord r{seed, {}};
    for (std::size_t n : {100u, 200u, 500u, 1000u, 2000u, 5000u}) {
        Checkpoint c;
        c.n = n;
        c.V = 2 * n + 7;
        c.E = 3 * n + 1;
        c.H = static_cast<std::size_t>(0.1 * n + jitter);
        c.outer_perimeter = 0.5 * n + jitter;
        c.total_boundary = c.outer_perimeter + c.H;
        c.free_edges = n;
        r.checkpoints.push_back(c);
    }
    return r;
}

}  // namespace

TEST_CASE("default schedule") {
    CHECK(default_schedule(10) == std::vector<std::size_t>{10});
    CHECK(default_schedule(1000) == std::vector<std::size_t>{10, 20, 50, 100, 200, 500, 1000});
    CHECK(default_schedule(1500) == std::vector<std::size_t>{10, 20, 50, 100, 200, 500, 1000, 1500});
    CHECK(default_schedule(3) == std::vector<std::size_t>{3});
}

TEST_CASE("a single run matches direct measurement") {
    const std::vector<std::size_t> schedule{1, 7, 60, 300};
    const RunRecord r = run_single(5, schedule);
    REQUIRE(r.checkpoints.size() == schedule.size());
    const GrowthState s = grow(300, 5);
    for (const Checkpoint& c : r.checkpoints) {
        const std::vector<Pentagon> ps(s.pentagons().begin(), s.pentagons().begin() + static_cast<std::ptrdiff_t>(c.n));
        const StructureMetrics m = measure(ps);
        CHECK(c.V == m.V);
        CHECK(c.E == m.E);
        CHECK(c.H == m.H_faces);
        CHECK(c.outer_perimeter == doctest::Approx(m.perimeter.outer.to_double()));
        CHECK(c.total_boundary == doctest::Approx(m.perimeter.total_boundary.to_double()));
    }
    CHECK(r.checkpoints.front().V == 5);
    CHECK(r.checkpoints.back().free_edges == s.free_edge_count());
}

TEST_CASE("batches are independent of the worker count") {
    const auto one = run_batch(400, 6, 10, {}, 1);
    const auto many = run_batch(400, 6, 10, {}, 4);
    CHECK(one == many);
    REQUIRE(one.size() == 6);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].seed == 10 + i);
        CHECK(one[i] == run_single(10 + i, default_schedule(400)));
    }
    const auto custom = run_batch(400, 2, 0, {300, 50, 50}, 2);
    CHECK(custom[0].checkpoints.size() == 2);
    CHECK(custom[0].checkpoints[0].n == 50);
}

TEST_CASE("ratio table") {
    const auto records = run_batch(200, 5, 0, {}, 2);
    const auto rows = ratio_table(records);
    REQUIRE(rows.size() == default_schedule(200).size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double sum = 0;
        for (const RunRecord& r : records) sum += double(r.checkpoints[i].V) / double(r.checkpoints[i].n);
        CHECK(rows[i].V.mean == doctest::Approx(sum / 5));
        CHECK(rows[i].V.se >= 0);
    }
    const auto single = ratio_table(std::span<const RunRecord>(records.data(), 1));
    CHECK(std::isnan(single[0].V.se));
    CHECK_THROWS_AS(ratio_table({}), InsufficientData);
}

TEST_CASE("line fit and limit estimates on synthetic data") {
    const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
    const LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2));
    CHECK(f.intercept == doctest::Approx(1));
    CHECK(f.r2 == doctest::Approx(1));
    CHECK(f.slope_se == doctest::Approx(0).epsilon(1e-12));

    std::vector<RunRecord> records;
    for (std::uint64_t s = 0; s < 4; ++s) records.push_back(synthetic(s, double(s)));
    const BatchSummary b = estimate_limits(records, 1000);
    CHECK(b.runs == 4);
    CHECK(b.slope_V.estimate == doctest::Approx(2));
    CHECK(b.slope_E.estimate == doctest::Approx(3));
    CHECK(b.slope_H.estimate == doctest::Approx(0.1).epsilon(1e-3));
    CHECK(b.slope_outer_perimeter.estimate == doctest::Approx(0.5));
    CHECK(b.slope_V.ci_low <= b.slope_V.estimate);
    CHECK(b.slope_V.ci_high >= b.slope_V.estimate);
    CHECK(b.r2_outer_perimeter > 0.999);
    CHECK(b.rows.size() == 6);

    RunRecord short_run{0, {synthetic(0, 0).checkpoints[0]}};
    CHECK_THROWS_AS(estimate_limits(std::span<const RunRecord>(&short_run, 1)), InsufficientData);
    CHECK_THROWS_AS(estimate_limits({}), InsufficientData);
    std::vector<RunRecord> mixed{records[0], short_run};
    CHECK_THROWS_AS(ratio_table(mixed), std::invalid_argument);
}

TEST_CASE("csv round trip") {
    testing::TempDir dir;
    const auto records = run_batch(150, 3, 4, {}, 1);
    write_csv(records, dir / "runs.csv");
    const auto back = read_records_csv(dir / "runs.csv");
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].seed == records[i].seed);
        REQUIRE(back[i].checkpoints.size() == records[i].checkpoints.size());
        for (std::size_t j = 0; j < back[i].checkpoints.size(); ++j) {
            const Checkpoint &a = back[i].checkpoints[j], &b = records[i].checkpoints[j];
            CHECK(a.n == b.n);
            CHECK(a.V == b.V);
            CHECK(a.E == b.E);
            CHECK(a.H == b.H);
            CHECK(a.free_edges == b.free_edges);
            CHECK(a.outer_perimeter == doctest::Approx(b.outer_perimeter).epsilon(1e-11));
            CHECK(a.total_boundary == doctest::Approx(b.total_boundary).epsilon(1e-11));
        }
    }

    std::ifstream in(dir / "runs.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "seed,n,V,E,H,outer_perimeter,total_boundary,free_edges");

    const auto rows = ratio_table(records);
    write_csv(rows, dir / "summary.csv");
    std::ifstream sin(dir / "summary.csv");
    std::getline(sin, header);
    CHECK(header == "n,mean_V_over_n,se_V,mean_E_over_n,se_E,mean_H_over_n,se_H");
    std::size_t lines = 0;
    for (std::string line; std::getline(sin, line);) ++lines;
    CHECK(lines == rows.size());

    write_csv(std::span<const RunRecord>{}, dir / "empty.csv");
    CHECK(read_records_csv(dir / "empty.csv").empty());
    CHECK_THROWS_AS(read_records_csv(dir / "missing.csv"), IoError);
}
