#include "pentagrow/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>

#include "pentagrow/errors.hpp"
#include "pentagrow/graph.hpp"
#include "pentagrow/growth.hpp"

namespace pentagrow {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

RatioStats ratio_stats(const std::vector<double>& xs) {
    RatioStats out;
    double sum = 0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) {
        out.se = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    double ss = 0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
    return out;
}

SlopeEstimate mean_slope(const std::vector<LineFit>& fits) {
    std::vector<double> slopes;
    for (const LineFit& f : fits) slopes.push_back(f.slope);
    const RatioStats s = ratio_stats(slopes);
    // a single run falls back on the regression's own standard error
    const double se = fits.size() < 2 ? fits.front().slope_se : s.se;
    return {s.mean, s.mean - kZ95 * se, s.mean + kZ95 * se};
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write to " + path.string() + " failed");
}

}  // namespace

std::vector<std::size_t> default_schedule(std::size_t n_max) {
    std::vector<std::size_t> out;
    for (std::size_t decade = 10; decade < n_max; decade *= 10) {
        for (std::size_t m : {1, 2, 5}) {
            const std::size_t n = decade * m;
            if (n < n_max) out.push_back(n);
        }
        if (decade > n_max / 10) break;
    }
    if (n_max >= 1) out.push_back(n_max);
    return out;
}

RunRecord run_single(std::uint64_t seed, std::span<const std::size_t> schedule) {
    RunRecord rec;
    rec.seed = seed;
    if (schedule.empty()) return rec;
    GrowthState state = GrowthState::seed_structure(seed);
    for (std::size_t n : schedule) {
        grow_to(state, n);
        const StructureMetrics m = measure(state.pentagons());
        if (m.H_euler != static_cast<std::int64_t>(m.H_faces))
            throw InvariantViolation("seed " + std::to_string(seed) + " n=" + std::to_string(n) +
                                     ": Euler holes " + std::to_string(m.H_euler) + " != faces " +
                                     std::to_string(m.H_faces));
        rec.checkpoints.push_back({n, m.V, m.E, m.H_faces, m.perimeter.outer.to_double(),
                                   m.perimeter.total_boundary.to_double(), state.free_edge_count()});
    }
    return rec;
}

std::vector<RunRecord> run_batch(std::size_t n_max, std::size_t runs, std::uint64_t base_seed,
                                 std::vector<std::size_t> schedule, unsigned workers) {
    if (schedule.empty()) schedule = default_schedule(n_max);
    std::sort(schedule.begin(), schedule.end());
    schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());
    if (!schedule.empty() && schedule.front() == 0) throw std::invalid_argument("checkpoint n must be >= 1");

    std::vector<RunRecord> out(runs);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(runs, 1)));

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            for (std::size_t i = next++; i < runs; i = next++) out[i] = run_single(base_seed + i, schedule);
        } catch (...) {
            errors[w] = std::current_exception();
            next = runs;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InsufficientData("line fit needs at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw InsufficientData("line fit needs two distinct x values");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        sse += r * r;
    }
    f.r2 = syy == 0 ? 1.0 : 1.0 - sse / syy;
    f.slope_se = x.size() > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
    return f;
}

std::vector<SummaryRow> ratio_table(std::span<const RunRecord> records) {
    if (records.empty()) throw InsufficientData("no runs");
    const auto& ref = records.front().checkpoints;
    for (const RunRecord& r : records) {
        if (r.checkpoints.size() != ref.size())
            throw std::invalid_argument("runs use different checkpoint schedules");
        for (std::size_t i = 0; i < ref.size(); ++i)
            if (r.checkpoints[i].n != ref[i].n) throw std::invalid_argument("runs use different checkpoint schedules");
    }
    std::vector<SummaryRow> rows;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        std::vector<double> v, e, h;
        for (const RunRecord& r : records) {
            const Checkpoint& c = r.checkpoints[i];
            const double n = static_cast<double>(c.n);
            v.push_back(static_cast<double>(c.V) / n);
            e.push_back(static_cast<double>(c.E) / n);
            h.push_back(static_cast<double>(c.H) / n);
        }
        rows.push_back({ref[i].n, ratio_stats(v), ratio_stats(e), ratio_stats(h)});
    }
    return rows;
}

BatchSummary estimate_limits(std::span<const RunRecord> records, std::size_t tail_from) {
    BatchSummary s;
    s.rows = ratio_table(records);
    if (s.rows.size() < 2) throw InsufficientData("need at least two checkpoints");
    const auto& ref = records.front().checkpoints;
    s.runs = records.size();
    s.tail_from = tail_from;

    const std::size_t first = ref.size() / 2;
    std::vector<LineFit> fv, fe, fh, fp;
    for (const RunRecord& r : records) {
        std::vector<double> n, v, e, h, p;
        for (std::size_t i = first; i < ref.size(); ++i) {
            const Checkpoint& c = r.checkpoints[i];
            n.push_back(static_cast<double>(c.n));
            v.push_back(static_cast<double>(c.V));
            e.push_back(static_cast<double>(c.E));
            h.push_back(static_cast<double>(c.H));
            p.push_back(c.outer_perimeter);
        }
        fv.push_back(fit_line(n, v));
        fe.push_back(fit_line(n, e));
        fh.push_back(fit_line(n, h));
        fp.push_back(fit_line(n, p));
    }
    s.slope_V = mean_slope(fv);
    s.slope_E = mean_slope(fe);
    s.slope_H = mean_slope(fh);
    s.slope_outer_perimeter = mean_slope(fp);

    std::vector<double> n, h, p;
    for (const RunRecord& r : records)
        for (const Checkpoint& c : r.checkpoints) {
            if (c.n < tail_from) continue;
            n.push_back(static_cast<double>(c.n));
            h.push_back(static_cast<double>(c.H));
            p.push_back(c.outer_perimeter);
        }
    const bool distinct = std::adjacent_find(n.begin(), n.end(), std::not_equal_to<>()) != n.end();
    if (distinct) {
        s.r2_H = fit_line(n, h).r2;
        s.r2_outer_perimeter = fit_line(n, p).r2;
    } else {
        s.r2_H = s.r2_outer_perimeter = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

void write_csv(std::span<const RunRecord> records, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "seed,n,V,E,H,outer_perimeter,total_boundary,free_edges\n";
    for (const RunRecord& r : records)
        for (const Checkpoint& c : r.checkpoints)
            out << r.seed << ',' << c.n << ',' << c.V << ',' << c.E << ',' << c.H << ',' << fmt12(c.outer_perimeter)
                << ',' << fmt12(c.total_boundary) << ',' << c.free_edges << '\n';
    finish(out, path);
}

void write_csv(std::span<const SummaryRow> rows, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "n,mean_V_over_n,se_V,mean_E_over_n,se_E,mean_H_over_n,se_H\n";
    for (const SummaryRow& r : rows)
        out << r.n << ',' << fmt12(r.V.mean) << ',' << fmt12(r.V.se) << ',' << fmt12(r.E.mean) << ','
            << fmt12(r.E.se) << ',' << fmt12(r.H.mean) << ',' << fmt12(r.H.se) << '\n';
    finish(out, path);
}

std::vector<RunRecord> read_records_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "seed,n,V,E,H,outer_perimeter,total_boundary,free_edges")
        throw MalformedFile(path.string() + ": unexpected header");
    std::vector<RunRecord> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string f[8];
        for (int i = 0; i < 8; ++i)
            if (!std::getline(ls, f[i], ',')) throw MalformedFile(path.string() + ":" + std::to_string(lineno));
        try {
            const std::uint64_t seed = std::stoull(f[0]);
            Checkpoint c{std::stoull(f[1]), std::stoull(f[2]), std::stoull(f[3]), std::stoull(f[4]),
                         std::stod(f[5]),   std::stod(f[6]),   std::stoull(f[7])};
            if (out.empty() || out.back().seed != seed) out.push_back({seed, {}});
            out.back().checkpoints.push_back(c);
        } catch (const std::logic_error&) {
            throw MalformedFile(path.string() + ":" + std::to_string(lineno) + ": bad number");
        }
    }
    return out;
}

}  // namespace pentagrow
