#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include "pentagrow/errors.hpp"
#include "pentagrow/export.hpp"
#include "pentagrow/graph.hpp"
#include "pentagrow/holes.hpp"
#include "pentagrow/stats.hpp"
#include "verify.hpp"

namespace pentagrow::cli {

namespace {

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::filesystem::path summary_path_for(const std::filesystem::path& out) {
    std::filesystem::path p = out;
    p.replace_filename(out.stem().string() + "_summary" + out.extension().string());
    return p;
}

struct GrowArgs {
    std::size_t n = 1;
    std::uint64_t seed = 0;
    std::string out;
};

struct StatsArgs {
    std::size_t n_max = 10000;
    std::size_t runs = 20;
    std::uint64_t seed = 0;
    std::string out;
    std::string summary;
    unsigned workers = 0;
    std::vector<std::size_t> checkpoints;
};

struct HolesArgs {
    std::string in;
    std::string catalog;
    std::string out;
};

struct ExportArgs {
    std::string in;
    std::string svg;
    double scale = 10.0;
    bool holes_as_cut = false;
    bool no_tree = false;
    bool no_fills = false;
};

struct VerifyArgs {
    std::string in;
    bool deep = false;
};

int cmd_grow(const GrowArgs& a, std::ostream& out) {
    const GrowthState s = grow(a.n, a.seed);
    if (!a.out.empty()) save_structure(s, a.out);
    const StructureMetrics m = measure(s.pentagons());
    if (m.H_euler != static_cast<std::int64_t>(m.H_faces))
        throw InvariantViolation("Euler and face hole counts differ");
    out << "n=" << m.n << " V=" << m.V << " E=" << m.E << " H=" << m.H_faces
        << " outer_perimeter=" << g12(m.perimeter.outer.to_double())
        << " total_boundary=" << g12(m.perimeter.total_boundary.to_double())
        << " free_edges=" << s.free_edge_count() << " seed=" << a.seed << '\n';
    return kOk;
}

int cmd_stats(const StatsArgs& a, std::ostream& out) {
    const auto records = run_batch(a.n_max, a.runs, a.seed, a.checkpoints, a.workers);
    write_csv(records, a.out);
    const std::filesystem::path summary = a.summary.empty() ? summary_path_for(a.out) : std::filesystem::path(a.summary);
    const auto rows = ratio_table(records);
    write_csv(rows, summary);
    const SummaryRow& last = rows.back();
    out << "n=" << last.n << " runs=" << a.runs << " V_over_n=" << g12(last.V.mean) << " se_V=" << g12(last.V.se)
        << " E_over_n=" << g12(last.E.mean) << " se_E=" << g12(last.E.se) << " H_over_n=" << g12(last.H.mean)
        << " se_H=" << g12(last.H.se);
    if (rows.size() >= 2) {
        const BatchSummary s = estimate_limits(records);
        out << " slope_H=" << g12(s.slope_H.estimate) << " slope_outer_perimeter="
            << g12(s.slope_outer_perimeter.estimate);
    }
    out << " summary=" << summary.string() << '\n';
    return kOk;
}

int cmd_holes(const HolesArgs& a, std::ostream& out, std::ostream& err) {
    const GrowthState s = load_structure(a.in);
    Catalog catalog = !a.catalog.empty() && std::filesystem::exists(a.catalog) ? Catalog::load(a.catalog)
                                                                               : Catalog::seeded();
    const CensusResult c = census(s.pentagons(), catalog);
    if (!a.catalog.empty()) catalog.save(a.catalog);
    if (!a.out.empty()) {
        std::ofstream csv(a.out, std::ios::binary);
        if (!csv) throw IoError("cannot open " + a.out + " for writing");
        csv << "name,count\n";
        for (const auto& [name, count] : c.histogram) csv << name << ',' << count << '\n';
        csv.flush();
        if (!csv) throw IoError("write to " + a.out + " failed");
    }
    out << "holes=" << c.holes << " kinds=" << c.histogram.size() << " irregular=" << c.irregular
        << " discovered=" << c.discovered.size() << " angle_sum_violations=" << c.angle_sum_violations << '\n';
    if (c.angle_sum_violations != 0) {
        err << "error: " << c.angle_sum_violations << " holes break the angle sum\n";
        return kVerificationFailed;
    }
    return kOk;
}

int cmd_export(const ExportArgs& a, std::ostream& out) {
    const GrowthState s = load_structure(a.in);
    SvgOptions opt;
    opt.mm_per_side = a.scale;
    opt.holes_as_cut = a.holes_as_cut;
    opt.tree = !a.no_tree;
    opt.fills = !a.no_fills;
    write_svg(s.pentagons(), a.svg, opt);
    const StructureMetrics m = measure(s.pentagons());
    out << "n=" << s.size() << " svg=" << a.svg << " cut_length_mm="
        << g12(m.perimeter.outer.to_double() * a.scale) << '\n';
    return kOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const StructureDocument doc = read_structure(a.in);
    const VerifyReport rep = verify_document(doc, a.deep);
    for (const CheckResult& c : rep.checks) {
        const char* status = c.status == CheckResult::Status::Ok       ? "ok"
                             : c.status == CheckResult::Status::Failed ? "FAIL"
                                                                       : "skipped";
        out << "check=" << c.name << " status=" << status << '\n';
        for (const std::string& p : c.problems) out << "  " << p << '\n';
    }
    out << "n=" << doc.pentagons.size() << " verified=" << (rep.passed() ? "yes" : "no") << '\n';
    return rep.passed() ? kOk : kVerificationFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random growth of glued regular pentagons: simulate, measure, census holes, export."};
    app.name("pentagrow");
    app.require_subcommand(1);

    GrowArgs ga;
    auto* grow_cmd = app.add_subcommand("grow", "Grow one structure and print its summary line");
    grow_cmd->add_option("--n", ga.n, "Number of pentagons")->required()->check(CLI::PositiveNumber);
    grow_cmd->add_option("--seed", ga.seed, "Random seed")->capture_default_str();
    grow_cmd->add_option("--out", ga.out, "Structure file to write");

    StatsArgs sa;
    auto* stats_cmd = app.add_subcommand("stats", "Run a batch and write per-run and summary CSVs");
    stats_cmd->add_option("--n-max", sa.n_max, "Final size of every run")->required()->check(CLI::PositiveNumber);
    stats_cmd->add_option("--runs", sa.runs, "Number of runs")->capture_default_str()->check(CLI::PositiveNumber);
    stats_cmd->add_option("--seed", sa.seed, "Seed of the first run; run i uses seed + i")->capture_default_str();
    stats_cmd->add_option("--out", sa.out, "Per-run CSV")->required();
    stats_cmd->add_option("--summary", sa.summary, "Summary CSV (default: <out>_summary.csv)");
    stats_cmd->add_option("--workers", sa.workers, "Worker threads, 0 = hardware concurrency")->capture_default_str();
    stats_cmd->add_option("--checkpoints", sa.checkpoints, "Explicit checkpoint sizes (default: 10 20 50 100 ...)")
        ->check(CLI::PositiveNumber);

    HolesArgs ha;
    auto* holes_cmd = app.add_subcommand("holes", "Hole census of a structure file");
    holes_cmd->add_option("--in", ha.in, "Structure file")->required();
    holes_cmd->add_option("--catalog", ha.catalog, "Catalog file; read if present, updated with discovered shapes");
    holes_cmd->add_option("--out", ha.out, "Histogram CSV (name,count)");

    ExportArgs ea;
    auto* export_cmd = app.add_subcommand("export", "Layered SVG for laser cutting");
    export_cmd->add_option("--in", ea.in, "Structure file")->required();
    export_cmd->add_option("--svg", ea.svg, "SVG file to write")->required();
    export_cmd->add_option("--scale", ea.scale, "Millimetres per side length")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    export_cmd->add_flag("--holes-as-cut", ea.holes_as_cut, "Cut hole outlines instead of engraving them");
    export_cmd->add_flag("--no-tree", ea.no_tree, "Leave out the attachment tree");
    export_cmd->add_flag("--no-fills", ea.no_fills, "Leave out the stage-coloured fills");

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite on a structure file");
    verify_cmd->add_option("--in", va.in, "Structure file")->required();
    verify_cmd->add_flag("--deep", va.deep, "Also compare with the high-precision oracle (n <= 50)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*grow_cmd) return cmd_grow(ga, out);
        if (*stats_cmd) return cmd_stats(sa, out);
        if (*holes_cmd) return cmd_holes(ha, out, err);
        if (*export_cmd) return cmd_export(ea, out);
        if (*verify_cmd) return cmd_verify(va, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const MalformedFile& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const VersionMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    }
    return kUsage;
}

}  // namespace pentagrow::cli
