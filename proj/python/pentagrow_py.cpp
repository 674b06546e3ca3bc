#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pentagrow/errors.hpp"
#include "pentagrow/export.hpp"
#include "pentagrow/graph.hpp"
#include "pentagrow/holes.hpp"
#include "pentagrow/stats.hpp"

namespace py = pybind11;
using namespace pentagrow;

namespace {

py::dict metrics_dict(const GrowthState& s) {
    const StructureMetrics m = measure(s.pentagons());
    py::dict d;
    d["n"] = m.n;
    d["V"] = m.V;
    d["E"] = m.E;
    d["H"] = m.H_faces;
    d["H_euler"] = m.H_euler;
    d["outer_perimeter"] = m.perimeter.outer.to_double();
    d["total_boundary"] = m.perimeter.total_boundary.to_double();
    d["free_edges"] = s.free_edge_count();
    return d;
}

py::dict pentagon_dict(const Pentagon& p) {
    py::dict d;
    d["id"] = p.id;
    d["center"] = p.center.a;
    d["orientation"] = std::string(1, to_char(p.orientation));
    d["stage"] = p.stage;
    d["parent"] = p.parent ? py::object(py::int_(*p.parent)) : py::object(py::none());
    d["side"] = p.parent_side ? py::object(py::int_(*p.parent_side)) : py::object(py::none());
    const auto [x, y] = to_plane(p.center);
    d["xy"] = py::make_tuple(x, y);
    return d;
}

py::dict checkpoint_dict(const Checkpoint& c) {
    py::dict d;
    d["n"] = c.n;
    d["V"] = c.V;
    d["E"] = c.E;
    d["H"] = c.H;
    d["outer_perimeter"] = c.outer_perimeter;
    d["total_boundary"] = c.total_boundary;
    d["free_edges"] = c.free_edges;
    return d;
}

py::dict slope_dict(const SlopeEstimate& s) {
    py::dict d;
    d["estimate"] = s.estimate;
    d["ci_low"] = s.ci_low;
    d["ci_high"] = s.ci_high;
    return d;
}

}  // namespace

PYBIND11_MODULE(pentagrow, m) {
    m.doc() = "Random growth of glued regular pentagons with exact geometry.";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<MalformedFile>(m, "MalformedFile", error.ptr());
    py::register_exception<VersionMismatch>(m, "VersionMismatch", error.ptr());
    py::register_exception<InvariantViolation>(m, "InvariantViolation", error.ptr());
    py::register_exception<InsufficientData>(m, "InsufficientData", error.ptr());
    py::register_exception<IoError>(m, "IoError", error.ptr());

    py::class_<GrowthState>(m, "Structure")
        .def_static("seed", &GrowthState::seed_structure, py::arg("seed") = 0, "The single seed pentagon.")
        .def_property_readonly("seed_value", &GrowthState::seed)
        .def("__len__", &GrowthState::size)
        .def_property_readonly("free_edge_count", &GrowthState::free_edge_count)
        .def("attach", &GrowthState::attach, "One random growth step; returns the new id.")
        .def("attach_at", &GrowthState::attach_at, py::arg("owner"), py::arg("side"))
        .def("is_free", &GrowthState::is_free, py::arg("owner"), py::arg("side"))
        .def(
            "grow_to", [](GrowthState& s, std::size_t n) { grow_to(s, n); }, py::arg("n"))
        .def("pentagon", [](const GrowthState& s, PentagonId id) { return pentagon_dict(s.pentagon(id)); })
        .def("pentagons",
             [](const GrowthState& s) {
                 py::list out;
                 for (const Pentagon& p : s.pentagons()) out.append(pentagon_dict(p));
                 return out;
             })
        .def("metrics", &metrics_dict, "V, E, H, perimeters and free edges of the subdivision.")
        .def("census",
             [](const GrowthState& s) {
                 Catalog catalog = Catalog::seeded();
                 const CensusResult c = census(s.pentagons(), catalog);
                 py::dict d;
                 d["holes"] = c.holes;
                 d["histogram"] = c.histogram;
                 d["irregular"] = c.irregular;
                 d["angle_sum_violations"] = c.angle_sum_violations;
                 return d;
             })
        .def("serialize", [](const GrowthState& s) { return serialize_structure(s); })
        .def(
            "save", [](const GrowthState& s, const std::filesystem::path& p) { save_structure(s, p); },
            py::arg("path"))
        .def(
            "to_svg",
            [](const GrowthState& s, double mm_per_side, bool holes_as_cut, bool tree, bool fills) {
                SvgOptions o;
                o.mm_per_side = mm_per_side;
                o.holes_as_cut = holes_as_cut;
                o.tree = tree;
                o.fills = fills;
                return to_svg(s.pentagons(), o);
            },
            py::arg("mm_per_side") = 10.0, py::arg("holes_as_cut") = false, py::arg("tree") = true,
            py::arg("fills") = true);

    m.def("grow", &grow, py::arg("n"), py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>());
    m.def("load", &load_structure, py::arg("path"));
    m.def(
        "parse", [](const std::string& text) { return rebuild(parse_structure(text)); }, py::arg("text"));

    m.def(
        "run_batch",
        [](std::size_t n_max, std::size_t runs, std::uint64_t seed, std::vector<std::size_t> schedule,
           unsigned workers) {
            std::vector<RunRecord> records;
            {
                py::gil_scoped_release release;
                records = run_batch(n_max, runs, seed, std::move(schedule), workers);
            }
            py::list out;
            for (const RunRecord& r : records) {
                py::list cps;
                for (const Checkpoint& c : r.checkpoints) cps.append(checkpoint_dict(c));
                py::dict d;
                d["seed"] = r.seed;
                d["checkpoints"] = cps;
                out.append(d);
            }
            return out;
        },
        py::arg("n_max"), py::arg("runs") = 20, py::arg("seed") = 0, py::arg("schedule") = std::vector<std::size_t>{},
        py::arg("workers") = 0);

    m.def(
        "estimate_limits",
        [](std::size_t n_max, std::size_t runs, std::uint64_t seed, unsigned workers) {
            std::vector<RunRecord> records;
            {
                py::gil_scoped_release release;
                records = run_batch(n_max, runs, seed, {}, workers);
            }
            const BatchSummary s = estimate_limits(records);
            py::dict d;
            d["runs"] = s.runs;
            d["slope_V"] = slope_dict(s.slope_V);
            d["slope_E"] = slope_dict(s.slope_E);
            d["slope_H"] = slope_dict(s.slope_H);
            d["slope_outer_perimeter"] = slope_dict(s.slope_outer_perimeter);
            d["r2_H"] = s.r2_H;
            d["r2_outer_perimeter"] = s.r2_outer_perimeter;
            const SummaryRow& last = s.rows.back();
            d["V_over_n"] = last.V.mean;
            d["E_over_n"] = last.E.mean;
            d["H_over_n"] = last.H.mean;
            return d;
        },
        py::arg("n_max"), py::arg("runs") = 20, py::arg("seed") = 0, py::arg("workers") = 0);

    m.def("enumerate_angle_types", &enumerate_angle_types, py::arg("l"));
    m.def(
        "canonical_angle_type", [](const std::vector<int>& a) { return canonical_angle_type(a); }, py::arg("angles"));
    m.def(
        "verify_angle_sum", [](const std::vector<int>& a) { return verify_angle_sum(a); }, py::arg("angles"));
    m.def("basis_relations_hold", [] { return verify_center_basis_relations().passed(); });
}
