#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "genprio/baselines.hpp"
#include "genprio/bench.hpp"
#include "genprio/config.hpp"
#include "genprio/error.hpp"
#include "genprio/gpwd.hpp"
#include "genprio/ingest.hpp"
#include "genprio/scenario.hpp"
#include "genprio/uss.hpp"

namespace py = pybind11;
using namespace genprio;

namespace {

const std::vector<RestorationStage>& csz_stages() {
    static const std::vector<RestorationStage> stages = default_csz_stages();
    return stages;
}

py::dict counts(const GridCase& c) {
    const auto n = count_structure(c);
    py::dict d;
    d["buses"] = n.buses;
    d["branches"] = n.branches;
    d["generators"] = n.generators;
    d["conventional"] = n.conventional;
    d["renewable"] = n.renewable;
    d["sync_conds"] = n.sync_conds;
    d["storage"] = n.storage;
    d["loads"] = n.loads;
    return d;
}

py::dict ranking_row(const GpwdBreakdown& b) {
    py::dict d;
    d["unit"] = b.unit_id;
    d["area"] = b.area;
    d["pgmax"] = b.pgmax;
    d["eligible"] = b.eligible;
    d["ps"] = b.ps;
    d["apf_p"] = b.apf_p;
    d["apf_q"] = b.apf_q;
    d["mp"] = b.mp;
    d["ratio_term"] = b.ratio_term;
    d["gpwd"] = b.gpwd;
    return d;
}

py::list ranking_rows(const std::vector<GpwdBreakdown>& r) {
    py::list out;
    for (const auto& b : r) out.append(ranking_row(b));
    return out;
}

}  // namespace

PYBIND11_MODULE(_genprio, m) {
    m.doc() = "Generator prioritization and unit scheduling for grid restoration";

    static py::exception<DataError> data_error(m, "DataError", PyExc_ValueError);
    static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
    static py::exception<SolverError> solver_error(m, "SolverError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DataError& e) {
            PyErr_SetString(data_error.ptr(), e.what());
        } catch (const ConfigError& e) {
            PyErr_SetString(config_error.ptr(), e.what());
        } catch (const SolverError& e) {
            PyErr_SetString(solver_error.ptr(), e.what());
        }
    });

    py::class_<GridCase>(m, "Case")
        .def_property_readonly("counts", &counts)
        .def("to_json", &case_to_json)
        .def_static("from_json", &case_from_json)
        .def("validate", &GridCase::validate)
        .def("unit_ids", [](const GridCase& c) {
            std::vector<std::string> ids;
            for (const auto& g : c.generators) ids.push_back(g.id);
            return ids;
        })
        .def("bus_in_service", [](const GridCase& c, int id) { return c.bus(id).in_service; })
        .def("bus_area", [](const GridCase& c, int id) { return c.bus(id).area; })
        .def("bus_ids", [](const GridCase& c) {
            std::vector<int> ids;
            for (const auto& b : c.buses) ids.push_back(b.id);
            return ids;
        });

    py::class_<TimeseriesSet>(m, "Timeseries")
        .def_readonly("first_period", &TimeseriesSet::first_period)
        .def_readonly("period_count", &TimeseriesSet::period_count)
        .def_property_readonly("last_period", &TimeseriesSet::last_period)
        .def("area_load", &TimeseriesSet::area_load, py::arg("period"), py::arg("area"));

    py::class_<Schedule>(m, "Schedule")
        .def_readonly("period", &Schedule::period)
        .def_property_readonly("method", [](const Schedule& s) { return std::string(to_string(s.method)); })
        .def_readonly("feasible", &Schedule::feasible)
        .def_readonly("elapsed", &Schedule::elapsed)
        .def_readonly("step_reached", &Schedule::step_reached)
        .def_readonly("unit_status", &Schedule::unit_status)
        .def_property_readonly("setpoints",
                               [](const Schedule& s) {
                                   std::map<std::string, std::pair<double, double>> out;
                                   for (const auto& [id, sp] : s.setpoints) out[id] = {sp.pg, sp.qg};
                                   return out;
                               })
        .def("enabled_conventional",
             [](const Schedule& s, const GridCase& c) { return s.enabled_count(c, GenType::conventional); });

    m.def("load_case", [](const std::filesystem::path& dir) { return load_case(dir); }, py::arg("path"));
    m.def(
        "load_timeseries",
        [](const std::filesystem::path& dir, const GridCase& c) { return load_timeseries(dir, c); },
        py::arg("path"), py::arg("case"));
    m.def(
        "build_period_case",
        [](const GridCase& base, const TimeseriesSet& ts, int period, bool staged) {
            ScenarioOptions o;
            if (staged) o.stages = &csz_stages();
            return build_period_case(base, ts, period, o);
        },
        py::arg("base"), py::arg("timeseries"), py::arg("period"), py::arg("staged") = false);

    m.def("parse_period", &parse_period);
    m.def("format_period", &format_period);
    m.def("period_index", &period_index, py::arg("month"), py::arg("day"), py::arg("hour"), py::arg("year") = 2020);

    m.def(
        "rank_units",
        [](const GridCase& c, const Schedule* prev) { return ranking_rows(rank_units(c, prev)); },
        py::arg("case"), py::arg("previous") = nullptr);
    m.def(
        "run_uss", [](const GridCase& c, int period, const Schedule* prev) { return run_uss(c, period, prev).schedule; },
        py::arg("case"), py::arg("period"), py::arg("previous") = nullptr);
    m.def(
        "run_mng", [](const GridCase& c, int period, const Schedule* prev) { return run_mng(c, period, prev).schedule; },
        py::arg("case"), py::arg("period"), py::arg("previous") = nullptr);
    m.def(
        "run_milp_uc",
        [](const GridCase& c, int period, const Schedule* prev) { return run_milp_uc(c, period, prev).schedule; },
        py::arg("case"), py::arg("period"), py::arg("previous") = nullptr);

    m.def(
        "run_window",
        [](const GridCase& base, const TimeseriesSet& ts, const std::string& methods, int first, int last,
           bool staged) {
            BenchOptions o;
            if (staged) o.scenario.stages = &csz_stages();
            const auto report = run_window(base, ts, parse_methods(methods), first, last, o);
            std::ostringstream out;
            emit_report(out, report, ReportFormat::json);
            return out.str();
        },
        py::arg("base"), py::arg("timeseries"), py::arg("methods"), py::arg("first"), py::arg("last"),
        py::arg("staged") = false, "Runs the methods over [first, last] and returns the JSON report.");
}
