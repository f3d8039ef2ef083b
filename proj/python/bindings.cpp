// Python bindings: thin wrappers over the core library. Spectra cross the
// boundary as plain lists of energies.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhe/cycle.hpp"
#include "qhe/dark_state.hpp"
#include "qhe/errors.hpp"
#include "qhe/scan.hpp"
#include "qhe/thermo.hpp"
#include "qhe/three_level.hpp"

namespace py = pybind11;
using namespace qhe;

namespace {

py::dict report_dict(const CycleReport& r) {
    py::dict d;
    d["net_work"] = r.net_work;
    d["heat_in"] = r.heat_in;
    d["heat_out"] = r.heat_out;
    d["efficiency"] = r.efficiency ? py::cast(*r.efficiency) : py::none();
    d["pwc"] = r.pwc;
    d["entropy_hot"] = r.entropy_hot;
    d["entropy_cold"] = r.entropy_cold;
    return d;
}

OttoCycle make_cycle(std::vector<double> hot, std::vector<double> cold, double t_hot, double t_cold) {
    return OttoCycle(LevelSpectrum(std::move(hot)), LevelSpectrum(std::move(cold)), t_hot, t_cold);
}

}  // namespace

PYBIND11_MODULE(_qhe, m) {
    m.doc() = "Multi-level quantum Otto engines: work, heat and positive-work analysis";

    auto error = py::register_exception<Error>(m, "QheError", PyExc_ValueError);
    (void)error;

    m.def("gibbs_populations",
          [](std::vector<double> energies, double t) {
              return gibbs_populations(LevelSpectrum(std::move(energies)), t).populations;
          },
          py::arg("energies"), py::arg("temperature"));
    m.def("entropy", [](std::vector<double> p) { return entropy(p); }, py::arg("populations"));

    m.def("net_work",
          [](std::vector<double> hot, std::vector<double> cold, double th, double tl) {
              return net_work(make_cycle(std::move(hot), std::move(cold), th, tl));
          },
          py::arg("hot"), py::arg("cold"), py::arg("t_hot"), py::arg("t_cold"));
    m.def("cycle_report",
          [](std::vector<double> hot, std::vector<double> cold, double th, double tl) {
              return report_dict(cycle_report(make_cycle(std::move(hot), std::move(cold), th, tl)));
          },
          py::arg("hot"), py::arg("cold"), py::arg("t_hot"), py::arg("t_cold"));
    m.def("critical_hot_temperature",
          [](std::vector<double> hot, std::vector<double> cold, double tl) -> py::object {
              const auto r = critical_hot_temperature(LevelSpectrum(std::move(hot)), LevelSpectrum(std::move(cold)), tl);
              if (!r.found()) return py::none();
              return py::cast(r.t_hot);
          },
          py::arg("hot"), py::arg("cold"), py::arg("t_cold"),
          "Hot temperature where net work vanishes, or None if there is no single root.");

    py::class_<SpacingEndpoints>(m, "SpacingEndpoints")
        .def(py::init<double, double, double, double>(), py::arg("d1h"), py::arg("d2h"), py::arg("d1l"),
             py::arg("d2l"))
        .def_property_readonly("d1h", &SpacingEndpoints::d1h)
        .def_property_readonly("d2h", &SpacingEndpoints::d2h)
        .def_property_readonly("d1l", &SpacingEndpoints::d1l)
        .def_property_readonly("d2l", &SpacingEndpoints::d2l)
        .def("__repr__", [](const SpacingEndpoints& e) {
            return "SpacingEndpoints(" + scan::format_number(e.d1h()) + ", " + scan::format_number(e.d2h()) + ", " +
                   scan::format_number(e.d1l()) + ", " + scan::format_number(e.d2l()) + ")";
        });

    m.def("classify_case", [](const SpacingEndpoints& e) { return std::string(to_string(classify_case(e))); });
    m.def("shape_params", [](const SpacingEndpoints& e) {
        const ShapeParams s = shape_params(e);
        return py::make_tuple(s.xi, s.eta, s.lam);
    });
    m.def("theta", &theta);
    m.def("closed_form_work", &closed_form_work, py::arg("endpoints"), py::arg("t_hot"), py::arg("t_cold"));
    m.def("kappa_high_t", &kappa_high_t);
    m.def("solution_region", [](const SpacingEndpoints& e) {
        return std::string(to_string(solution_region(ratio_coords(e))));
    });
    m.def("looseness_verdict", [](const SpacingEndpoints& e) {
        const LoosenessVerdict v = looseness_verdict(e);
        py::dict d;
        d["kappa_high_t"] = v.kappa_high_t;
        d["two_level_full"] = v.two_level_full;
        d["two_level_sub"] = v.two_level_sub;
        d["looser"] = v.looser;
        return d;
    });

    m.def("dark_state_spectrum",
          [](double delta, double omega) {
              const DarkStateSpectrum s = spectrum_closed_form(DarkStateParams(delta, omega));
              return py::make_tuple(s.e_minus, s.e_zero, s.e_plus);
          },
          py::arg("delta"), py::arg("omega"));
    m.def("dark_state_endpoints",
          [](double dh, double oh, double dl, double ol) {
              return to_endpoints(DarkStateParams(dh, oh), DarkStateParams(dl, ol));
          },
          py::arg("delta_h"), py::arg("omega_h"), py::arg("delta_l"), py::arg("omega_l"));

    m.def("run",
          [](const std::string& command, const std::string& config_json, std::optional<std::string> format) {
              const auto c = scan::parse_command(command);
              if (!c) throw Error(Errc::ConfigError, "unknown command: " + command);
              scan::RunOptions opts;
              if (format) {
                  if (*format == "csv") opts.format = scan::OutputFormat::Csv;
                  else if (*format == "json") opts.format = scan::OutputFormat::Json;
                  else throw Error(Errc::ConfigError, "format must be csv or json");
              }
              const auto cfg = scan::resolve_config(scan::Json::parse(config_json), opts);
              py::gil_scoped_release release;
              return scan::run(*c, cfg);
          },
          py::arg("command"), py::arg("config_json"), py::arg("format") = py::none(),
          "Run a sweep command on a JSON config string; returns the serialized output.");
}
