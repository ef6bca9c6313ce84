#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jcengine/cli.hpp"
#include "jcengine/cycle_simulator.hpp"
#include "jcengine/energy_accounting.hpp"
#include "jcengine/errors.hpp"
#include "jcengine/evolution_oracle.hpp"
#include "jcengine/pulse_smatrix.hpp"

namespace py = pybind11;
using namespace jcengine;

namespace {

Phase parse_phase(const std::string& name) {
    if (name == "1") return Phase::cold_contact;
    if (name == "2a") return Phase::pulse_a;
    if (name == "2b") return Phase::pulse_b;
    if (name == "3") return Phase::warm_contact;
    throw std::invalid_argument("phase must be one of 1, 2a, 2b, 3");
}

// Table as (columns, rows) with "name [unit]" column labels.
py::dict table_dict(const cli::CommandResult& r) {
    py::list columns, rows;
    for (const auto& c : r.table.columns) columns.append(c.name + " [" + c.unit + "]");
    for (const auto& row : r.table.rows) {
        py::list out;
        for (const auto& cell : row) std::visit([&](const auto& v) { out.append(v); }, cell);
        rows.append(out);
    }
    py::dict d;
    d["command"] = r.table.command;
    d["columns"] = columns;
    d["rows"] = rows;
    d["exit_code"] = r.exit_code;
    d["message"] = r.message;
    return d;
}

cli::RunConfig config_from(const py::kwargs& kwargs) {
    cli::RunConfig c;
    for (const auto& [key, value] : kwargs) cli::apply_setting(c, py::str(key), py::str(value));
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Three-level engine between two oscillators: S-matrices, transfer and work operators, cycle simulation";

    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
    py::register_exception<InvarianceError>(m, "InvarianceError", PyExc_RuntimeError);
    py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<PulseMode>(m, "PulseMode")
        .value("finite", PulseMode::finite)
        .value("strong_limit", PulseMode::strong_limit);

    py::class_<CycleParams>(m, "CycleParams")
        .def(py::init<>())
        .def_readwrite("omega1", &CycleParams::omega1)
        .def_readwrite("omega3", &CycleParams::omega3)
        .def_readwrite("mu", &CycleParams::mu)
        .def_readwrite("delta", &CycleParams::delta)
        .def_readwrite("kappa12", &CycleParams::kappa12)
        .def_readwrite("kappa23", &CycleParams::kappa23)
        .def_readwrite("tau1", &CycleParams::tau1)
        .def_readwrite("tau3", &CycleParams::tau3)
        .def_readwrite("eps_a", &CycleParams::eps_a)
        .def_readwrite("eps_b", &CycleParams::eps_b)
        .def_readwrite("tau_a", &CycleParams::tau_a)
        .def_readwrite("tau_b", &CycleParams::tau_b)
        .def_readwrite("pulse_mode", &CycleParams::pulse_mode)
        .def("validate", &CycleParams::validate)
        .def("__repr__", [](const CycleParams& p) {
            return "CycleParams(omega1=" + std::to_string(p.omega1) + ", omega3=" + std::to_string(p.omega3) +
                   ", mu=" + std::to_string(p.mu) + ", delta=" + std::to_string(p.delta) + ", pulse_mode=" + to_string(p.pulse_mode) + ")";
        });

    // Basis ordering of every product-space matrix: index = (m * 3 + level) * (bound + 1) + k.
    m.def("basis_index", [](int bound, int m_, int level, int k) {
        return ProductSpace::for_quanta_bound(bound).index({m_, static_cast<EngineLevel>(level), k});
    }, py::arg("bound"), py::arg("cold"), py::arg("level"), py::arg("warm"));

    m.def("s1", [](const CycleParams& p, int n_max) { return s1(p, FockCutoff(n_max)).matrix(); }, py::arg("params"), py::arg("n_max"));
    m.def("s3", [](const CycleParams& p, int n_max) { return s3(p, FockCutoff(n_max)).matrix(); }, py::arg("params"), py::arg("n_max"));
    m.def("s2a", [](const CycleParams& p) { return s2a(p).matrix(); });
    m.def("s2b", [](const CycleParams& p) { return s2b(p).matrix(); });
    m.def("s2", [](const CycleParams& p) { return s2(p).matrix(); });
    m.def("s4", [](const CycleParams& p) { return s4(p).matrix(); });

    m.def("oracle_smatrix", [](const std::string& phase, const CycleParams& p, int bound) {
        const Phase ph = parse_phase(phase);
        return oracle_smatrix(PhaseSpec::of(ph, p), p, ProductSpace::for_quanta_bound(bound)).matrix();
    }, py::arg("phase"), py::arg("params"), py::arg("bound"));

    m.def("compose_cycle", [](const CycleParams& p, int bound) {
        const ComposedCycle c = compose_cycle(p, bound);
        return py::make_tuple(c.s.matrix(), c.two_path_deviation);
    }, py::arg("params"), py::arg("bound"), "S = S4 S3 S2 S1 and the product vs closed-form deviation.");

    m.def("transfer_operator", [](const CycleParams& p, int bound) { return transfer_operator(p, bound).d.matrix(); },
          py::arg("params"), py::arg("bound"));
    m.def("transfer_spectrum", [](int n, const CycleParams& p) {
        const auto e = transfer_spectrum(n, p);
        py::dict d;
        d["rho_plus"] = e.rho_plus;
        d["rho_minus"] = e.rho_minus;
        d["eigenvector_plus"] = Eigen::Vector2cd(e.eigenvector(1));
        d["eigenvector_minus"] = Eigen::Vector2cd(e.eigenvector(-1));
        return d;
    }, py::arg("n"), py::arg("params"));
    m.def("pulse_work_spectrum", [](int n, const CycleParams& p) {
        const auto w = pulse_work_spectrum(n, p);
        return py::make_tuple(w.scale * w.plus, w.scale * w.minus);
    }, py::arg("n"), py::arg("params"));

    m.def("diagonal_identities", [](const CycleParams& p, int n_max) {
        py::dict d;
        for (const auto& id : diagonal_identities(p, n_max)) d[py::str(id.name)] = id.deviation;
        return d;
    }, py::arg("params"), py::arg("n_max") = 20);

    m.def("flow_table", [](const CycleParams& p) {
        py::list rows;
        for (const auto& f : classify_flows(p)) rows.append(py::make_tuple(f.term, f.cold_arrow(), f.warm_arrow()));
        return rows;
    }, py::arg("params") = CycleParams{});
    m.def("flow_table_reference", [] {
        py::list rows;
        for (const auto& f : flow_table_reference()) rows.append(py::make_tuple(f.term, f.cold_arrow(), f.warm_arrow()));
        return rows;
    });

    m.def("simulate", [](const CycleParams& p, int bound, long long cycles, const std::string& initial) {
        SimulationConfig cfg{p, bound, cycles, parse_initial_state(initial), CycleOrder::cold_first};
        py::list out;
        for (const auto& r : run(cfg)) {
            py::dict d;
            d["cycle"] = r.cycle;
            d["cold_energy"] = r.cold_energy;
            d["warm_energy"] = r.warm_energy;
            d["p_g"] = r.p_g;
            d["p_e"] = r.p_e;
            d["p_f"] = r.p_f;
            d["total_quanta"] = r.total_quanta;
            d["entropy_cold"] = r.entropy_cold;
            d["entropy_engine"] = r.entropy_engine;
            d["entropy_warm"] = r.entropy_warm;
            d["return_amplitude"] = r.return_amplitude;
            d["norm"] = r.norm;
            out.append(d);
        }
        return out;
    }, py::arg("params"), py::arg("bound") = 4, py::arg("cycles") = 10, py::arg("initial") = "product:0,g,0");

    // Same commands as the CLI; settings are passed as keyword strings (omega1="2.5", quanta_bound="6").
    m.def("verify", [](const py::kwargs& kw) { return table_dict(cli::cmd_verify(config_from(kw))); });
    m.def("spectrum", [](const py::kwargs& kw) { return table_dict(cli::cmd_spectrum(config_from(kw))); });
    m.def("table1", [](const py::kwargs& kw) { return table_dict(cli::cmd_table1(config_from(kw))); });
}
