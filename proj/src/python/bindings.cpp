// Python bindings. Vertices are 0-based here as in the C++ API; the JSON
// helpers (graph_from_json, report dicts) keep the 1-based file convention.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "exnet/analysis.hpp"
#include "exnet/bifurcation.hpp"
#include "exnet/config.hpp"
#include "exnet/equilibria.hpp"
#include "exnet/excitability.hpp"
#include "exnet/io.hpp"

namespace py = pybind11;
using namespace exnet;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) {
    return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Matrix states(const Trajectory& t) {
    Matrix m(static_cast<Eigen::Index>(t.size()), static_cast<Eigen::Index>(t.dim()));
    for (std::size_t i = 0; i < t.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = t.state(i).transpose();
    return m;
}

py::list symbols_to_py(const SymbolSequence& s) {
    py::list out;
    for (const auto& e : s.events) out.append(py::make_tuple(e.enter_time, e.active, e.duration));
    return out;
}

ActivationKind kind_from(const std::string& s) { return activation_from_string(s); }

}  // namespace

PYBIND11_MODULE(_exnet, m) {
    m.doc() = "Excitable network attractors in continuous-time recurrent neural networks";

    static py::exception<Error> exc(m, "ExnetError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = exc;
            py::object inst = err(e.what());
            inst.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(err.ptr(), inst.ptr());
        }
    });

    py::class_<DirectedGraph>(m, "DirectedGraph")
        .def(py::init([](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
                 std::vector<Edge> es;
                 for (auto [a, b] : edges) es.push_back({a, b});
                 return DirectedGraph(n, es);
             }),
             py::arg("n"), py::arg("edges") = std::vector<std::pair<Vertex, Vertex>>{})
        .def_property_readonly("n", &DirectedGraph::size)
        .def("adjacent", &DirectedGraph::adjacent)
        .def("successors", &DirectedGraph::successors)
        .def("edges",
             [](const DirectedGraph& g) {
                 std::vector<std::pair<Vertex, Vertex>> out;
                 for (const auto& e : g.edges()) out.emplace_back(e.from, e.to);
                 return out;
             })
        .def("to_json", [](const DirectedGraph& g) { return to_py(graph_to_json(g)); })
        .def("__eq__", [](const DirectedGraph& a, const DirectedGraph& b) { return a == b; })
        .def("__repr__", [](const DirectedGraph& g) { return "DirectedGraph(" + graph_to_json(g).dump() + ")"; });

    m.def("graph_from_json", [](const py::object& o) { return graph_from_json(from_py(o)); });
    m.def(
        "validate_constraints",
        [](const DirectedGraph& g, bool no_sink) { return to_py(to_json(validate_constraints(g, no_sink))); },
        py::arg("graph"), py::arg("require_no_sink") = false);
    m.def(
        "random_constrained_graph",
        [](std::size_t n, double p, std::uint64_t seed, bool no_sink) {
            return random_constrained_graph(n, p, seed, no_sink);
        },
        py::arg("n"), py::arg("edge_prob"), py::arg("seed"), py::arg("require_no_sink") = false);

    py::class_<ActivationParams>(m, "ActivationParams")
        .def(py::init([](double eps, double theta) { return ActivationParams{eps, theta}; }), py::arg("epsilon") = 0.05,
             py::arg("theta") = 0.5)
        .def_readwrite("epsilon", &ActivationParams::epsilon)
        .def_readwrite("theta", &ActivationParams::theta);

    py::class_<WeightParams>(m, "WeightParams")
        .def(py::init([](double w_s, double w_m, double w_t, double w_p,
                         const std::map<std::pair<Vertex, Vertex>, double>& overrides) {
                 WeightParams wp{w_s, w_m, w_t, w_p, {}};
                 for (const auto& [e, v] : overrides) wp.w_p_overrides[Edge{e.first, e.second}] = v;
                 return wp;
             }),
             py::arg("w_s") = 1.0, py::arg("w_m") = -0.7, py::arg("w_t") = 0.0, py::arg("w_p") = 0.3,
             py::arg("w_p_overrides") = std::map<std::pair<Vertex, Vertex>, double>{})
        .def_readwrite("w_s", &WeightParams::w_s)
        .def_readwrite("w_m", &WeightParams::w_m)
        .def_readwrite("w_t", &WeightParams::w_t)
        .def_readwrite("w_p", &WeightParams::w_p);

    m.def("phi", [](const std::string& kind, const ActivationParams& p, double y) { return phi(kind_from(kind), p, y); });
    m.def("theorem_params", &theorem_params, py::arg("delta"));

    py::class_<CompiledNetwork>(m, "CompiledNetwork")
        .def_readonly("weights", &CompiledNetwork::weights)
        .def_readonly("graph", &CompiledNetwork::graph)
        .def_readonly("activation_params", &CompiledNetwork::activation_params)
        .def_property_readonly("activation",
                               [](const CompiledNetwork& n) { return std::string(to_string(n.activation)); })
        .def_property_readonly("n", &CompiledNetwork::size);

    m.def(
        "compile_weights",
        [](const DirectedGraph& g, const WeightParams& wp, const std::string& kind, const ActivationParams& ap) {
            return compile_weights(g, wp, kind_from(kind), ap);
        },
        py::arg("graph"), py::arg("weights") = WeightParams{}, py::arg("activation") = "smooth",
        py::arg("activation_params") = ActivationParams{});
    m.def(
        "smooth_network",
        [](const DirectedGraph& g, double w_p, double epsilon, double theta, double w_s, double w_m, double w_t) {
            return smooth_network(g, SmoothParams{epsilon, theta, w_s, w_m, w_t}, w_p);
        },
        py::arg("graph"), py::arg("w_p"), py::arg("epsilon") = 0.05, py::arg("theta") = 0.5, py::arg("w_s") = 1.0,
        py::arg("w_m") = -0.7, py::arg("w_t") = 0.0);
    m.def("kirk_silber_network", &kirk_silber_network, py::arg("w_p"), py::arg("delta_w"), py::arg("w_t"),
          py::arg("activation_params") = ActivationParams{}, py::arg("w_s") = 1.0, py::arg("w_m") = -0.5);
    m.def("kirk_silber_graph", &kirk_silber_graph);
    m.def("ten_node_graph", &ten_node_graph);
    m.def("network_from_config", [](const py::object& o) { return config_from_json(from_py(o)).compile(); },
          "Compile the network described by a run-config dict.");

    m.def(
        "predicted_equilibrium", [](const CompiledNetwork& n, Vertex k) { return predicted_equilibrium(n, k).components; },
        py::arg("net"), py::arg("k"));
    m.def("rest_state", [](const CompiledNetwork& n, Vertex k) { return rest_state(n, k); }, py::arg("net"),
          py::arg("k"));
    m.def("rhs_y", [](const CompiledNetwork& n, const Vector& y) { return rhs_y(n, y); });
    m.def("rhs_J", &rhs_J);
    m.def("jacobian", &jacobian);
    m.def("refine_all_templates", [](const CompiledNetwork& n) {
        py::list out;
        for (const auto& e : refine_all_templates(n)) out.append(to_py(to_json(e)));
        return out;
    });

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("times", [](const Trajectory& t) { return t.times(); })
        .def_property_readonly("states", &states)
        .def_property_readonly("dim", &Trajectory::dim)
        .def("__len__", &Trajectory::size);

    m.def(
        "integrate_ode",
        [](const CompiledNetwork& n, const Vector& y0, double t1, double dt, std::size_t stride) {
            return integrate_ode(n, y0, 0.0, t1, {}, {dt, stride});
        },
        py::arg("net"), py::arg("y0"), py::arg("t_end"), py::arg("dt") = 1e-3, py::arg("stride") = 1);
    m.def(
        "integrate_sde",
        [](const CompiledNetwork& n, const Vector& y0, double t1, double sigma, std::uint64_t seed, double dt,
           std::size_t stride) { return integrate_sde(n, y0, 0.0, t1, {sigma, seed}, {dt, stride}); },
        py::arg("net"), py::arg("y0"), py::arg("t_end"), py::arg("sigma"), py::arg("seed"), py::arg("dt") = 1e-3,
        py::arg("stride") = 1);
    m.def(
        "integrate_J",
        [](const CompiledNetwork& n, const Vector& j0, double t1, double dt, std::size_t stride) {
            return integrate_J(n, j0, 0.0, t1, {dt, stride});
        },
        py::arg("net"), py::arg("J0"), py::arg("t_end"), py::arg("dt") = 1e-3, py::arg("stride") = 1);

    m.def(
        "realize_graph_check",
        [](const CompiledNetwork& n, double delta) { return to_py(to_json(realize_graph_check(n, delta))); },
        py::arg("net"), py::arg("delta"));

    m.def("wp_sn_asymptotic", &wp_sn_asymptotic, py::arg("epsilon"), py::arg("theta"), py::arg("w_s"));
    m.def("wp_sn_nullcline", &wp_sn_nullcline, py::arg("epsilon"), py::arg("theta"), py::arg("w_s"));
    m.def(
        "find_fold_2node",
        [](double lo, double hi, double tol, double epsilon) {
            SmoothParams p;
            p.epsilon = epsilon;
            return find_fold_2node(p, lo, hi, tol).parameter_value;
        },
        py::arg("lo") = 0.29, py::arg("hi") = 0.32, py::arg("tol") = 1e-8, py::arg("epsilon") = 0.05);
    m.def(
        "snic_locate_3cycle",
        [](double lo, double hi, double tol) { return snic_locate_3cycle(SmoothParams{}, lo, hi, tol).parameter_value; },
        py::arg("lo") = 0.29, py::arg("hi") = 0.32, py::arg("tol") = 1e-8);
    m.def("sn_pair_positions", &sn_pair_positions, py::arg("epsilon"), py::arg("w_s"), py::arg("eta"));

    m.def(
        "extract_symbols",
        [](const Trajectory& t, const CompiledNetwork& n, double on, double off, double debounce) {
            return symbols_to_py(extract_symbols(t, n.activation, n.activation_params, {on, off, debounce}));
        },
        py::arg("traj"), py::arg("net"), py::arg("on_threshold") = 0.8, py::arg("off_threshold") = 0.2,
        py::arg("debounce") = SymbolOptions{}.debounce,
        "List of (enter_time, active cells, duration).");
    m.def(
        "classify_ks_route", [](const Trajectory& t, double theta) { return std::string(to_string(classify_ks_route(t, theta))); },
        py::arg("traj"), py::arg("theta") = 0.5);
    m.def(
        "ks_sweep",
        [](const py::dict& kw) {
            KsSweepSpec s;
            auto rd = [&](const char* key, auto& dst) {
                if (kw.contains(key)) dst = kw[key].cast<std::decay_t<decltype(dst)>>();
            };
            rd("w_t_min", s.w_t_min);
            rd("w_t_max", s.w_t_max);
            rd("w_t_steps", s.w_t_steps);
            rd("w_p_min", s.w_p_min);
            rd("w_p_max", s.w_p_max);
            rd("w_p_steps", s.w_p_steps);
            rd("delta_w", s.delta_w);
            rd("sigma", s.sigma);
            rd("reps", s.reps);
            rd("t_end", s.t_end);
            rd("base_seed", s.base_seed);
            rd("dt", s.dt);
            py::list rows;
            for (const auto& c : ks_sweep(s).cells) {
                py::dict r;
                r["w_t"] = c.w_t;
                r["w_p"] = c.w_p;
                r["ratio"] = c.ratio ? py::cast(*c.ratio) : py::none();
                r["n_p3"] = c.n_p3;
                r["n_p4"] = c.n_p4;
                r["n_p34"] = c.n_p34;
                r["seed"] = c.seed;
                rows.append(r);
            }
            return rows;
        },
        py::arg("spec") = py::dict(), "Kirk-Silber sweep; spec keys mirror the sweep options block.");
}
