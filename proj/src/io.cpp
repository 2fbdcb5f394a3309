#include "exnet/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "exnet/error.hpp"

namespace exnet {

DirectedGraph graph_from_json(const json& j) {
    try {
        const auto n = j.at("n").get<long long>();
        if (n < 1) throw Error(ErrorKind::ParseError, "graph needs n >= 1");
        DirectedGraph g(static_cast<std::size_t>(n));
        for (const auto& e : j.value("edges", json::array())) {
            if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::ParseError, "edges must be [i, j] pairs");
            const auto a = e[0].get<long long>(), b = e[1].get<long long>();
            if (a < 1 || a > n || b < 1 || b > n)
                throw Error(ErrorKind::ParseError,
                            "edge [" + std::to_string(a) + "," + std::to_string(b) + "] outside 1.." + std::to_string(n));
            g.set_edge(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
        }
        return g;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

json graph_to_json(const DirectedGraph& g) {
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back({e.from + 1, e.to + 1});
    return {{"n", g.size()}, {"edges", edges}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
}

DirectedGraph load_graph(const std::filesystem::path& path) { return graph_from_json(read_json_file(path)); }

namespace {

json one_based(const std::vector<Vertex>& vs) {
    json out = json::array();
    for (const auto v : vs) out.push_back(v + 1);
    return out;
}

}  // namespace

json to_json(const ConstraintReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"kind", std::string(to_string(v.kind))}, {"vertices", one_based(v.vertices)}});
    return {{"valid", r.valid()}, {"violations", violations}};
}

json to_json(const CompiledNetwork& net) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < net.weights.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < net.weights.cols(); ++j) row.push_back(net.weights(i, j));
        rows.push_back(row);
    }
    return {{"n", net.size()},
            {"activation", std::string(to_string(net.activation))},
            {"epsilon", net.activation_params.epsilon},
            {"theta", net.activation_params.theta},
            {"weights", rows}};
}

json to_json(const Equilibrium& eq) {
    json state = json::array(), eigs = json::array();
    for (Eigen::Index i = 0; i < eq.state.size(); ++i) state.push_back(eq.state[i]);
    for (const auto& e : eq.eigenvalues) eigs.push_back({e.real(), e.imag()});
    json out{{"state", state},
             {"residual", eq.residual_norm},
             {"eigenvalues", eigs},
             {"stability", std::string(to_string(eq.stability))},
             {"converged", eq.converged},
             {"iterations", eq.iterations}};
    out["vertex"] = eq.vertex_label ? json(*eq.vertex_label + 1) : json(nullptr);
    return out;
}

json to_json(const ConnectionResult& r) {
    json out{{"from", r.from + 1},
             {"to", r.to_intended + 1},
             {"outcome", std::string(to_string(r.outcome))},
             {"transit_time", r.transit_time},
             {"final_distance", r.final_distance}};
    out["reached"] = r.reached ? json(*r.reached + 1) : json(nullptr);
    return out;
}

json to_json(const RealizationReport& r) {
    json pairs = json::array();
    for (Vertex k = 0; k < r.n; ++k)
        for (Vertex l = 0; l < r.n; ++l) {
            if (k == l) continue;
            const auto& pv = r.at(k, l);
            json p = to_json(pv.result);
            p["edge"] = pv.is_edge;
            p["ok"] = pv.ok;
            p["probes"] = pv.probes;
            p["probes_returned"] = pv.probes_returned;
            p["probes_reached_target"] = pv.probes_reached_target;
            pairs.push_back(p);
        }
    json eqs = json::array();
    for (const auto& e : r.equilibria) eqs.push_back(to_json(e));
    return {{"verdict", r.verdict}, {"n", r.n}, {"failures", r.failures}, {"pairs", pairs}, {"equilibria", eqs}};
}

json to_json(const FoldResult& f) {
    return {{"kind", f.kind},
            {"parameter_value", f.parameter_value},
            {"bracket_width", f.bracket_width},
            {"method", std::string(to_string(f.method))}};
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const std::string& prefix) {
    os << 't';
    for (std::size_t c = 0; c < traj.dim(); ++c) os << ',' << prefix << c + 1;
    os << '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        os << format_double(traj.time(i));
        for (std::size_t c = 0; c < traj.dim(); ++c) os << ',' << format_double(traj.value(i, c));
        os << '\n';
    }
}

void write_symbols_csv(std::ostream& os, const SymbolSequence& seq) {
    os << "t_enter,active_set,duration\n";
    for (const auto& e : seq.events) {
        // Braces keep the comma-separated set in one quoted field.
        os << format_double(e.enter_time) << ",\"" << format_active_set(e.active) << "\","
           << format_double(e.duration) << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const SweepGrid& grid) {
    os << "w_t,w_p,ratio,n_p3,n_p4,n_p34,seed\n";
    for (const auto& c : grid.cells) {
        os << format_double(c.w_t) << ',' << format_double(c.w_p) << ','
           << (c.ratio ? format_double(*c.ratio) : std::string()) << ',' << c.n_p3 << ',' << c.n_p4 << ','
           << c.n_p34 << ',' << c.seed << '\n';
    }
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
    os << "param,value,verdict,aux\n";
    for (const auto& r : rows)
        os << r.param << ',' << format_double(r.value) << ',' << (r.verdict ? 1 : 0) << ',' << format_double(r.aux)
           << '\n';
}

void write_raster_csv(std::ostream& os, const Trajectory& traj, ActivationKind kind, const ActivationParams& p) {
    os << 't';
    for (std::size_t c = 0; c < traj.dim(); ++c) os << ",phi" << c + 1;
    os << '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        os << format_double(traj.time(i));
        for (std::size_t c = 0; c < traj.dim(); ++c) os << ',' << format_double(phi(kind, p, traj.value(i, c)));
        os << '\n';
    }
}

void write_config_comment(std::ostream& os, const json& config) { os << "# config: " << config.dump() << '\n'; }

}  // namespace exnet
