#include "exnet/config.hpp"

#include "exnet/error.hpp"

namespace exnet {

namespace {

bool same_weights(const WeightParams& a, const WeightParams& b) {
    return a.w_s == b.w_s && a.w_m == b.w_m && a.w_t == b.w_t && a.w_p == b.w_p && a.w_p_overrides == b.w_p_overrides;
}

template <class T>
void read_if(const json& j, const char* key, T& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.graph == b.graph && a.graph_file == b.graph_file && a.random_graph == b.random_graph &&
           a.delta == b.delta && a.activation == b.activation &&
           a.activation_params.epsilon == b.activation_params.epsilon &&
           a.activation_params.theta == b.activation_params.theta && same_weights(a.weights, b.weights) &&
           a.dt == b.dt && a.T == b.T && a.sigma == b.sigma && a.seed == b.seed && a.stride == b.stride &&
           a.start_vertex == b.start_vertex && a.jcoords == b.jcoords && a.options == b.options;
}

CompiledNetwork RunConfig::compile() const { return compile_weights(graph, weights, activation, activation_params); }

json RunConfig::to_json() const {
    json overrides = json::array();
    for (const auto& [e, v] : weights.w_p_overrides) overrides.push_back({e.from + 1, e.to + 1, v});
    json j{{"graph", graph_to_json(graph)},
           {"activation", std::string(to_string(activation))},
           {"epsilon", activation_params.epsilon},
           {"theta", activation_params.theta},
           {"w_s", weights.w_s},
           {"w_m", weights.w_m},
           {"w_t", weights.w_t},
           {"w_p", weights.w_p},
           {"w_p_overrides", overrides},
           {"dt", dt},
           {"T", T},
           {"sigma", sigma},
           {"seed", seed},
           {"stride", stride},
           {"start", start_vertex + 1},
           {"jcoords", jcoords},
           {"options", options}};
    if (delta) j["delta"] = *delta;
    if (graph_file) j["graph_file"] = *graph_file;
    if (random_graph)
        j["random_graph"] = {{"n", random_graph->n},
                             {"p", random_graph->p},
                             {"seed", random_graph->seed},
                             {"no_sink", random_graph->no_sink}};
    return j;
}

RunConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
    RunConfig c;
    try {
        if (j.contains("random_graph")) {
            const auto& r = j.at("random_graph");
            RandomGraphSpec spec;
            read_if(r, "n", spec.n);
            read_if(r, "p", spec.p);
            read_if(r, "seed", spec.seed);
            read_if(r, "no_sink", spec.no_sink);
            c.random_graph = spec;
        }
        if (j.contains("graph_file")) c.graph_file = j.at("graph_file").get<std::string>();

        if (j.contains("graph")) {
            const auto& g = j.at("graph");
            if (g.is_string()) {
                auto path = std::filesystem::path(g.get<std::string>());
                if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
                c.graph = load_graph(path);
                c.graph_file = g.get<std::string>();
            } else {
                c.graph = graph_from_json(g);
            }
        } else if (c.random_graph) {
            const auto& r = *c.random_graph;
            c.graph = random_constrained_graph(r.n, r.p, r.seed, r.no_sink);
        }

        if (j.contains("delta")) {
            c.delta = j.at("delta").get<double>();
            auto [ap, wp] = theorem_params(*c.delta);
            c.activation_params = ap;
            c.weights = wp;
            c.activation = ActivationKind::PiecewiseAffine;
        }
        if (j.contains("activation")) c.activation = activation_from_string(j.at("activation").get<std::string>());
        read_if(j, "epsilon", c.activation_params.epsilon);
        read_if(j, "theta", c.activation_params.theta);
        read_if(j, "w_s", c.weights.w_s);
        read_if(j, "w_m", c.weights.w_m);
        read_if(j, "w_t", c.weights.w_t);
        read_if(j, "w_p", c.weights.w_p);
        if (j.contains("w_p_overrides")) {
            c.weights.w_p_overrides.clear();
            for (const auto& o : j.at("w_p_overrides")) {
                if (!o.is_array() || o.size() != 3)
                    throw Error(ErrorKind::ParseError, "w_p_overrides entries are [i, j, value]");
                const auto a = o[0].get<long long>(), b = o[1].get<long long>();
                if (a < 1 || b < 1) throw Error(ErrorKind::ParseError, "w_p_overrides uses 1-based vertices");
                c.weights.w_p_overrides[Edge{static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1)}] =
                    o[2].get<double>();
            }
        }
        read_if(j, "dt", c.dt);
        read_if(j, "T", c.T);
        read_if(j, "sigma", c.sigma);
        read_if(j, "seed", c.seed);
        read_if(j, "stride", c.stride);
        if (j.contains("start")) {
            const auto s = j.at("start").get<long long>();
            if (s < 1) throw Error(ErrorKind::ParseError, "start is a 1-based vertex");
            c.start_vertex = static_cast<Vertex>(s - 1);
        }
        read_if(j, "jcoords", c.jcoords);
        if (j.contains("options")) c.options = j.at("options");
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (c.dt <= 0 || c.T < 0 || c.sigma < 0 || c.stride == 0)
        throw Error(ErrorKind::DomainError, "need dt > 0, T >= 0, sigma >= 0, stride >= 1");
    if (c.graph.size() > 0 && c.start_vertex >= c.graph.size())
        throw Error(ErrorKind::DomainError, "start vertex outside the graph");
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    return config_from_json(read_json_file(path), path.parent_path());
}

}  // namespace exnet
