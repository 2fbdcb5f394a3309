#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "exnet/io.hpp"
#include "exnet/network.hpp"

namespace exnet {

struct RandomGraphSpec {
    std::size_t n = 3;
    double p = 0.3;
    std::uint64_t seed = 0;
    bool no_sink = true;

    bool operator==(const RandomGraphSpec&) const = default;
};

/// Fully resolved run description. `to_json` emits every field explicitly,
/// so reading it back reproduces the same run.
struct RunConfig {
    DirectedGraph graph;
    std::optional<std::string> graph_file;        // provenance only
    std::optional<RandomGraphSpec> random_graph;  // provenance only
    std::optional<double> delta;

    ActivationKind activation = ActivationKind::Smooth;
    ActivationParams activation_params;
    WeightParams weights;

    double dt = 1e-3;
    double T = 100.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::size_t stride = 1;
    Vertex start_vertex = 0;
    bool jcoords = false;

    json options = json::object();  // command-specific extras, passed through

    CompiledNetwork compile() const;
    json to_json() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Graph comes from "graph" (inline object or path relative to base_dir) or
/// "random_graph". A "delta" key applies the theorem recipe first; explicit
/// keys then override it.
RunConfig config_from_json(const json& j, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace exnet
