#include "exnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "exnet/error.hpp"

namespace exnet {

double WeightParams::leading_weight(Vertex from, Vertex to) const {
    const auto it = w_p_overrides.find(Edge{from, to});
    return it == w_p_overrides.end() ? w_p : it->second;
}

CompiledNetwork compile_weights(const DirectedGraph& g, const WeightParams& wp, ActivationKind kind,
                                const ActivationParams& ap) {
    const auto report = validate_constraints(g, false);
    if (!report.valid())
        throw Error(ErrorKind::ConstraintViolation, "graph fails construction constraints (" +
                                                        std::string(to_string(report.violations.front().kind)) +
                                                        ")");
    for (const auto& [edge, value] : wp.w_p_overrides) {
        if (edge.from >= g.size() || edge.to >= g.size() || !g.adjacent(edge.from, edge.to))
            throw Error(ErrorKind::BadOverride, "w_p override on non-edge " + std::to_string(edge.from + 1) +
                                                    "->" + std::to_string(edge.to + 1));
    }
    if (!(ap.epsilon > 0.0)) throw Error(ErrorKind::DomainError, "epsilon must be positive");

    const std::size_t n = g.size();
    CompiledNetwork net{Matrix::Constant(n, n, wp.w_t), g, wp, kind, ap};
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = 0; j < n; ++j) {
            if (i == j)
                net.weights(i, j) = wp.w_s;
            else if (g.adjacent(j, i))
                net.weights(i, j) = wp.leading_weight(j, i);
            else if (g.adjacent(i, j))
                net.weights(i, j) = wp.w_m;
        }
    }
    return net;
}

std::pair<ActivationParams, WeightParams> theorem_params(double delta) {
    if (!(delta > 0.0 && delta < 0.5))
        throw Error(ErrorKind::DomainError, "delta must lie in (0, 1/2), got " + std::to_string(delta));
    ActivationParams ap{delta / 8.0, 0.5};
    WeightParams wp;
    wp.w_s = 1.0;
    wp.w_t = 0.0;
    wp.w_p = ap.theta - delta / 2.0;
    wp.w_m = -(wp.w_s - ap.theta) - delta / 2.0;
    return {ap, wp};
}

RoleLevels role_levels(const WeightParams& wp) { return {wp.w_s, wp.w_p, wp.w_m, wp.w_t}; }

EquilibriumTemplate predicted_equilibrium(const CompiledNetwork& net, Vertex k) {
    EquilibriumTemplate tpl{k, Vector(net.size()), classify_vertex_roles(net.graph, k)};
    const auto& wp = net.params;
    for (Vertex j = 0; j < net.size(); ++j) {
        switch (tpl.roles[j]) {
            case CellRole::Active: tpl.components[j] = wp.w_s; break;
            case CellRole::Leading: tpl.components[j] = wp.leading_weight(k, j); break;
            case CellRole::Trailing: tpl.components[j] = wp.w_m; break;
            case CellRole::Disconnected: tpl.components[j] = wp.w_t; break;
        }
    }
    return tpl;
}

double state_bound(const CompiledNetwork& net) {
    double wp_max = std::abs(net.params.w_p);
    for (const auto& [edge, value] : net.params.w_p_overrides) wp_max = std::max(wp_max, std::abs(value));
    const double total = std::abs(net.params.w_s) + std::abs(net.params.w_m) + wp_max + std::abs(net.params.w_t);
    // Floor of 1 keeps the guard meaningful for all-zero weight matrices.
    return 10.0 * std::max(total, 1.0) * static_cast<double>(std::max<std::size_t>(net.size(), 1));
}

}  // namespace exnet
