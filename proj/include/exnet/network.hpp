#pragma once

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "exnet/activation.hpp"
#include "exnet/graph.hpp"

namespace exnet {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// The four coupling strengths of the construction. w_p may be overridden
/// per edge: the key is the graph edge i -> j, and the value lands in
/// weight entry w_ji (the input cell j receives from its predecessor i).
struct WeightParams {
    double w_s = 1.0;
    double w_m = -0.7;
    double w_t = 0.0;
    double w_p = 0.3;
    std::map<Edge, double> w_p_overrides;

    /// w_p on edge from -> to, honouring overrides.
    double leading_weight(Vertex from, Vertex to) const;
};

/// Immutable compiled system: weights plus everything needed to interpret them.
struct CompiledNetwork {
    Matrix weights;
    DirectedGraph graph;
    WeightParams params;
    ActivationKind activation = ActivationKind::Smooth;
    ActivationParams activation_params;

    std::size_t size() const noexcept { return graph.size(); }
};

/// w_ij = w_t + (w_s - w_t) delta_ij + (w_p^{ij} - w_t) a_ji + (w_m - w_t) a_ij.
CompiledNetwork compile_weights(const DirectedGraph& g, const WeightParams& wp,
                                ActivationKind kind = ActivationKind::Smooth,
                                const ActivationParams& ap = {});

/// Parameter recipe guaranteeing a realisation with threshold delta
/// for the piecewise-affine activation; delta must lie in (0, 1/2).
std::pair<ActivationParams, WeightParams> theorem_params(double delta);

/// Level of each cell role at an encoded equilibrium.
struct RoleLevels {
    double active;
    double leading;
    double trailing;
    double disconnected;
};

RoleLevels role_levels(const WeightParams& wp);

struct EquilibriumTemplate {
    Vertex vertex;
    Vector components;
    std::vector<CellRole> roles;
};

/// Predicted equilibrium for vertex k. With per-edge overrides, a Leading
/// cell j sits at the specific w_p of edge k -> j.
EquilibriumTemplate predicted_equilibrium(const CompiledNetwork& net, Vertex k);

/// Bound used by the integrators' blow-up guard:
/// 10 * max(1, |w_s| + |w_m| + max|w_p| + |w_t|) * N.
double state_bound(const CompiledNetwork& net);

}  // namespace exnet
