#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exnet/dynamics.hpp"
#include "exnet/equilibria.hpp"

namespace exnet {

enum class ConnectionOutcome { ConvergedIntended, ConvergedOther, ReturnedToSource, NoConvergence };

std::string_view to_string(ConnectionOutcome o);

struct ConnectionResult {
    Vertex from = 0;
    Vertex to_intended = 0;
    ConnectionOutcome outcome = ConnectionOutcome::NoConvergence;
    /// Equilibrium index reached. Empty for NoConvergence, and for
    /// ConvergedOther when the rest point is not one of the supplied ones.
    std::optional<Vertex> reached;
    /// First entry into the conv_tol ball of the final rest point.
    double transit_time = 0.0;
    /// Distance to the reached equilibrium (or to the nearest one).
    double final_distance = 0.0;
    /// Only filled when ConnectionOptions::record_stride > 0.
    Trajectory path;
};

struct ConnectionOptions {
    double t_max = 500.0;
    double conv_tol = 1e-6;
    /// Time the state must stay converged before a verdict is issued.
    double dwell = 5.0;
    double dt = 1e-3;
    std::size_t record_stride = 0;
};

/// xi_k + delta e_l.
Vector perturbation_point(const Equilibrium& xi_k, Vertex l, double delta);

/// Integrates the input-free system from start until it rests at some
/// equilibrium for the dwell window, then labels the outcome relative to
/// (source, target).
ConnectionResult follow_to_rest(const CompiledNetwork& net, const std::vector<Equilibrium>& equilibria,
                                const Vector& start, Vertex source, Vertex target,
                                const ConnectionOptions& opts = {});

/// Connection test from the perturbed point xi_k + delta e_l.
ConnectionResult test_excitable_connection(const CompiledNetwork& net, const std::vector<Equilibrium>& equilibria,
                                           Vertex k, Vertex l, double delta, const ConnectionOptions& opts = {});

struct PairVerdict {
    bool is_edge = false;
    bool ok = false;
    /// Edge: the zeta test. Non-edge: the most informative probe
    /// (first that reached the target, else first that did not return, else the slowest return).
    ConnectionResult result;
    std::size_t probes = 0;
    std::size_t probes_returned = 0;
    std::size_t probes_reached_target = 0;
};

struct RealizationReport {
    std::size_t n = 0;
    std::vector<PairVerdict> pairs;  // row-major n*n, diagonal unused
    std::vector<Equilibrium> equilibria;
    bool verdict = false;
    std::vector<std::string> failures;

    const PairVerdict& at(Vertex k, Vertex l) const { return pairs[k * n + l]; }
};

struct RealizationOptions {
    ConnectionOptions connection;
    std::size_t probe_angles = 8;
    std::size_t probe_radii = 5;
};

/**
 * Checks that the compiled network realises its graph at amplitude delta.
 *
 * Every edge k->l must carry xi_k + delta e_l to xi_l. For every non-edge
 * pair a polar grid of probes xi_k + a e_k + b e_l with a^2 + b^2 <= delta^2
 * is integrated and none may reach xi_l. Off-plane perturbations are not
 * probed here; use basin_sample for those.
 */
RealizationReport realize_graph_check(const CompiledNetwork& net, double delta, const RealizationOptions& opts = {});

/// Bisection on delta for the smallest perturbation xi_k + delta e_l that
/// reaches xi_l. Returns the bracket midpoint once its width is below tol.
double estimate_threshold(const CompiledNetwork& net, const std::vector<Equilibrium>& equilibria, Vertex k, Vertex l,
                          double delta_lo, double delta_hi, double tol, const ConnectionOptions& opts = {});

struct BasinTally {
    std::vector<std::size_t> to_equilibrium;
    std::size_t unlisted = 0;
    std::size_t no_convergence = 0;
    std::size_t total = 0;

    double fraction(Vertex m) const { return total ? double(to_equilibrium[m]) / double(total) : 0.0; }
    double unlisted_fraction() const { return total ? double(unlisted) / double(total) : 0.0; }
    double no_convergence_fraction() const { return total ? double(no_convergence) / double(total) : 0.0; }
};

/// Uniform samples in the open ball B_delta(xi_k), each followed to rest.
BasinTally basin_sample(const CompiledNetwork& net, const std::vector<Equilibrium>& equilibria, Vertex k,
                        double delta, std::size_t n_samples, std::uint64_t seed, const ConnectionOptions& opts = {});

}  // namespace exnet
