#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exnet/dynamics.hpp"

namespace exnet {

/// Sorted set of active cells.
using ActiveSet = std::vector<Vertex>;

std::string format_active_set(const ActiveSet& s);  // "{1,4}" with 1-based labels

struct SymbolEvent {
    double enter_time = 0.0;
    ActiveSet active;
    double duration = 0.0;
};

struct SymbolSequence {
    std::vector<SymbolEvent> events;
};

struct SymbolOptions {
    /// A cell turns active when phi(y) rises above on_threshold and
    /// inactive when it falls below off_threshold.
    double on_threshold = 0.8;
    double off_threshold = 0.2;
    /// Interior segments shorter than this are merged into their predecessor.
    /// A handoff k -> l keeps both cells above on_threshold for roughly 0.8
    /// time units at default weights, so the default sits above that.
    double debounce = 1.5;
};

SymbolSequence extract_symbols(const Trajectory& traj, ActivationKind kind, const ActivationParams& p,
                               const SymbolOptions& opts = {});

struct ResidenceSummary {
    std::size_t visits = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double variance = 0.0;
};

struct TransitionStats {
    std::map<std::pair<ActiveSet, ActiveSet>, std::size_t> counts;
    std::map<ActiveSet, ResidenceSummary> residence;
    std::size_t total = 0;
};

TransitionStats transition_stats(const SymbolSequence& seq);

/// Four-vertex network 1->2, 2->3, 2->4, 3->1, 4->1 (0-based internally).
DirectedGraph kirk_silber_graph();

/// Kirk-Silber network with w_p on edge 2->3 raised by delta_w.
CompiledNetwork kirk_silber_network(double w_p, double delta_w, double w_t, const ActivationParams& ap = {},
                                    double w_s = 1.0, double w_m = -0.5);

/// Ten-vertex graph for the larger-network experiment: no 1-loops, 2-loops,
/// Delta-cliques or sinks, containing the cycle 1 -> 4 -> 7 -> 3 -> 8 -> 1
/// with branches at vertices 1, 3, 6 and 8.
DirectedGraph ten_node_graph();

/// Independent U(lo, hi) leading weight for every edge, drawn in edge order.
std::map<Edge, double> random_leading_weights(const DirectedGraph& g, double lo, double hi, std::uint64_t seed);

enum class KsRoute { RouteP3, RouteP4, RouteP34, Other };

std::string_view to_string(KsRoute r);

/// Route of a post-transient Kirk-Silber trajectory by the maxima of y_3 and
/// y_4: a cell counts as visited when its maximum exceeds theta + margin.
KsRoute classify_ks_route(const Trajectory& traj, double theta, double margin = 0.25);

struct KsExitCounts {
    std::size_t p3 = 0;
    std::size_t p4 = 0;
    std::size_t p34 = 0;

    std::size_t total() const noexcept { return p3 + p4 + p34; }
};

/**
 * Classifies every departure from the bottleneck {2}. The window after
 * leaving {2} runs until cell 1 turns on or {2} is re-entered; it counts
 * as P_{3,4} if cells 3 and 4 are ever active together, otherwise as P_3
 * or P_4 by whichever cell turned on. Use a sequence extracted with
 * debounce 0 so brief simultaneous activity is not merged away.
 */
KsExitCounts count_ks_exits(const SymbolSequence& seq);

struct KsSweepSpec {
    double w_t_min = -0.2, w_t_max = 0.2;
    std::size_t w_t_steps = 5;
    double w_p_min = 0.295, w_p_max = 0.315;
    std::size_t w_p_steps = 5;
    double delta_w = 0.002;
    double sigma = 0.05;
    std::size_t reps = 1;
    double t_end = 500.0;
    std::uint64_t base_seed = 0;
    double dt = 1e-3;
    ActivationParams activation{0.05, 0.5};
    double w_s = 1.0;
    double w_m = -0.5;
};

struct SweepCell {
    double w_t = 0.0;
    double w_p = 0.0;
    /// Empty when no exit from P_2 was observed.
    std::optional<double> ratio;
    std::size_t n_p3 = 0, n_p4 = 0, n_p34 = 0;
    std::uint64_t seed = 0;
};

struct SweepGrid {
    KsSweepSpec spec;
    std::vector<double> w_t_values;
    std::vector<double> w_p_values;
    std::vector<SweepCell> cells;  // w_p-major: cells[ip * w_t_steps + it]

    const SweepCell& at(std::size_t ip, std::size_t it) const { return cells[ip * w_t_values.size() + it]; }
};

/// Seed for (base, cell, rep); a pure function so cells can run in any order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t rep);

SweepGrid ks_sweep(const KsSweepSpec& spec);

/// Minimal repeating block of the sequence tail, required to repeat
/// `repeats` times with matching active sets and residence times within
/// rel_tol. Rotated to start at its smallest vertex. Throws NotPeriodic.
std::vector<ActiveSet> periodic_cycle(const SymbolSequence& seq, std::size_t repeats = 3, double rel_tol = 0.05);

struct BranchChoice {
    Vertex vertex = 0;
    Vertex chosen = 0;
    Vertex strongest = 0;
    double chosen_weight = 0.0;
    double strongest_weight = 0.0;
    bool prefers_strongest = false;
};

/// For each cycle vertex with out-degree >= 2, whether the orbit's successor
/// is the out-neighbour with the largest leading weight.
std::vector<BranchChoice> branch_preference_check(const CompiledNetwork& net, const SymbolSequence& seq);

}  // namespace exnet
